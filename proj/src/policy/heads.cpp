#include "mec/policy/heads.hpp"

#include <algorithm>
#include <cmath>

namespace mec::policy {

std::vector<double> softmax(std::span<const double> z) {
    std::vector<double> p(z.begin(), z.end());
    if (p.empty()) return p;
    const double top = *std::max_element(p.begin(), p.end());
    double total = 0.0;
    for (auto& v : p) {
        v = std::exp(v - top);
        total += v;
    }
    for (auto& v : p) v /= total;
    return p;
}

std::vector<double> softmax_backward(std::span<const double> probs, std::span<const double> grad) {
    double dot = 0.0;
    for (std::size_t j = 0; j < probs.size(); ++j) dot += probs[j] * grad[j];
    std::vector<double> g(probs.size());
    for (std::size_t j = 0; j < probs.size(); ++j) g[j] = probs[j] * (grad[j] - dot);
    return g;
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

std::vector<double> project_to_simplex(std::span<const double> raw) {
    std::vector<double> p(raw.size());
    double total = 0.0;
    for (std::size_t j = 0; j < raw.size(); ++j) {
        p[j] = std::clamp(raw[j], 0.0, 1.0);
        total += p[j];
    }
    if (total <= 0.0) {
        std::fill(p.begin(), p.end(), 1.0 / static_cast<double>(p.size()));
        return p;
    }
    for (auto& v : p) v /= total;
    return p;
}

std::vector<double> project_to_simplex_backward(std::span<const double> raw, std::span<const double> grad) {
    const std::size_t k = raw.size();
    std::vector<double> clamped(k), g(k, 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        clamped[j] = std::clamp(raw[j], 0.0, 1.0);
        total += clamped[j];
    }
    if (total <= 0.0) return g;
    double dot = 0.0;
    for (std::size_t j = 0; j < k; ++j) dot += grad[j] * clamped[j];
    for (std::size_t j = 0; j < k; ++j) {
        if (raw[j] <= 0.0 || raw[j] >= 1.0) continue;
        g[j] = (grad[j] - dot / total) / total;
    }
    return g;
}

}  // namespace mec::policy
