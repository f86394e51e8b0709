#include "mec/policy/dirichlet.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include "mec/error.hpp"

namespace mec::policy {

DirichletParams concentration_from_logits(std::span<const double> z, double eps) {
    if (!(eps > 0.0)) throw Error(ErrorCode::invalid_argument, "concentration eps must be positive");
    DirichletParams p;
    p.concentration.reserve(z.size());
    for (double v : z) {
        if (std::isnan(v)) throw Error(ErrorCode::invalid_argument, "NaN logit");
        if (v > kMaxLogit) {
            v = kMaxLogit;
            p.saturated = true;
        }
        p.concentration.push_back(std::exp(v) + eps);
    }
    return p;
}

std::vector<double> dirichlet_mean(const DirichletParams& p) {
    const double total = std::accumulate(p.concentration.begin(), p.concentration.end(), 0.0);
    std::vector<double> m(p.concentration.size());
    for (std::size_t j = 0; j < m.size(); ++j) m[j] = p.concentration[j] / total;
    return m;
}

double log_gamma_variate(double shape, Rng& rng) {
    if (!(shape > 0.0)) throw Error(ErrorCode::invalid_argument, "gamma shape must be positive");
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    if (shape < 1.0) {
        double u = unif(rng);
        while (u <= 0.0) u = unif(rng);
        return log_gamma_variate(shape + 1.0, rng) + std::log(u) / shape;
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = unif(rng);
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return std::log(d * v);
        if (u > 0.0 && std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return std::log(d * v);
    }
}

double gamma_variate(double shape, Rng& rng) { return std::exp(log_gamma_variate(shape, rng)); }

std::vector<double> dirichlet_sample(const DirichletParams& p, Rng& rng) {
    const std::size_t k = p.concentration.size();
    std::vector<double> logs(k);
    for (std::size_t j = 0; j < k; ++j) logs[j] = log_gamma_variate(p.concentration[j], rng);
    const double top = *std::max_element(logs.begin(), logs.end());
    double total = 0.0;
    for (auto& v : logs) {
        v = std::exp(v - top);
        total += v;
    }
    for (auto& v : logs) v /= total;
    return logs;
}

double log_gamma(double x) {
    static constexpr std::array<double, 9> kLanczos = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    if (!(x > 0.0)) throw Error(ErrorCode::domain, "log_gamma needs a positive argument");
    if (x < 0.5) {
        // reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x)
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
    }
    const double xm = x - 1.0;
    double series = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) series += kLanczos[i] / (xm + static_cast<double>(i));
    const double t = xm + 7.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (xm + 0.5) * std::log(t) - t + std::log(series);
}

double log_beta(std::span<const double> concentration) {
    double sum = 0.0, lg = 0.0;
    for (double a : concentration) {
        sum += a;
        lg += log_gamma(a);
    }
    return lg - log_gamma(sum);
}

double dirichlet_logpdf(const DirichletParams& p, std::span<const double> x) {
    if (x.size() != p.concentration.size()) throw Error(ErrorCode::shape, "point and parameters differ in length");
    double sum = 0.0, acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!(x[j] > 0.0)) throw Error(ErrorCode::domain, "point is not in the open simplex");
        sum += x[j];
        acc += (p.concentration[j] - 1.0) * std::log(x[j]);
    }
    if (std::abs(sum - 1.0) > 1e-9) throw Error(ErrorCode::domain, "point does not sum to one");
    return acc - log_beta(p.concentration);
}

std::vector<double> mean_from_logits_backward(std::span<const double> z, double eps,
                                              std::span<const double> grad_mean) {
    const std::size_t k = z.size();
    std::vector<double> e(k), psi(k);
    double total = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        // d/dz of the clamped exponential is zero past the clamp
        e[j] = z[j] > kMaxLogit ? 0.0 : std::exp(z[j]);
        psi[j] = std::exp(std::min(z[j], kMaxLogit)) + eps;
        total += psi[j];
    }
    double dot = 0.0;
    for (std::size_t j = 0; j < k; ++j) dot += grad_mean[j] * psi[j] / total;
    std::vector<double> g(k);
    for (std::size_t j = 0; j < k; ++j) g[j] = e[j] * (grad_mean[j] - dot) / total;
    return g;
}

}  // namespace mec::policy
