#include "mec/policy/noise.hpp"

#include <algorithm>
#include <cmath>

#include "mec/error.hpp"

namespace mec::policy {

OUProcess::OUProcess(std::size_t dim, double theta, double sigma, double mu, double dt)
    : value_(dim, mu), theta_(theta), sigma_(sigma), mu_(mu), dt_(dt) {
    if (theta < 0 || sigma < 0 || !(dt > 0)) throw Error(ErrorCode::invalid_argument, "bad OU parameters");
}

const std::vector<double>& OUProcess::step(Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double scale = sigma_ * std::sqrt(dt_);
    for (auto& v : value_) v += theta_ * (mu_ - v) * dt_ + scale * normal(rng);
    return value_;
}

void OUProcess::reset() { std::fill(value_.begin(), value_.end(), mu_); }

std::vector<double> clipped_noise(std::size_t n, double sigma, double clip, Rng& rng) {
    if (sigma < 0 || !(clip > 0)) throw Error(ErrorCode::invalid_argument, "bad clipped-noise parameters");
    std::vector<double> out(n, 0.0);
    if (sigma == 0.0) return out;
    std::normal_distribution<double> normal(0.0, sigma);
    for (auto& v : out) v = std::clamp(normal(rng), -clip, clip);
    return out;
}

}  // namespace mec::policy
