#pragma once

#include <span>
#include <vector>

#include "mec/rng.hpp"

namespace mec::policy {

// Mean-reverting exploration noise, one independent coordinate per action entry.
class OUProcess {
public:
    OUProcess() = default;
    OUProcess(std::size_t dim, double theta = 0.15, double sigma = 0.2, double mu = 0.0, double dt = 1.0);

    // value <- value + theta (mu - value) dt + sigma sqrt(dt) N(0, 1)
    const std::vector<double>& step(Rng& rng);
    void reset();

    const std::vector<double>& value() const { return value_; }
    void set_value(std::vector<double> v) { value_ = std::move(v); }
    double theta() const { return theta_; }
    double sigma() const { return sigma_; }
    double mu() const { return mu_; }
    double dt() const { return dt_; }

private:
    std::vector<double> value_;
    double theta_ = 0.15;
    double sigma_ = 0.2;
    double mu_ = 0.0;
    double dt_ = 1.0;
};

// N(0, sigma) draws clamped to [-clip, clip].
std::vector<double> clipped_noise(std::size_t n, double sigma, double clip, Rng& rng);

}  // namespace mec::policy
