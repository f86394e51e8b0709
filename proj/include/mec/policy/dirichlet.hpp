#pragma once

#include <span>
#include <vector>

#include "mec/rng.hpp"

namespace mec::policy {

inline constexpr double kDefaultConcentrationEps = 1e-6;
// Logits above this are clamped before exponentiation.
inline constexpr double kMaxLogit = 700.0;

struct DirichletParams {
    std::vector<double> concentration;
    // true when at least one logit was clamped at kMaxLogit
    bool saturated = false;
};

// psi_j = exp(z_j) + eps
DirichletParams concentration_from_logits(std::span<const double> z, double eps = kDefaultConcentrationEps);

std::vector<double> dirichlet_mean(const DirichletParams& p);

// K independent Gamma(psi_j, 1) draws normalized by their sum. Works in log
// space so tiny concentrations do not underflow to an all-zero vector.
std::vector<double> dirichlet_sample(const DirichletParams& p, Rng& rng);

// log of a Gamma(shape, 1) variate: Marsaglia-Tsang squeeze for shape >= 1,
// shape < 1 boosted through Gamma(shape + 1) * U^(1/shape).
double log_gamma_variate(double shape, Rng& rng);
double gamma_variate(double shape, Rng& rng);

// ln Gamma(x) for x > 0 via the Lanczos series (g = 7, 9 terms).
double log_gamma(double x);
// ln B(psi) = sum ln Gamma(psi_j) - ln Gamma(sum psi_j)
double log_beta(std::span<const double> concentration);

// Density on the open simplex; throws domain error when x is off the simplex
// by more than 1e-9 or has a non-positive entry.
double dirichlet_logpdf(const DirichletParams& p, std::span<const double> x);

// Vector-Jacobian product of z -> dirichlet_mean(concentration_from_logits(z)).
std::vector<double> mean_from_logits_backward(std::span<const double> z, double eps,
                                              std::span<const double> grad_mean);

}  // namespace mec::policy
