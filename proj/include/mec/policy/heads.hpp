#pragma once

#include <span>
#include <vector>

namespace mec::policy {

// Max-subtracted softmax.
std::vector<double> softmax(std::span<const double> z);
std::vector<double> softmax_backward(std::span<const double> probs, std::span<const double> grad);

double sigmoid(double x);

// Clamp to [0,1] then renormalize; falls back to the uniform vector when
// everything clamps to zero.
std::vector<double> project_to_simplex(std::span<const double> raw);
std::vector<double> project_to_simplex_backward(std::span<const double> raw, std::span<const double> grad);

}  // namespace mec::policy
