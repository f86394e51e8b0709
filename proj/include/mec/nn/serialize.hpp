#pragma once

#include <iosfwd>
#include <string>

#include "mec/nn/dense_net.hpp"

namespace mec::nn {

// Row-major text encoding with 17 significant digits (round-trips exactly).
void write_matrix(std::ostream& os, const Matrix& m);
Matrix read_matrix(std::istream& is, Eigen::Index rows, Eigen::Index cols);
void expect_header(std::istream& is, const std::string& tag, int version);

}  // namespace mec::nn
