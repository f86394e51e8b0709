#include "mec/nn/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

#include "mec/error.hpp"

namespace mec::nn {

void write_matrix(std::ostream& os, const Matrix& m) {
    char buf[32];
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", m(r, c));
            if (c) os << ' ';
            os << buf;
        }
        os << '\n';
    }
}

Matrix read_matrix(std::istream& is, Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    std::string token;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            if (!(is >> token)) throw Error(ErrorCode::io, "truncated matrix in checkpoint");
            char* end = nullptr;
            m(r, c) = std::strtod(token.c_str(), &end);
            if (end == token.c_str() || *end != '\0') throw Error(ErrorCode::io, "bad number '" + token + "'");
        }
    return m;
}

void expect_header(std::istream& is, const std::string& tag, int version) {
    std::string got;
    int v = 0;
    if (!(is >> got >> v) || got != tag)
        throw Error(ErrorCode::io, "expected checkpoint section '" + tag + "'");
    if (v != version) throw Error(ErrorCode::io, "unsupported " + tag + " version " + std::to_string(v));
}

}  // namespace mec::nn
