#include "mec/nn/adam.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include "mec/error.hpp"
#include "mec/nn/serialize.hpp"

namespace mec::nn {

AdamState AdamState::for_net(const DenseNet& net, double lr) {
    AdamState s;
    s.first_moment = zeros_like(net);
    s.second_moment = zeros_like(net);
    s.lr = lr;
    return s;
}

namespace {

template <typename Param, typename Grad>
void update(Param& p, const Grad& g, Grad& m, Grad& v, const AdamState& s, double c1, double c2) {
    m = s.beta1 * m + (1.0 - s.beta1) * g;
    v = s.beta2 * v + (1.0 - s.beta2) * g.cwiseProduct(g);
    p.array() -= s.lr * (m.array() / c1) / ((v.array() / c2).sqrt() + s.eps);
}

}  // namespace

void adam_step(DenseNet& net, const Gradients& grads, AdamState& state) {
    const auto& layers = net.layers();
    if (grads.weight.size() != layers.size() || grads.bias.size() != layers.size() ||
        state.first_moment.weight.size() != layers.size())
        throw Error(ErrorCode::shape, "gradient/optimizer layout does not match network");
    for (std::size_t l = 0; l < layers.size(); ++l) {
        if (grads.weight[l].rows() != layers[l].weight.rows() || grads.weight[l].cols() != layers[l].weight.cols() ||
            grads.bias[l].size() != layers[l].bias.size())
            throw Error(ErrorCode::shape, "gradient shape mismatch at layer " + std::to_string(l));
        if (!grads.weight[l].allFinite() || !grads.bias[l].allFinite())
            throw Error(ErrorCode::training_divergence, "non-finite gradient at layer " + std::to_string(l));
    }

    ++state.step_count;
    const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step_count));
    const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step_count));
    auto& mut = net.mutable_layers();
    for (std::size_t l = 0; l < mut.size(); ++l) {
        update(mut[l].weight, grads.weight[l], state.first_moment.weight[l], state.second_moment.weight[l], state, c1,
               c2);
        update(mut[l].bias, grads.bias[l], state.first_moment.bias[l], state.second_moment.bias[l], state, c1, c2);
    }
}

void AdamState::save(std::ostream& os) const {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%ld %.17g %.17g %.17g %.17g", step_count, lr, beta1, beta2, eps);
    os << "mec-adam 1\n" << first_moment.weight.size() << ' ' << buf << '\n';
    for (std::size_t l = 0; l < first_moment.weight.size(); ++l) {
        os << first_moment.weight[l].rows() << ' ' << first_moment.weight[l].cols() << '\n';
        write_matrix(os, first_moment.weight[l]);
        write_matrix(os, first_moment.bias[l]);
        write_matrix(os, second_moment.weight[l]);
        write_matrix(os, second_moment.bias[l]);
    }
}

AdamState AdamState::load(std::istream& is) {
    expect_header(is, "mec-adam", 1);
    AdamState s;
    std::size_t n = 0;
    if (!(is >> n >> s.step_count >> s.lr >> s.beta1 >> s.beta2 >> s.eps))
        throw Error(ErrorCode::io, "bad optimizer header in checkpoint");
    for (std::size_t l = 0; l < n; ++l) {
        Eigen::Index rows = 0, cols = 0;
        if (!(is >> rows >> cols)) throw Error(ErrorCode::io, "bad optimizer layer header");
        s.first_moment.weight.push_back(read_matrix(is, rows, cols));
        s.first_moment.bias.push_back(read_matrix(is, rows, 1));
        s.second_moment.weight.push_back(read_matrix(is, rows, cols));
        s.second_moment.bias.push_back(read_matrix(is, rows, 1));
    }
    return s;
}

}  // namespace mec::nn
