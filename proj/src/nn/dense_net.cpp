#include "mec/nn/dense_net.hpp"

#include <atomic>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>

#include "mec/error.hpp"
#include "mec/nn/serialize.hpp"

namespace mec::nn {

namespace {

std::atomic<std::uint64_t> g_version{0};

std::uint64_t next_version() { return ++g_version; }

void activate(Matrix& z, Activation a) {
    switch (a) {
        case Activation::relu: z = z.cwiseMax(0.0); break;
        case Activation::sigmoid: z = (1.0 + (-z.array()).exp()).inverse().matrix(); break;
        case Activation::linear: break;
    }
}

// dL/dz from dL/dy, given y = act(z).
void activation_backward(Matrix& grad, const Matrix& y, Activation a) {
    switch (a) {
        case Activation::relu: grad = (y.array() > 0.0).select(grad, 0.0); break;
        case Activation::sigmoid: grad = (grad.array() * y.array() * (1.0 - y.array())).matrix(); break;
        case Activation::linear: break;
    }
}

}  // namespace

const char* to_string(Activation a) {
    switch (a) {
        case Activation::relu: return "relu";
        case Activation::sigmoid: return "sigmoid";
        case Activation::linear: return "linear";
    }
    return "linear";
}

Activation activation_from_string(const std::string& name) {
    if (name == "relu") return Activation::relu;
    if (name == "sigmoid") return Activation::sigmoid;
    if (name == "linear") return Activation::linear;
    throw Error(ErrorCode::invalid_argument, "unknown activation '" + name + "'");
}

DenseNet::DenseNet(std::vector<DenseLayer> layers) : layers_(std::move(layers)) {
    if (layers_.empty()) throw Error(ErrorCode::shape, "network needs at least one layer");
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        if (layers_[l].bias.size() != layers_[l].weight.rows())
            throw Error(ErrorCode::shape, "bias length differs from layer output size");
        if (l > 0 && layers_[l].weight.cols() != layers_[l - 1].weight.rows())
            throw Error(ErrorCode::shape, "adjacent layer dimensions do not compose");
    }
    touch();
}

void DenseNet::touch() { version_ = next_version(); }

std::vector<DenseLayer>& DenseNet::mutable_layers() {
    touch();
    return layers_;
}

std::vector<int> DenseNet::layer_sizes() const {
    std::vector<int> sizes;
    if (layers_.empty()) return sizes;
    sizes.push_back(static_cast<int>(in_dim()));
    for (const auto& l : layers_) sizes.push_back(static_cast<int>(l.weight.rows()));
    return sizes;
}

std::size_t DenseNet::parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers_) n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
    return n;
}

Vector DenseNet::forward(const Vector& x) const {
    Matrix out = forward(Matrix(x), nullptr);
    return out.col(0);
}

Matrix DenseNet::forward(const Matrix& x, ForwardCache* cache) const {
    if (x.rows() != in_dim())
        throw Error(ErrorCode::shape, "input has " + std::to_string(x.rows()) + " rows, network expects " +
                                          std::to_string(in_dim()));
    if (cache) {
        cache->inputs.clear();
        cache->outputs.clear();
        cache->version = version_;
    }
    Matrix h = x;
    for (const auto& layer : layers_) {
        Matrix z = layer.weight * h;
        z.colwise() += layer.bias;
        activate(z, layer.activation);
        if (cache) {
            cache->inputs.push_back(std::move(h));
            cache->outputs.push_back(z);
        }
        h = std::move(z);
    }
    return h;
}

Gradients DenseNet::backward(const ForwardCache& cache, const Matrix& output_grad) const {
    if (cache.version != version_ || cache.inputs.size() != layers_.size())
        throw Error(ErrorCode::lifecycle, "forward cache is stale");
    const auto& last = cache.outputs.back();
    if (output_grad.rows() != last.rows() || output_grad.cols() != last.cols())
        throw Error(ErrorCode::shape, "output gradient shape mismatch");

    Gradients g;
    g.weight.resize(layers_.size());
    g.bias.resize(layers_.size());
    Matrix delta = output_grad;
    for (std::size_t l = layers_.size(); l-- > 0;) {
        activation_backward(delta, cache.outputs[l], layers_[l].activation);
        g.weight[l].noalias() = delta * cache.inputs[l].transpose();
        g.bias[l] = delta.rowwise().sum();
        Matrix prev = layers_[l].weight.transpose() * delta;
        delta = std::move(prev);
    }
    g.input = std::move(delta);
    return g;
}

void DenseNet::soft_update(const DenseNet& local, double tau) {
    if (!(tau > 0.0 && tau <= 1.0)) throw Error(ErrorCode::invalid_argument, "tau must lie in (0,1]");
    if (local.layer_sizes() != layer_sizes()) throw Error(ErrorCode::shape, "soft update between different shapes");
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        if (tau == 1.0) {
            layers_[l].weight = local.layers_[l].weight;
            layers_[l].bias = local.layers_[l].bias;
        } else {
            layers_[l].weight = tau * local.layers_[l].weight + (1.0 - tau) * layers_[l].weight;
            layers_[l].bias = tau * local.layers_[l].bias + (1.0 - tau) * layers_[l].bias;
        }
    }
    touch();
}

bool DenseNet::all_finite() const {
    for (const auto& l : layers_)
        if (!l.weight.allFinite() || !l.bias.allFinite()) return false;
    return true;
}

void DenseNet::save(std::ostream& os) const {
    os << "mec-densenet 1\n" << layers_.size() << '\n';
    for (const auto& l : layers_) {
        os << l.weight.cols() << ' ' << l.weight.rows() << ' ' << to_string(l.activation) << '\n';
        write_matrix(os, l.weight);
        write_matrix(os, l.bias);
    }
}

DenseNet DenseNet::load(std::istream& is) {
    expect_header(is, "mec-densenet", 1);
    std::size_t n = 0;
    if (!(is >> n) || n == 0) throw Error(ErrorCode::io, "bad layer count in checkpoint");
    std::vector<DenseLayer> layers(n);
    for (auto& l : layers) {
        Eigen::Index in = 0, out = 0;
        std::string act;
        if (!(is >> in >> out >> act)) throw Error(ErrorCode::io, "bad layer header in checkpoint");
        l.activation = activation_from_string(act);
        l.weight = read_matrix(is, out, in);
        l.bias = read_matrix(is, out, 1);
    }
    return DenseNet(std::move(layers));
}

Gradients zeros_like(const DenseNet& net) {
    Gradients g;
    for (const auto& l : net.layers()) {
        g.weight.push_back(Matrix::Zero(l.weight.rows(), l.weight.cols()));
        g.bias.push_back(Vector::Zero(l.bias.size()));
    }
    return g;
}

DenseNet init_xavier(std::span<const int> layer_sizes, std::uint64_t seed, Activation hidden,
                     Activation output) {
    if (layer_sizes.size() < 2) throw Error(ErrorCode::shape, "need at least input and output sizes");
    std::mt19937_64 rng(seed);
    std::vector<DenseLayer> layers;
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        const int fan_in = layer_sizes[l];
        const int fan_out = layer_sizes[l + 1];
        if (fan_in <= 0 || fan_out <= 0) throw Error(ErrorCode::shape, "layer sizes must be positive");
        const double bound = std::sqrt(6.0 / (fan_in + fan_out));
        std::uniform_real_distribution<double> dist(-bound, bound);
        DenseLayer layer;
        layer.weight.resize(fan_out, fan_in);
        // fill row-major so the draw order matches the checkpoint layout
        for (int r = 0; r < fan_out; ++r)
            for (int c = 0; c < fan_in; ++c) layer.weight(r, c) = dist(rng);
        layer.bias = Vector::Zero(fan_out);
        layer.activation = l + 2 == layer_sizes.size() ? output : hidden;
        layers.push_back(std::move(layer));
    }
    return DenseNet(std::move(layers));
}

}  // namespace mec::nn
