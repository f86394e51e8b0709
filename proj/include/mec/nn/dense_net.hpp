#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace mec::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Activation { relu, sigmoid, linear };

const char* to_string(Activation a);
Activation activation_from_string(const std::string& name);

struct DenseLayer {
    Matrix weight;  // out x in
    Vector bias;    // out
    Activation activation = Activation::linear;
};

// Per-layer inputs and post-activations of one batched forward pass.
// Samples are stored column-wise.
struct ForwardCache {
    std::vector<Matrix> inputs;
    std::vector<Matrix> outputs;
    std::uint64_t version = 0;
};

struct Gradients {
    std::vector<Matrix> weight;
    std::vector<Vector> bias;
    Matrix input;
};

class DenseNet {
public:
    DenseNet() = default;
    explicit DenseNet(std::vector<DenseLayer> layers);

    Eigen::Index in_dim() const { return layers_.front().weight.cols(); }
    Eigen::Index out_dim() const { return layers_.back().weight.rows(); }
    std::vector<int> layer_sizes() const;
    std::size_t parameter_count() const;
    bool empty() const { return layers_.empty(); }

    // Pure single-sample forward.
    Vector forward(const Vector& x) const;
    // Batched forward; columns are samples. When `cache` is given it is filled
    // for a later backward call.
    Matrix forward(const Matrix& x, ForwardCache* cache) const;

    // Reverse-mode gradients of sum(output .* output_grad) with respect to every
    // parameter and the input. Throws lifecycle error if the parameters changed
    // since the cache was produced.
    Gradients backward(const ForwardCache& cache, const Matrix& output_grad) const;

    const std::vector<DenseLayer>& layers() const { return layers_; }
    // Mutable access invalidates outstanding caches.
    std::vector<DenseLayer>& mutable_layers();
    std::uint64_t version() const { return version_; }

    // this <- tau * local + (1 - tau) * this
    void soft_update(const DenseNet& local, double tau);
    bool all_finite() const;

    void save(std::ostream& os) const;
    static DenseNet load(std::istream& is);

private:
    void touch();

    std::vector<DenseLayer> layers_;
    std::uint64_t version_ = 0;
};

Gradients zeros_like(const DenseNet& net);

// Glorot-uniform weights, zero biases. Hidden layers use `hidden`, the last
// layer uses `output`.
DenseNet init_xavier(std::span<const int> layer_sizes, std::uint64_t seed,
                     Activation hidden = Activation::relu, Activation output = Activation::linear);

}  // namespace mec::nn
