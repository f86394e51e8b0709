#pragma once

#include <iosfwd>

#include "mec/nn/dense_net.hpp"

namespace mec::nn {

struct AdamState {
    Gradients first_moment;
    Gradients second_moment;
    long step_count = 0;
    double lr = 5e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    static AdamState for_net(const DenseNet& net, double lr = 5e-4);

    void save(std::ostream& os) const;
    static AdamState load(std::istream& is);
};

// One bias-corrected Adam descent step. Throws training divergence if any
// gradient entry is non-finite (the parameters are left untouched).
void adam_step(DenseNet& net, const Gradients& grads, AdamState& state);

}  // namespace mec::nn
