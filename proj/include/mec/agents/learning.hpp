#pragma once

// Batched actor-critic building blocks. Samples are matrix columns; an action
// column holds K partition entries followed by K frequency fractions.

#include <span>

#include "mec/agents/replay_buffer.hpp"
#include "mec/nn/adam.hpp"
#include "mec/nn/dense_net.hpp"
#include "mec/rng.hpp"

namespace mec::agents {

using nn::Matrix;
using nn::Vector;

enum class PartitionHead {
    dirichlet,  // exp map + Dirichlet mean (sampled while exploring)
    softmax,
    raw,        // unconstrained output, clamped and renormalized
};

struct HeadSpec {
    PartitionHead partition = PartitionHead::dirichlet;
    int n_servers = 1;
    double dirichlet_eps = 1e-6;
};

struct ActionTrace {
    nn::ForwardCache cache;
    Matrix logits;
    Matrix action;
};

// Deterministic (noise-free) policy output for every column of `obs`.
Matrix policy_action(const nn::DenseNet& actor, const HeadSpec& head, const Matrix& obs,
                     ActionTrace* trace = nullptr);
// Maps dJ/daction back to dJ/dlogits through the heads.
Matrix policy_action_backward(const ActionTrace& trace, const HeadSpec& head, const Matrix& grad_action);

Matrix critic_input(const Matrix& obs, const Matrix& action);
Vector q_values(const nn::DenseNet& critic, const Matrix& obs, const Matrix& action);

struct TargetSmoothing {
    double sigma = 0.2;
    double clip = 0.5;
    Rng* rng = nullptr;
};

// y = r + gamma (1 - done) min_i Q'_i(s', mu'(s')). Smoothing noise, when
// given, perturbs only the frequency rows of mu'(s').
Vector td_target(std::span<const nn::DenseNet* const> critic_targets, const nn::DenseNet& actor_target,
                 const HeadSpec& head, const Batch& batch, double gamma,
                 const TargetSmoothing* smoothing = nullptr);

// One optimizer step on mean squared TD error; returns the pre-step loss.
double critic_update(nn::DenseNet& critic, nn::AdamState& opt, const Vector& target_y, const Batch& batch);

// One optimizer step ascending mean Q(s, mu(s)); returns the pre-step objective.
// The critic is only read.
double actor_update(nn::DenseNet& actor, nn::AdamState& opt, const nn::DenseNet& critic, const HeadSpec& head,
                    const Matrix& obs);

void soft_update(nn::DenseNet& target, const nn::DenseNet& local, double tau);

}  // namespace mec::agents
