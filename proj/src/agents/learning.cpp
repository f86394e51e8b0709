#include "mec/agents/learning.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mec/error.hpp"
#include "mec/policy/dirichlet.hpp"
#include "mec/policy/heads.hpp"
#include "mec/policy/noise.hpp"

namespace mec::agents {

namespace {

std::vector<double> column(const Matrix& m, Eigen::Index c, Eigen::Index begin, Eigen::Index n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = m(begin + i, c);
    return v;
}

}  // namespace

Matrix policy_action(const nn::DenseNet& actor, const HeadSpec& head, const Matrix& obs, ActionTrace* trace) {
    const Eigen::Index k = head.n_servers;
    if (actor.out_dim() != 2 * k) throw Error(ErrorCode::shape, "actor output must be 2K wide");
    Matrix logits = actor.forward(obs, trace ? &trace->cache : nullptr);
    Matrix action(2 * k, logits.cols());
    for (Eigen::Index c = 0; c < logits.cols(); ++c) {
        const auto z = column(logits, c, 0, k);
        std::vector<double> part;
        switch (head.partition) {
            case PartitionHead::dirichlet:
                part = policy::dirichlet_mean(policy::concentration_from_logits(z, head.dirichlet_eps));
                break;
            case PartitionHead::softmax: part = policy::softmax(z); break;
            case PartitionHead::raw: part = policy::project_to_simplex(z); break;
        }
        for (Eigen::Index j = 0; j < k; ++j) {
            action(j, c) = part[static_cast<std::size_t>(j)];
            action(k + j, c) = policy::sigmoid(logits(k + j, c));
        }
    }
    if (trace) {
        trace->logits = std::move(logits);
        trace->action = action;
    }
    return action;
}

Matrix policy_action_backward(const ActionTrace& trace, const HeadSpec& head, const Matrix& grad_action) {
    const Eigen::Index k = head.n_servers;
    Matrix g(2 * k, grad_action.cols());
    for (Eigen::Index c = 0; c < grad_action.cols(); ++c) {
        const auto gp = column(grad_action, c, 0, k);
        std::vector<double> gz;
        switch (head.partition) {
            case PartitionHead::dirichlet:
                gz = policy::mean_from_logits_backward(column(trace.logits, c, 0, k), head.dirichlet_eps, gp);
                break;
            case PartitionHead::softmax:
                gz = policy::softmax_backward(column(trace.action, c, 0, k), gp);
                break;
            case PartitionHead::raw:
                gz = policy::project_to_simplex_backward(column(trace.logits, c, 0, k), gp);
                break;
        }
        for (Eigen::Index j = 0; j < k; ++j) {
            g(j, c) = gz[static_cast<std::size_t>(j)];
            const double a = trace.action(k + j, c);
            g(k + j, c) = grad_action(k + j, c) * a * (1.0 - a);
        }
    }
    return g;
}

Matrix critic_input(const Matrix& obs, const Matrix& action) {
    if (obs.cols() != action.cols()) throw Error(ErrorCode::shape, "observation/action batch sizes differ");
    Matrix x(obs.rows() + action.rows(), obs.cols());
    x.topRows(obs.rows()) = obs;
    x.bottomRows(action.rows()) = action;
    return x;
}

Vector q_values(const nn::DenseNet& critic, const Matrix& obs, const Matrix& action) {
    return critic.forward(critic_input(obs, action), nullptr).row(0).transpose();
}

Vector td_target(std::span<const nn::DenseNet* const> critic_targets, const nn::DenseNet& actor_target,
                 const HeadSpec& head, const Batch& batch, double gamma, const TargetSmoothing* smoothing) {
    if (critic_targets.empty()) throw Error(ErrorCode::invalid_argument, "no target critic");
    if (batch.size() == 0) throw Error(ErrorCode::invalid_argument, "empty batch");
    Matrix next_action = policy_action(actor_target, head, batch.next_state);
    if (smoothing && smoothing->sigma > 0.0) {
        const Eigen::Index k = head.n_servers;
        for (Eigen::Index c = 0; c < next_action.cols(); ++c) {
            const auto noise = policy::clipped_noise(static_cast<std::size_t>(k), smoothing->sigma, smoothing->clip,
                                                     *smoothing->rng);
            for (Eigen::Index j = 0; j < k; ++j)
                next_action(k + j, c) = std::clamp(next_action(k + j, c) + noise[static_cast<std::size_t>(j)], 0.0, 1.0);
        }
    }
    Vector q = q_values(*critic_targets.front(), batch.next_state, next_action);
    for (std::size_t i = 1; i < critic_targets.size(); ++i)
        q = q.cwiseMin(q_values(*critic_targets[i], batch.next_state, next_action));
    return batch.reward.array() + gamma * (1.0 - batch.done.array()) * q.array();
}

double critic_update(nn::DenseNet& critic, nn::AdamState& opt, const Vector& target_y, const Batch& batch) {
    if (target_y.size() != batch.size()) throw Error(ErrorCode::shape, "target length differs from batch size");
    nn::ForwardCache cache;
    const Matrix q = critic.forward(critic_input(batch.state, batch.action), &cache);
    const Eigen::RowVectorXd diff = q.row(0) - target_y.transpose();
    const double n = static_cast<double>(batch.size());
    const double loss = diff.squaredNorm() / n;
    if (!std::isfinite(loss)) throw Error(ErrorCode::training_divergence, "non-finite critic loss");
    const Matrix grad = (2.0 / n) * diff;
    nn::adam_step(critic, critic.backward(cache, grad), opt);
    return loss;
}

double actor_update(nn::DenseNet& actor, nn::AdamState& opt, const nn::DenseNet& critic, const HeadSpec& head,
                    const Matrix& obs) {
    ActionTrace trace;
    const Matrix action = policy_action(actor, head, obs, &trace);
    nn::ForwardCache critic_cache;
    const Matrix q = critic.forward(critic_input(obs, action), &critic_cache);
    const double n = static_cast<double>(obs.cols());
    const double objective = q.sum() / n;
    if (!std::isfinite(objective)) throw Error(ErrorCode::training_divergence, "non-finite actor objective");

    const Matrix dq = Matrix::Constant(1, obs.cols(), 1.0 / n);
    const Matrix grad_input = critic.backward(critic_cache, dq).input;
    const Matrix grad_action = grad_input.bottomRows(action.rows());
    const Matrix grad_logits = policy_action_backward(trace, head, grad_action);
    nn::Gradients g = actor.backward(trace.cache, grad_logits);
    // ascent on the objective
    for (auto& w : g.weight) w = -w;
    for (auto& b : g.bias) b = -b;
    nn::adam_step(actor, g, opt);
    return objective;
}

void soft_update(nn::DenseNet& target, const nn::DenseNet& local, double tau) { target.soft_update(local, tau); }

}  // namespace mec::agents
