#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mec/rng.hpp"

namespace mec::agents {

struct Transition {
    std::vector<double> state;
    std::vector<double> action;  // flattened partition then frequency
    double reward = 0.0;
    std::vector<double> next_state;
    bool done = false;
};

// Column-per-sample view of a minibatch.
struct Batch {
    Eigen::MatrixXd state;
    Eigen::MatrixXd action;
    Eigen::VectorXd reward;
    Eigen::MatrixXd next_state;
    Eigen::VectorXd done;

    Eigen::Index size() const { return reward.size(); }
};

Batch make_batch(const std::vector<const Transition*>& items);

// Fixed-capacity ring; the oldest transition is overwritten first.
class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity);

    void push(Transition t);
    std::size_t size() const { return size_; }
    std::size_t capacity() const { return capacity_; }
    // i = 0 is the oldest stored transition
    const Transition& at(std::size_t i) const;

    // n uniform draws with replacement; throws insufficient data when size < n.
    std::vector<std::size_t> sample_indices(std::size_t n, Rng& rng) const;
    std::vector<Transition> sample(std::size_t n, Rng& rng) const;
    Batch sample_batch(std::size_t n, Rng& rng) const;

private:
    std::size_t capacity_;
    std::vector<Transition> ring_;
    std::size_t next_ = 0;
    std::size_t size_ = 0;
};

}  // namespace mec::agents
