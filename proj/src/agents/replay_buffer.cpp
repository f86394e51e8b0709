#include "mec/agents/replay_buffer.hpp"

#include "mec/error.hpp"

namespace mec::agents {

Batch make_batch(const std::vector<const Transition*>& items) {
    if (items.empty()) throw Error(ErrorCode::invalid_argument, "empty batch");
    const auto n = static_cast<Eigen::Index>(items.size());
    const auto s = static_cast<Eigen::Index>(items.front()->state.size());
    const auto a = static_cast<Eigen::Index>(items.front()->action.size());
    Batch b;
    b.state.resize(s, n);
    b.action.resize(a, n);
    b.reward.resize(n);
    b.next_state.resize(s, n);
    b.done.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Transition& t = *items[static_cast<std::size_t>(i)];
        if (static_cast<Eigen::Index>(t.state.size()) != s || static_cast<Eigen::Index>(t.next_state.size()) != s ||
            static_cast<Eigen::Index>(t.action.size()) != a)
            throw Error(ErrorCode::shape, "transition dimensions differ within batch");
        b.state.col(i) = Eigen::Map<const Eigen::VectorXd>(t.state.data(), s);
        b.action.col(i) = Eigen::Map<const Eigen::VectorXd>(t.action.data(), a);
        b.next_state.col(i) = Eigen::Map<const Eigen::VectorXd>(t.next_state.data(), s);
        b.reward(i) = t.reward;
        b.done(i) = t.done ? 1.0 : 0.0;
    }
    return b;
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw Error(ErrorCode::invalid_argument, "replay capacity must be positive");
    ring_.reserve(std::min<std::size_t>(capacity, 1 << 16));
}

void ReplayBuffer::push(Transition t) {
    if (ring_.size() < capacity_) {
        ring_.push_back(std::move(t));
    } else {
        ring_[next_] = std::move(t);
    }
    next_ = (next_ + 1) % capacity_;
    size_ = std::min(size_ + 1, capacity_);
}

const Transition& ReplayBuffer::at(std::size_t i) const {
    if (i >= size_) throw Error(ErrorCode::invalid_argument, "replay index out of range");
    const std::size_t oldest = size_ < capacity_ ? 0 : next_;
    return ring_[(oldest + i) % capacity_];
}

std::vector<std::size_t> ReplayBuffer::sample_indices(std::size_t n, Rng& rng) const {
    if (size_ < n || size_ == 0)
        throw Error(ErrorCode::insufficient_data,
                    "replay holds " + std::to_string(size_) + " transitions, " + std::to_string(n) + " requested");
    std::uniform_int_distribution<std::size_t> pick(0, size_ - 1);
    std::vector<std::size_t> idx(n);
    for (auto& i : idx) i = pick(rng);
    return idx;
}

std::vector<Transition> ReplayBuffer::sample(std::size_t n, Rng& rng) const {
    std::vector<Transition> out;
    for (std::size_t i : sample_indices(n, rng)) out.push_back(at(i));
    return out;
}

Batch ReplayBuffer::sample_batch(std::size_t n, Rng& rng) const {
    std::vector<const Transition*> items;
    for (std::size_t i : sample_indices(n, rng)) items.push_back(&at(i));
    return make_batch(items);
}

}  // namespace mec::agents
