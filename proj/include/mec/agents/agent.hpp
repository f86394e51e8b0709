#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "mec/agents/config.hpp"
#include "mec/agents/learning.hpp"
#include "mec/agents/replay_buffer.hpp"
#include "mec/nn/adam.hpp"
#include "mec/policy/noise.hpp"
#include "mec/sim/env.hpp"

namespace mec::agents {

class Agent {
public:
    virtual ~Agent() = default;

    virtual AgentKind kind() const = 0;
    virtual void begin_episode() {}
    // Every returned action satisfies the simplex and [0,1] frequency constraints.
    virtual sim::HybridAction act(const sim::Environment& env, std::span<const double> obs, bool explore) = 0;
    virtual void remember(Transition) {}
    // Performs one learning step when enough data is buffered.
    virtual void learn() {}
};

struct LearnDiagnostics {
    std::vector<double> critic_loss;
    std::optional<double> actor_objective;
};

// D3PG and the DDPG-family baselines share this implementation; they differ in
// the partition head, the number of critics, the policy delay and whether the
// target policy is smoothed.
class ActorCriticAgent : public Agent {
public:
    // `stream_salt` separates the exploration/replay streams of agents that
    // share a seed.
    ActorCriticAgent(AgentKind kind, std::size_t obs_dim, int n_servers, AgentConfig cfg, std::uint64_t seed,
                     std::uint64_t stream_salt = 0);

    AgentKind kind() const override { return kind_; }
    void begin_episode() override;
    sim::HybridAction act(const sim::Environment& env, std::span<const double> obs, bool explore) override;
    sim::HybridAction act(std::span<const double> obs, bool explore);
    void remember(Transition t) override;
    void learn() override;
    std::optional<LearnDiagnostics> learn_step();

    const HeadSpec& head() const { return head_; }
    const AgentConfig& config() const { return cfg_; }
    std::size_t n_critics() const { return critics_.size(); }
    int policy_delay() const { return policy_delay_; }
    bool smooths_target() const { return smoothing_; }

    nn::DenseNet& actor() { return actor_; }
    const nn::DenseNet& actor() const { return actor_; }
    const nn::DenseNet& actor_target() const { return actor_target_; }
    nn::DenseNet& critic(std::size_t i) { return critics_.at(i); }
    const nn::DenseNet& critic(std::size_t i) const { return critics_.at(i); }
    const nn::DenseNet& critic_target(std::size_t i) const { return critic_targets_.at(i); }
    const ReplayBuffer& buffer() const { return buffer_; }
    long critic_updates() const { return critic_updates_; }
    long actor_updates() const { return actor_updates_; }

    void save(std::ostream& os) const;
    void load(std::istream& is);

private:
    AgentKind kind_;
    AgentConfig cfg_;
    HeadSpec head_;
    int policy_delay_ = 1;
    bool smoothing_ = false;
    std::size_t obs_dim_;

    nn::DenseNet actor_;
    nn::DenseNet actor_target_;
    std::vector<nn::DenseNet> critics_;
    std::vector<nn::DenseNet> critic_targets_;
    nn::AdamState actor_opt_;
    std::vector<nn::AdamState> critic_opts_;

    ReplayBuffer buffer_;
    policy::OUProcess ou_;
    Rng explore_rng_;
    Rng partition_rng_;
    Rng replay_rng_;
    Rng smoothing_rng_;
    long critic_updates_ = 0;
    long actor_updates_ = 0;
};

// Sampled one-step lookahead: evaluates every candidate's immediate reward on
// a copy of the environment and returns the best one.
class GreedyAgent : public Agent {
public:
    GreedyAgent(int n_candidates, std::uint64_t seed, std::uint64_t stream_salt = 0);

    AgentKind kind() const override { return AgentKind::greedy; }
    sim::HybridAction act(const sim::Environment& env, std::span<const double> obs, bool explore) override;

    // Candidates and rewards from the most recent act() call.
    const std::vector<sim::HybridAction>& last_candidates() const { return candidates_; }
    const std::vector<double>& last_rewards() const { return rewards_; }
    std::size_t last_choice() const { return choice_; }

private:
    int n_candidates_;
    Rng rng_;
    std::vector<sim::HybridAction> candidates_;
    std::vector<double> rewards_;
    std::size_t choice_ = 0;
};

std::unique_ptr<Agent> make_agent(AgentKind kind, const sim::Environment& env, const AgentConfig& cfg,
                                  std::uint64_t seed, std::uint64_t stream_salt = 0);

}  // namespace mec::agents
