#pragma once

#include <cstdint>
#include <vector>

#include "mec/rng.hpp"
#include "mec/sim/model.hpp"

namespace mec::sim {

struct EnvConfig {
    int n_servers = 5;
    int n_users = 50;
    double data_bits_min = 2e5;
    double data_bits_max = 2e7;
    double cpu_cycles_min = 8e6;
    double cpu_cycles_max = 1e7;
    double f_max_min_hz = 2e9;
    double f_max_max_hz = 8e9;
    double snr_db = 100.0;
    // Per-episode uniform jitter (dB) applied to every user/server link.
    double snr_jitter_db = 10.0;
    double bandwidth_hz = 1e6;
    double tx_power_w = 0.5;
    double alpha = 0.5;
    double w1 = 2.0;
    double w2 = 0.2;
    double w3 = 0.05;
    double incentive_c = 0.05;
    double deadline_min_s = 0.1;
    double deadline_max_s = 0.5;
    int max_steps = 1000;
    double overload_queue_delay_s = 10.0;
    double partition_prune_eps = 1e-3;
    double freq_floor = 0.05;
    double log_floor = 1e-6;
    // Simulated time between two decisions.
    double slot_s = 5e-4;
    // Queue length that maps to 1.0 in the observation.
    double queue_norm = 20.0;
    std::uint64_t seed = 0;

    RewardWeights weights() const { return {alpha, w1, w2, w3, incentive_c}; }
    // Throws config error on an inconsistent or out-of-range field.
    void validate() const;
};

struct RewardParts {
    int lambda_flag = 0;
    double energy_j = 0.0;
    double max_delay_s = 0.0;
};

struct StepOutcome {
    double reward = 0.0;
    RewardParts reward_parts;
    std::vector<double> next_observation;
    bool done = false;
    // done because the step cap was reached rather than a server overloading
    bool truncated = false;
    long completed_count = 0;
    long expired_count = 0;
    int dispatched_subtasks = 0;
};

// Splits a task over the servers. Entries below the prune threshold are
// dropped and the surviving fractions renormalized to sum to one.
std::vector<SubTask> apply_partition(const TaskSpec& task, const HybridAction& action,
                                     const EnvConfig& cfg);

// Discrete-time MEC environment. One head-of-line task is offloaded per step;
// the clock then advances by cfg.slot_s while every server drains its queue.
// Plain value type: copying yields an independent simulation (used for
// one-step lookahead).
class Environment {
public:
    explicit Environment(EnvConfig cfg);

    std::vector<double> reset(std::uint64_t seed);
    StepOutcome step(const HybridAction& action);
    std::vector<double> observe() const;

    // Reward the given action would earn right now, evaluated on a copy.
    double lookahead_reward(const HybridAction& action) const;

    const EnvConfig& config() const { return cfg_; }
    std::size_t n_servers() const { return servers_.size(); }
    std::size_t observation_size() const { return 4 * static_cast<std::size_t>(cfg_.n_servers) + 3; }
    std::size_t action_size() const { return 2 * static_cast<std::size_t>(cfg_.n_servers); }

    const std::vector<EdgeServer>& servers() const { return servers_; }
    const TaskSpec& head_task() const { return head_; }
    const ChannelState& channel(int user, int server) const;
    double rate(int user, int server) const;
    double rate_max() const;
    double backlog_delay(int server) const;
    double now() const { return now_s_; }
    long step_count() const { return steps_; }
    bool done() const { return done_; }
    bool has_reset() const { return has_reset_; }

    long completed_tasks() const { return completed_; }
    long expired_tasks() const { return expired_; }
    long subtasks_created() const { return subtasks_created_; }
    long subtasks_completed() const { return subtasks_completed_; }
    long subtasks_expired() const { return subtasks_expired_; }
    long subtasks_in_system() const;

    // Replaces the head-of-line task; lets tests pin exact workloads.
    void set_head_task(const TaskSpec& task);

private:
    TaskSpec draw_task();
    void advance_servers(double dt);
    void finish(const SubTask& t);

    EnvConfig cfg_;
    Rng task_rng_;
    std::vector<EdgeServer> servers_;
    std::vector<ChannelState> channels_;  // user-major, n_users x n_servers
    std::vector<double> rates_;
    TaskSpec head_;
    double now_s_ = 0.0;
    long steps_ = 0;
    long next_task_id_ = 0;
    bool done_ = false;
    bool has_reset_ = false;
    long completed_ = 0;
    long expired_ = 0;
    long subtasks_created_ = 0;
    long subtasks_completed_ = 0;
    long subtasks_expired_ = 0;
};

}  // namespace mec::sim
