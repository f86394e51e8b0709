#pragma once

// Delay, energy and reward model for partitioned task offloading.

#include <deque>
#include <optional>
#include <span>
#include <vector>

namespace mec::sim {

// Effective switched capacitance of the server CPUs (J / (Hz^2 * cycle)).
inline constexpr double kSwitchedCapacitance = 1e-26;

struct TaskSpec {
    long id = 0;
    int user_id = 0;
    double data_bits = 0.0;
    double cpu_cycles = 0.0;
    double deadline_s = 1.0;
    long arrival_step = 0;
};

struct SubTask {
    long parent_task = 0;
    int server_index = 0;
    double fraction = 1.0;
    double data_bits = 0.0;
    double cpu_cycles = 0.0;
    double freq_fraction = 1.0;
    double tx_time_s = 0.0;
    double enqueue_time_s = 0.0;
    // Set at dispatch: whether the parent task met its deadline.
    bool on_time = true;
};

struct InService {
    SubTask task;
    double remaining_cycles = 0.0;
};

struct EdgeServer {
    int index = 0;
    double f_max_hz = 0.0;
    std::deque<SubTask> queue;
    std::optional<InService> in_service;
    double busy_until_s = 0.0;

    double effective_freq(const SubTask& t) const { return t.freq_fraction * f_max_hz; }
};

struct ChannelState {
    double bandwidth_hz = 1e6;
    double tx_power_w = 0.5;
    double rayleigh_gain = 1.0;
    double path_loss = 1.0;
    double noise_power_w = 1.0;

    double snr() const { return tx_power_w * rayleigh_gain * path_loss / noise_power_w; }
};

// Partition fractions over the K servers followed by per-server frequency fractions.
struct HybridAction {
    std::vector<double> partition;
    std::vector<double> freq;

    std::size_t n_servers() const { return partition.size(); }
    std::vector<double> flatten() const;
    static HybridAction unflatten(std::span<const double> flat);
};

// Throws constraint error unless partition is on the simplex (tolerance 1e-9)
// and every frequency lies in [0, 1].
void validate_action(const HybridAction& action, std::size_t n_servers);

struct RewardWeights {
    double alpha = 0.5;
    double w1 = 2.0;
    double w2 = 0.2;
    double w3 = 0.05;
    double incentive_c = 0.05;
};

double transmission_rate(const ChannelState& ch);
double transmission_time(double data_bits, double rate_bps);
double compute_time(double cpu_cycles, double effective_freq_hz);
double remaining_time(const EdgeServer& server, double now_s);
double queue_delay(const EdgeServer& server);
double subtask_delay(double tx, double remaining, double queue, double compute);
int completion_flag(std::span<const double> delays, double deadline_s);
double transmission_energy(std::span<const SubTask> subtasks, std::span<const double> rates,
                           std::span<const double> powers);
double compute_energy(std::span<const SubTask> subtasks, std::span<const EdgeServer> servers);
double step_reward(int flag, double energy_j, double max_delay_s, const RewardWeights& w);

}  // namespace mec::sim
