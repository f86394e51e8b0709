#include "mec/sim/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mec/error.hpp"

namespace mec::sim {

namespace {

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

}  // namespace

std::vector<double> HybridAction::flatten() const {
    std::vector<double> flat(partition);
    flat.insert(flat.end(), freq.begin(), freq.end());
    return flat;
}

HybridAction HybridAction::unflatten(std::span<const double> flat) {
    if (flat.size() % 2 != 0) throw Error(ErrorCode::shape, "flattened action has odd length");
    const auto k = flat.size() / 2;
    return {{flat.begin(), flat.begin() + k}, {flat.begin() + k, flat.end()}};
}

void validate_action(const HybridAction& action, std::size_t n_servers) {
    if (action.partition.size() != n_servers || action.freq.size() != n_servers)
        throw Error(ErrorCode::constraint, "action length does not match server count");
    double sum = 0.0;
    for (double p : action.partition) {
        if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::constraint, "partition entry outside [0,1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw Error(ErrorCode::constraint, "partition sums to " + std::to_string(sum));
    for (double f : action.freq)
        if (!(f >= 0.0 && f <= 1.0)) throw Error(ErrorCode::constraint, "frequency entry outside [0,1]");
}

double transmission_rate(const ChannelState& ch) {
    if (!finite_nonneg(ch.bandwidth_hz) || !finite_nonneg(ch.tx_power_w) ||
        !finite_nonneg(ch.rayleigh_gain) || !finite_nonneg(ch.path_loss) ||
        !std::isfinite(ch.noise_power_w) || ch.noise_power_w <= 0.0)
        throw Error(ErrorCode::invalid_channel, "non-finite or negative channel parameter");
    return ch.bandwidth_hz * std::log2(1.0 + ch.snr());
}

double transmission_time(double data_bits, double rate_bps) {
    if (data_bits == 0.0) return 0.0;
    if (!(rate_bps > 0.0)) throw Error(ErrorCode::unreachable_server, "zero rate for nonzero payload");
    return data_bits / rate_bps;
}

double compute_time(double cpu_cycles, double effective_freq_hz) {
    if (!(effective_freq_hz > 0.0))
        throw Error(ErrorCode::invalid_frequency, "effective frequency must be positive");
    return cpu_cycles / effective_freq_hz;
}

double remaining_time(const EdgeServer& server, double now_s) {
    if (now_s < 0.0) throw Error(ErrorCode::invalid_argument, "negative clock");
    if (!server.in_service) return 0.0;
    return server.in_service->remaining_cycles / server.effective_freq(server.in_service->task);
}

double queue_delay(const EdgeServer& server) {
    double total = 0.0;
    for (const auto& t : server.queue) {
        if (!(t.freq_fraction > 0.0))
            throw Error(ErrorCode::invalid_state, "queued sub-task with zero frequency");
        total += t.cpu_cycles / server.effective_freq(t);
    }
    return total;
}

double subtask_delay(double tx, double remaining, double queue, double compute) {
    return tx + remaining + queue + compute;
}

int completion_flag(std::span<const double> delays, double deadline_s) {
    if (delays.empty()) throw Error(ErrorCode::invalid_argument, "no sub-task delays");
    return *std::max_element(delays.begin(), delays.end()) <= deadline_s ? 1 : 0;
}

double transmission_energy(std::span<const SubTask> subtasks, std::span<const double> rates,
                           std::span<const double> powers) {
    if (rates.size() != subtasks.size() || powers.size() != subtasks.size())
        throw Error(ErrorCode::shape, "rates/powers not aligned with sub-tasks");
    double total = 0.0;
    for (std::size_t j = 0; j < subtasks.size(); ++j)
        total += transmission_time(subtasks[j].data_bits, rates[j]) * powers[j];
    return total;
}

double compute_energy(std::span<const SubTask> subtasks, std::span<const EdgeServer> servers) {
    double total = 0.0;
    for (const auto& t : subtasks) {
        const double f = servers[static_cast<std::size_t>(t.server_index)].effective_freq(t);
        total += kSwitchedCapacitance * f * f * t.cpu_cycles;
    }
    return total;
}

double step_reward(int flag, double energy_j, double max_delay_s, const RewardWeights& w) {
    if (!(energy_j > 0.0) || !(max_delay_s > 0.0))
        throw Error(ErrorCode::domain, "reward log terms need positive energy and delay");
    return w.alpha * w.w1 * flag - (1.0 - w.alpha) * w.w2 * std::log(energy_j) -
           w.w3 * std::log(max_delay_s) + w.incentive_c;
}

}  // namespace mec::sim
