#include "mec/sim/env.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mec/error.hpp"

namespace mec::sim {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::config, what);
}

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

void EnvConfig::validate() const {
    require(n_servers >= 1, "n_servers must be >= 1");
    require(n_users >= 1, "n_users must be >= 1");
    require(data_bits_min >= 0 && data_bits_min <= data_bits_max, "bad data_bits range");
    require(cpu_cycles_min >= 0 && cpu_cycles_min <= cpu_cycles_max, "bad cpu_cycles range");
    require(f_max_min_hz > 0 && f_max_min_hz <= f_max_max_hz, "bad f_max range");
    require(std::isfinite(snr_db) && snr_jitter_db >= 0, "bad snr settings");
    require(bandwidth_hz > 0 && tx_power_w > 0, "bandwidth and tx power must be positive");
    require(alpha >= 0 && alpha <= 1, "alpha must lie in [0,1]");
    require(deadline_min_s > 0 && deadline_min_s <= deadline_max_s, "bad deadline range");
    require(max_steps >= 1, "max_steps must be >= 1");
    require(overload_queue_delay_s > 0, "overload_queue_delay_s must be positive");
    require(partition_prune_eps >= 0 && partition_prune_eps < 1.0 / n_servers,
            "partition_prune_eps must lie in [0, 1/n_servers)");
    require(freq_floor > 0 && freq_floor <= 1, "freq_floor must lie in (0,1]");
    require(log_floor > 0, "log_floor must be positive");
    require(slot_s > 0, "slot_s must be positive");
    require(queue_norm > 0, "queue_norm must be positive");
}

std::vector<SubTask> apply_partition(const TaskSpec& task, const HybridAction& action,
                                     const EnvConfig& cfg) {
    validate_action(action, static_cast<std::size_t>(cfg.n_servers));
    double kept = 0.0;
    for (double p : action.partition)
        if (p >= cfg.partition_prune_eps && p > 0.0) kept += p;
    if (!(kept > 0.0)) throw Error(ErrorCode::degenerate_action, "every partition entry pruned");

    std::vector<SubTask> out;
    for (std::size_t j = 0; j < action.partition.size(); ++j) {
        const double p = action.partition[j];
        if (p < cfg.partition_prune_eps || p <= 0.0) continue;
        SubTask t;
        t.parent_task = task.id;
        t.server_index = static_cast<int>(j);
        t.fraction = p / kept;
        t.data_bits = t.fraction * task.data_bits;
        t.cpu_cycles = t.fraction * task.cpu_cycles;
        t.freq_fraction = std::max(action.freq[j], cfg.freq_floor);
        out.push_back(t);
    }
    return out;
}

Environment::Environment(EnvConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

std::vector<double> Environment::reset(std::uint64_t seed) {
    cfg_.seed = seed;
    task_rng_ = make_rng(seed, Stream::tasks);
    Rng channel_rng = make_rng(seed, Stream::channels);

    const int k = cfg_.n_servers;
    servers_.assign(static_cast<std::size_t>(k), EdgeServer{});
    for (int j = 0; j < k; ++j) {
        servers_[j].index = j;
        servers_[j].f_max_hz = uniform(channel_rng, cfg_.f_max_min_hz, cfg_.f_max_max_hz);
    }

    // Composite SNR = snr_db + jitter; the jitter is carried by the path-loss
    // term and the noise floor is pinned by the nominal SNR.
    const double noise = cfg_.tx_power_w * std::pow(10.0, -cfg_.snr_db / 10.0);
    channels_.assign(static_cast<std::size_t>(cfg_.n_users * k), ChannelState{});
    rates_.assign(channels_.size(), 0.0);
    for (std::size_t i = 0; i < channels_.size(); ++i) {
        const double jitter = uniform(channel_rng, -cfg_.snr_jitter_db, cfg_.snr_jitter_db);
        ChannelState& ch = channels_[i];
        ch.bandwidth_hz = cfg_.bandwidth_hz;
        ch.tx_power_w = cfg_.tx_power_w;
        ch.rayleigh_gain = 1.0;
        ch.path_loss = std::pow(10.0, jitter / 10.0);
        ch.noise_power_w = noise;
        rates_[i] = transmission_rate(ch);
    }

    now_s_ = 0.0;
    steps_ = 0;
    next_task_id_ = 0;
    done_ = false;
    has_reset_ = true;
    completed_ = expired_ = 0;
    subtasks_created_ = subtasks_completed_ = subtasks_expired_ = 0;
    head_ = draw_task();
    return observe();
}

TaskSpec Environment::draw_task() {
    TaskSpec t;
    t.id = next_task_id_++;
    t.user_id = std::uniform_int_distribution<int>(0, cfg_.n_users - 1)(task_rng_);
    t.data_bits = uniform(task_rng_, cfg_.data_bits_min, cfg_.data_bits_max);
    t.cpu_cycles = uniform(task_rng_, cfg_.cpu_cycles_min, cfg_.cpu_cycles_max);
    t.deadline_s = uniform(task_rng_, cfg_.deadline_min_s, cfg_.deadline_max_s);
    t.arrival_step = steps_;
    return t;
}

const ChannelState& Environment::channel(int user, int server) const {
    return channels_.at(static_cast<std::size_t>(user * cfg_.n_servers + server));
}

double Environment::rate(int user, int server) const {
    return rates_.at(static_cast<std::size_t>(user * cfg_.n_servers + server));
}

double Environment::rate_max() const {
    return cfg_.bandwidth_hz * std::log2(1.0 + std::pow(10.0, (cfg_.snr_db + cfg_.snr_jitter_db) / 10.0));
}

double Environment::backlog_delay(int server) const {
    const auto& s = servers_.at(static_cast<std::size_t>(server));
    return remaining_time(s, now_s_) + queue_delay(s);
}

long Environment::subtasks_in_system() const {
    long n = 0;
    for (const auto& s : servers_) n += static_cast<long>(s.queue.size()) + (s.in_service ? 1 : 0);
    return n;
}

void Environment::set_head_task(const TaskSpec& task) { head_ = task; }

std::vector<double> Environment::observe() const {
    if (!has_reset_) throw Error(ErrorCode::lifecycle, "observe before reset");
    std::vector<double> obs;
    obs.reserve(observation_size());
    for (int j = 0; j < cfg_.n_servers; ++j) {
        const auto& s = servers_[static_cast<std::size_t>(j)];
        obs.push_back(s.f_max_hz / cfg_.f_max_max_hz);
        obs.push_back(backlog_delay(j) / cfg_.overload_queue_delay_s);
        const double qlen = static_cast<double>(s.queue.size()) + (s.in_service ? 1.0 : 0.0);
        obs.push_back(qlen / cfg_.queue_norm);
    }
    const double rmax = rate_max();
    for (int j = 0; j < cfg_.n_servers; ++j) obs.push_back(rate(head_.user_id, j) / rmax);
    obs.push_back(head_.data_bits / cfg_.data_bits_max);
    obs.push_back(head_.cpu_cycles / cfg_.cpu_cycles_max);
    obs.push_back(head_.deadline_s / cfg_.deadline_max_s);
    return obs;
}

void Environment::finish(const SubTask& t) {
    if (t.on_time) ++subtasks_completed_;
    else ++subtasks_expired_;
}

void Environment::advance_servers(double dt) {
    const double end = now_s_ + dt;
    for (auto& s : servers_) {
        double budget = dt;
        while (budget > 0.0) {
            if (!s.in_service) {
                if (s.queue.empty()) break;
                s.in_service = InService{s.queue.front(), s.queue.front().cpu_cycles};
                s.queue.pop_front();
            }
            const double f = s.effective_freq(s.in_service->task);
            const double need = s.in_service->remaining_cycles / f;
            if (need <= budget) {
                budget -= need;
                finish(s.in_service->task);
                s.in_service.reset();
            } else {
                s.in_service->remaining_cycles -= budget * f;
                budget = 0.0;
            }
        }
        s.busy_until_s = s.in_service ? end + remaining_time(s, end) : end;
    }
    now_s_ = end;
}

double Environment::lookahead_reward(const HybridAction& action) const {
    Environment copy(*this);
    return copy.step(action).reward;
}

StepOutcome Environment::step(const HybridAction& action) {
    if (!has_reset_) throw Error(ErrorCode::lifecycle, "step before reset");
    if (done_) throw Error(ErrorCode::lifecycle, "step after episode end");

    std::vector<SubTask> subtasks = apply_partition(head_, action, cfg_);
    std::vector<double> delays, rates, powers;
    delays.reserve(subtasks.size());
    for (auto& t : subtasks) {
        const auto& server = servers_[static_cast<std::size_t>(t.server_index)];
        const double r = rate(head_.user_id, t.server_index);
        t.tx_time_s = transmission_time(t.data_bits, r);
        t.enqueue_time_s = now_s_;
        const double remaining = remaining_time(server, now_s_);
        const double queued = queue_delay(server);
        const double compute = compute_time(t.cpu_cycles, server.effective_freq(t));
        delays.push_back(subtask_delay(t.tx_time_s, remaining, queued, compute));
        rates.push_back(r);
        powers.push_back(channel(head_.user_id, t.server_index).tx_power_w);
    }

    StepOutcome out;
    const int flag = completion_flag(delays, head_.deadline_s);
    const double energy = transmission_energy(subtasks, rates, powers) + compute_energy(subtasks, servers_);
    const double max_delay = *std::max_element(delays.begin(), delays.end());
    out.reward_parts = {flag, energy, max_delay};
    out.reward = step_reward(flag, std::max(energy, cfg_.log_floor), std::max(max_delay, cfg_.log_floor),
                             cfg_.weights());

    for (auto& t : subtasks) {
        t.on_time = flag == 1;
        auto& server = servers_[static_cast<std::size_t>(t.server_index)];
        server.queue.push_back(t);
    }
    subtasks_created_ += static_cast<long>(subtasks.size());
    out.dispatched_subtasks = static_cast<int>(subtasks.size());
    if (flag == 1) ++completed_;
    else ++expired_;

    advance_servers(cfg_.slot_s);
    ++steps_;
    head_ = draw_task();

    bool overloaded = false;
    for (int j = 0; j < cfg_.n_servers; ++j)
        if (backlog_delay(j) > cfg_.overload_queue_delay_s) overloaded = true;
    out.truncated = !overloaded && steps_ >= cfg_.max_steps;
    done_ = overloaded || out.truncated;
    out.done = done_;
    out.completed_count = completed_;
    out.expired_count = expired_;
    out.next_observation = observe();
    return out;
}

}  // namespace mec::sim
