#include "mec/agents/train.hpp"

#include "mec/error.hpp"

namespace mec::agents {

std::uint64_t episode_seed(std::uint64_t run_seed, long episode) {
    return stream_seed(run_seed, Stream::tasks, 0x100000ULL + static_cast<std::uint64_t>(episode));
}

std::uint64_t evaluation_seed(std::uint64_t run_seed, long episode) {
    return stream_seed(run_seed, Stream::tasks, 0x200000ULL + static_cast<std::uint64_t>(episode));
}

harness::RunMetrics run_episode(Agent& agent, sim::Environment& env, std::uint64_t env_seed,
                                const EpisodeOptions& opts) {
    std::vector<double> obs = env.reset(env_seed);
    agent.begin_episode();
    std::vector<sim::StepOutcome> outcomes;
    while (!env.done()) {
        sim::HybridAction action = agent.act(env, obs, opts.explore);
#ifndef NDEBUG
        sim::validate_action(action, env.n_servers());
#endif
        sim::StepOutcome out = env.step(action);
        if (opts.on_step) opts.on_step(env, action, out);
        if (opts.learn) {
            agent.remember({obs, action.flatten(), out.reward, out.next_observation, out.done && !out.truncated});
            agent.learn();
        }
        obs = std::move(out.next_observation);
        out.next_observation.clear();
        outcomes.push_back(std::move(out));
    }
    return harness::episode_metrics(outcomes);
}

std::vector<harness::RunMetrics> train(Agent& agent, sim::Environment& env, int episodes, std::uint64_t run_seed) {
    std::vector<harness::RunMetrics> metrics;
    EpisodeOptions opts;
    for (int e = 0; e < episodes; ++e) {
        try {
            metrics.push_back(run_episode(agent, env, episode_seed(run_seed, e), opts));
        } catch (const Error& err) {
            if (err.code() != ErrorCode::training_divergence) throw;
            throw Error(ErrorCode::training_divergence, "episode " + std::to_string(e) + ": " + err.detail());
        }
    }
    return metrics;
}

std::vector<harness::RunMetrics> train(AgentKind kind, sim::Environment& env, const AgentConfig& cfg, int episodes,
                                       std::uint64_t run_seed, std::uint64_t stream_salt) {
    auto agent = make_agent(kind, env, cfg, run_seed, stream_salt);
    return train(*agent, env, episodes, run_seed);
}

std::vector<harness::RunMetrics> evaluate(Agent& agent, sim::Environment& env, int episodes, std::uint64_t run_seed) {
    std::vector<harness::RunMetrics> metrics;
    EpisodeOptions opts;
    opts.explore = false;
    opts.learn = false;
    for (int e = 0; e < episodes; ++e) metrics.push_back(run_episode(agent, env, evaluation_seed(run_seed, e), opts));
    return metrics;
}

}  // namespace mec::agents
