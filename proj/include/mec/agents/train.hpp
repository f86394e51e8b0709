#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mec/agents/agent.hpp"
#include "mec/harness/metrics.hpp"
#include "mec/sim/env.hpp"

namespace mec::agents {

// Environment seed for a given episode of a run. Depends only on the run seed
// and the episode index, so agents trained on the same run seed face the same
// task and channel streams.
std::uint64_t episode_seed(std::uint64_t run_seed, long episode);
std::uint64_t evaluation_seed(std::uint64_t run_seed, long episode);

struct EpisodeOptions {
    bool explore = true;
    bool learn = true;
    // Called after every env step (debug audits, greedy checks).
    std::function<void(const sim::Environment&, const sim::HybridAction&, const sim::StepOutcome&)> on_step;
};

harness::RunMetrics run_episode(Agent& agent, sim::Environment& env, std::uint64_t env_seed,
                                const EpisodeOptions& opts);

// Reset, act, step, store, learn; repeated for `episodes` episodes. A
// divergence error is rethrown with the failing episode index.
std::vector<harness::RunMetrics> train(Agent& agent, sim::Environment& env, int episodes, std::uint64_t run_seed);
std::vector<harness::RunMetrics> train(AgentKind kind, sim::Environment& env, const AgentConfig& cfg, int episodes,
                                       std::uint64_t run_seed, std::uint64_t stream_salt = 0);

// Noise-free, learning-free episodes on held-out seeds.
std::vector<harness::RunMetrics> evaluate(Agent& agent, sim::Environment& env, int episodes, std::uint64_t run_seed);

}  // namespace mec::agents
