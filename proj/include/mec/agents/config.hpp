#pragma once

#include <string>
#include <vector>

namespace mec::agents {

enum class AgentKind { d3pg, ddpg, ddpg_softmax, td3, greedy };

const char* to_string(AgentKind kind);
AgentKind agent_kind_from_string(const std::string& name);
std::vector<AgentKind> all_agent_kinds();

struct AgentConfig {
    double gamma = 0.9;
    int batch_size = 256;
    double tau = 0.005;
    int buffer_capacity = 100000;
    int warmup_steps = 1000;
    int policy_delay = 2;
    double smoothing_sigma = 0.2;
    double smoothing_clip = 0.5;
    double actor_lr = 5e-4;
    double critic_lr = 5e-4;
    std::vector<int> hidden = {64, 128, 64};
    double ou_theta = 0.15;
    double ou_sigma = 0.2;
    double ou_mu = 0.0;
    double ou_dt = 1.0;
    double dirichlet_eps = 1e-6;
    // Initial per-server concentration of the Dirichlet head. The mean-based
    // actor gradient leaves the total concentration unchanged, so this also
    // fixes the spread of exploratory partitions.
    double dirichlet_init_concentration = 20.0;
    int greedy_candidates = 64;

    // Throws config error on out-of-range values.
    void validate() const;
};

}  // namespace mec::agents
