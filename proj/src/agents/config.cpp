#include "mec/agents/config.hpp"

#include "mec/error.hpp"

namespace mec::agents {

const char* to_string(AgentKind kind) {
    switch (kind) {
        case AgentKind::d3pg: return "d3pg";
        case AgentKind::ddpg: return "ddpg";
        case AgentKind::ddpg_softmax: return "ddpg_softmax";
        case AgentKind::td3: return "td3";
        case AgentKind::greedy: return "greedy";
    }
    return "unknown";
}

AgentKind agent_kind_from_string(const std::string& name) {
    for (auto k : all_agent_kinds())
        if (name == to_string(k)) return k;
    throw Error(ErrorCode::config, "unknown agent kind '" + name + "'");
}

std::vector<AgentKind> all_agent_kinds() {
    return {AgentKind::d3pg, AgentKind::ddpg, AgentKind::ddpg_softmax, AgentKind::td3, AgentKind::greedy};
}

void AgentConfig::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw Error(ErrorCode::config, what);
    };
    require(gamma >= 0 && gamma <= 1, "gamma must lie in [0,1]");
    require(tau > 0 && tau <= 1, "tau must lie in (0,1]");
    require(batch_size >= 1, "batch_size must be >= 1");
    require(buffer_capacity >= 1, "buffer_capacity must be >= 1");
    require(warmup_steps >= 0, "warmup_steps must be >= 0");
    require(policy_delay >= 1, "policy_delay must be >= 1");
    require(smoothing_sigma >= 0 && smoothing_clip > 0, "bad smoothing noise");
    require(actor_lr >= 0 && critic_lr >= 0, "learning rates must be >= 0");
    require(!hidden.empty(), "hidden layer list is empty");
    for (int h : hidden) require(h >= 1, "hidden sizes must be positive");
    require(ou_theta >= 0 && ou_sigma >= 0 && ou_dt > 0, "bad OU parameters");
    require(dirichlet_eps > 0, "dirichlet_eps must be positive");
    require(dirichlet_init_concentration > dirichlet_eps, "dirichlet_init_concentration must exceed dirichlet_eps");
    require(greedy_candidates >= 1, "greedy_candidates must be >= 1");
}

}  // namespace mec::agents
