#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mec/agents/config.hpp"
#include "mec/sim/env.hpp"

namespace mec::harness {

struct ExperimentConfig {
    std::string profile = "desk";
    sim::EnvConfig env;
    agents::AgentConfig agent;
    agents::AgentKind agent_kind = agents::AgentKind::d3pg;
    int episodes = 300;
    int repetitions = 5;
    // Explicit run seeds; when empty, run k uses base_seed + k.
    std::vector<std::uint64_t> seeds;
    std::uint64_t base_seed = 1;
    // Noise-free episodes run after training (0 disables).
    int eval_episodes = 20;
    std::string output_path = "runs";

    std::vector<std::uint64_t> run_seeds() const;
    void validate() const;
};

// Built-in profiles: "desk" (CI-sized) and "paper" (full-scale settings).
ExperimentConfig make_profile(const std::string& name);

enum class ConfigFormat { ini, json };

// Overlays the keys of a [env]/[agent]/[experiment] document on `base`.
// Unknown sections or keys and malformed values raise a config error.
ExperimentConfig parse_config(std::istream& in, ConfigFormat format, ExperimentConfig base);
// Picks the format from the extension (.json, otherwise ini). Errors name the path.
ExperimentConfig load_config(const std::string& path, ExperimentConfig base);
// When the file sets experiment.profile, the profile is applied first.
ExperimentConfig load_config(const std::string& path);

// Every resolved field, as an ini document that parse_config accepts.
std::string to_ini(const ExperimentConfig& cfg);

}  // namespace mec::harness
