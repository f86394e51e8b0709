#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mec/harness/config.hpp"
#include "mec/harness/csv.hpp"

namespace mec::harness {

struct RunRecord {
    std::uint64_t seed = 0;
    std::vector<RunMetrics> train;
    std::vector<RunMetrics> eval;
    // Set when the run diverged; such runs are left out of the mean.
    std::optional<std::string> failure;
};

struct ExperimentResult {
    agents::AgentKind kind = agents::AgentKind::d3pg;
    std::vector<RunRecord> runs;
    std::vector<MeanRow> mean;
    std::vector<std::string> warnings;
};

// Exploration streams of different agents sharing a run seed are separated by
// this salt; env seeds are not, which pairs the agents' task streams.
std::uint64_t agent_stream_salt(agents::AgentKind kind);

// Trains cfg.agent_kind once per run seed and averages per episode. When
// output_path is non-empty writes <agent>_run<k>.csv, <agent>_mean.csv,
// <agent>_eval_run<k>.csv and <agent>_config.ini there.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace mec::harness
