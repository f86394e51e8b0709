#pragma once

#include <span>
#include <vector>

#include "mec/sim/env.hpp"

namespace mec::harness {

// One row of the per-episode results table.
struct RunMetrics {
    double total_reward = 0.0;
    long completed_tasks = 0;
    double completion_ratio = 0.0;
    double energy_total_j = 0.0;
    double energy_per_task_j = 0.0;
    double avg_time_cost_s = 0.0;
    long steps_survived = 0;

    bool operator==(const RunMetrics&) const = default;
};

// Every step dispatches exactly one task, so the step count is the number of
// tasks; time cost averages max sub-task delay over completed and expired tasks.
RunMetrics episode_metrics(std::span<const sim::StepOutcome> outcomes);

}  // namespace mec::harness
