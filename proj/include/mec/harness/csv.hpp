#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mec/harness/metrics.hpp"

namespace mec::harness {

inline constexpr const char* kCsvHeader =
    "episode,total_reward,completed_tasks,completion_ratio,energy_total_j,energy_per_task_j,avg_time_cost_s,"
    "steps_survived";

// Per-episode mean across runs; counts become reals.
struct MeanRow {
    double total_reward = 0.0;
    double completed_tasks = 0.0;
    double completion_ratio = 0.0;
    double energy_total_j = 0.0;
    double energy_per_task_j = 0.0;
    double avg_time_cost_s = 0.0;
    double steps_survived = 0.0;

    bool operator==(const MeanRow&) const = default;
};

// Reals are written with 17 significant digits so reading back is exact.
void write_metrics_csv(std::ostream& out, const std::vector<RunMetrics>& rows);
std::vector<RunMetrics> read_metrics_csv(std::istream& in);

// Lines starting with '#' are comments (warnings) and are skipped on read.
void write_mean_csv(std::ostream& out, const std::vector<MeanRow>& rows, const std::vector<std::string>& warnings);
std::vector<MeanRow> read_mean_csv(std::istream& in);

// Arithmetic mean per episode index. All runs must have equal length.
std::vector<MeanRow> mean_across_runs(const std::vector<std::vector<RunMetrics>>& runs);

}  // namespace mec::harness
