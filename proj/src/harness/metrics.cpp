#include "mec/harness/metrics.hpp"

#include <algorithm>

namespace mec::harness {

RunMetrics episode_metrics(std::span<const sim::StepOutcome> outcomes) {
    RunMetrics m;
    double delay_sum = 0.0;
    for (const auto& o : outcomes) {
        m.total_reward += o.reward;
        m.completed_tasks += o.reward_parts.lambda_flag;
        m.energy_total_j += o.reward_parts.energy_j;
        delay_sum += o.reward_parts.max_delay_s;
    }
    const long tasks = static_cast<long>(outcomes.size());
    m.steps_survived = tasks;
    m.completion_ratio = tasks > 0 ? static_cast<double>(m.completed_tasks) / static_cast<double>(tasks) : 0.0;
    m.energy_per_task_j = m.energy_total_j / static_cast<double>(std::max(1L, tasks));
    m.avg_time_cost_s = tasks > 0 ? delay_sum / static_cast<double>(tasks) : 0.0;
    return m;
}

}  // namespace mec::harness
