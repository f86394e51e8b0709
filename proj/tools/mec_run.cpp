// Command-line driver: trains one or all agents and writes per-run and mean CSVs.
#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>

#include "mec/error.hpp"
#include "mec/harness/experiment.hpp"

using namespace mec;

namespace {

double tail_mean(const std::vector<harness::MeanRow>& rows, std::size_t n) {
    if (rows.empty()) return 0.0;
    n = std::min(n, rows.size());
    double s = 0.0;
    for (std::size_t i = rows.size() - n; i < rows.size(); ++i) s += rows[i].total_reward;
    return s / static_cast<double>(n);
}

void summarize(const harness::ExperimentConfig& cfg, const harness::ExperimentResult& r) {
    long cap = 0, evals = 0;
    for (const auto& run : r.runs)
        for (const auto& m : run.eval) {
            ++evals;
            cap += m.steps_survived == cfg.env.max_steps;
        }
    std::printf("%-13s runs=%zu final-50 mean reward=%.3f", agents::to_string(r.kind), r.runs.size(),
                tail_mean(r.mean, 50));
    if (evals > 0) std::printf(" eval episodes at cap=%ld/%ld", cap, evals);
    std::printf("\n");
    for (const auto& w : r.warnings) std::printf("  warning: %s\n", w.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Train edge-offloading agents and write per-episode metrics"};
    std::string config_path, agent = "d3pg", out, profile;
    std::optional<int> episodes, repetitions, eval_episodes;
    std::optional<std::uint64_t> seed;
    app.add_option("--config", config_path, "ini or json experiment file");
    app.add_option("--agent", agent, "d3pg|ddpg|ddpg_softmax|td3|greedy|all");
    app.add_option("--episodes", episodes, "training episodes per run");
    app.add_option("--seed", seed, "base seed; run k uses seed + k");
    app.add_option("--repetitions", repetitions, "independent runs");
    app.add_option("--eval-episodes", eval_episodes, "noise-free episodes after training");
    app.add_option("--out", out, "output directory");
    app.add_option("--profile", profile, "desk|paper");
    CLI11_PARSE(app, argc, argv);

    try {
        harness::ExperimentConfig cfg;
        if (!config_path.empty())
            cfg = profile.empty() ? harness::load_config(config_path)
                                  : harness::load_config(config_path, harness::make_profile(profile));
        else
            cfg = harness::make_profile(profile.empty() ? "desk" : profile);
        if (episodes) cfg.episodes = *episodes;
        if (repetitions) {
            cfg.repetitions = *repetitions;
            cfg.seeds.clear();
        }
        if (seed) {
            cfg.base_seed = *seed;
            cfg.seeds.clear();
        }
        if (eval_episodes) cfg.eval_episodes = *eval_episodes;
        if (!out.empty()) cfg.output_path = out;

        std::vector<agents::AgentKind> kinds;
        if (agent == "all")
            kinds = agents::all_agent_kinds();
        else
            kinds.push_back(agents::agent_kind_from_string(agent));
        cfg.validate();

        for (auto kind : kinds) {
            cfg.agent_kind = kind;
            summarize(cfg, harness::run_experiment(cfg));
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "mec_run: %s\n", e.what());
        return 1;
    }
    return 0;
}
