#include "mec/harness/experiment.hpp"

#include <filesystem>
#include <fstream>

#include "mec/agents/train.hpp"
#include "mec/error.hpp"

namespace mec::harness {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
    return out;
}

}  // namespace

std::uint64_t agent_stream_salt(agents::AgentKind kind) { return 0x1000u * (static_cast<std::uint64_t>(kind) + 1); }

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentResult result;
    result.kind = cfg.agent_kind;
    const std::string name = agents::to_string(cfg.agent_kind);

    fs::path dir;
    if (!cfg.output_path.empty()) {
        dir = cfg.output_path;
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec || !fs::is_directory(dir))
            throw Error(ErrorCode::io, "cannot create output directory " + dir.string());
        open_out(dir / (name + "_config.ini")) << to_ini(cfg);
    }

    const auto seeds = cfg.run_seeds();
    const std::uint64_t salt = agent_stream_salt(cfg.agent_kind);
    std::vector<std::vector<RunMetrics>> surviving;
    for (std::size_t k = 0; k < seeds.size(); ++k) {
        RunRecord rec;
        rec.seed = seeds[k];
        sim::Environment env(cfg.env);
        auto agent = agents::make_agent(cfg.agent_kind, env, cfg.agent, rec.seed, salt);
        try {
            rec.train = agents::train(*agent, env, cfg.episodes, rec.seed);
            if (cfg.eval_episodes > 0) rec.eval = agents::evaluate(*agent, env, cfg.eval_episodes, rec.seed);
            surviving.push_back(rec.train);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::training_divergence) throw;
            rec.failure = e.detail();
            result.warnings.push_back("run " + std::to_string(k) + " (seed " + std::to_string(rec.seed) +
                                      ") diverged: " + e.detail() + "; excluded from the mean");
        }
        if (!dir.empty()) {
            if (rec.failure) {
                open_out(dir / (name + "_run" + std::to_string(k) + ".csv"))
                    << "# warning: " << *rec.failure << '\n' << kCsvHeader << '\n';
            } else {
                auto out = open_out(dir / (name + "_run" + std::to_string(k) + ".csv"));
                write_metrics_csv(out, rec.train);
                if (!rec.eval.empty()) {
                    auto ev = open_out(dir / (name + "_eval_run" + std::to_string(k) + ".csv"));
                    write_metrics_csv(ev, rec.eval);
                }
            }
        }
        result.runs.push_back(std::move(rec));
    }
    result.mean = mean_across_runs(surviving);
    if (surviving.empty()) result.warnings.push_back("every run diverged; the mean is empty");
    if (!dir.empty()) {
        auto out = open_out(dir / (name + "_mean.csv"));
        write_mean_csv(out, result.mean, result.warnings);
    }
    return result;
}

}  // namespace mec::harness
