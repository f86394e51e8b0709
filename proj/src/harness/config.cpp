#include "mec/harness/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/json_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <variant>

#include "mec/error.hpp"

namespace mec::harness {

namespace pt = boost::property_tree;

namespace {

using FieldRef = std::variant<int*, double*, std::uint64_t*, std::string*, std::vector<int>*,
                              std::vector<std::uint64_t>*, agents::AgentKind*>;

struct Field {
    const char* section;
    const char* key;
    FieldRef ref;
};

// Single table shared by the reader and the writer.
std::vector<Field> fields(ExperimentConfig& c) {
    sim::EnvConfig& e = c.env;
    agents::AgentConfig& a = c.agent;
    return {
        {"env", "n_servers", &e.n_servers},
        {"env", "n_users", &e.n_users},
        {"env", "data_bits_min", &e.data_bits_min},
        {"env", "data_bits_max", &e.data_bits_max},
        {"env", "cpu_cycles_min", &e.cpu_cycles_min},
        {"env", "cpu_cycles_max", &e.cpu_cycles_max},
        {"env", "f_max_min_hz", &e.f_max_min_hz},
        {"env", "f_max_max_hz", &e.f_max_max_hz},
        {"env", "snr_db", &e.snr_db},
        {"env", "snr_jitter_db", &e.snr_jitter_db},
        {"env", "bandwidth_hz", &e.bandwidth_hz},
        {"env", "tx_power_w", &e.tx_power_w},
        {"env", "alpha", &e.alpha},
        {"env", "w1", &e.w1},
        {"env", "w2", &e.w2},
        {"env", "w3", &e.w3},
        {"env", "incentive_c", &e.incentive_c},
        {"env", "deadline_min_s", &e.deadline_min_s},
        {"env", "deadline_max_s", &e.deadline_max_s},
        {"env", "max_steps", &e.max_steps},
        {"env", "overload_queue_delay_s", &e.overload_queue_delay_s},
        {"env", "partition_prune_eps", &e.partition_prune_eps},
        {"env", "freq_floor", &e.freq_floor},
        {"env", "log_floor", &e.log_floor},
        {"env", "slot_s", &e.slot_s},
        {"env", "queue_norm", &e.queue_norm},
        {"agent", "gamma", &a.gamma},
        {"agent", "batch_size", &a.batch_size},
        {"agent", "tau", &a.tau},
        {"agent", "buffer_capacity", &a.buffer_capacity},
        {"agent", "warmup_steps", &a.warmup_steps},
        {"agent", "policy_delay", &a.policy_delay},
        {"agent", "smoothing_sigma", &a.smoothing_sigma},
        {"agent", "smoothing_clip", &a.smoothing_clip},
        {"agent", "actor_lr", &a.actor_lr},
        {"agent", "critic_lr", &a.critic_lr},
        {"agent", "hidden", &a.hidden},
        {"agent", "ou_theta", &a.ou_theta},
        {"agent", "ou_sigma", &a.ou_sigma},
        {"agent", "ou_mu", &a.ou_mu},
        {"agent", "ou_dt", &a.ou_dt},
        {"agent", "dirichlet_eps", &a.dirichlet_eps},
        {"agent", "dirichlet_init_concentration", &a.dirichlet_init_concentration},
        {"agent", "greedy_candidates", &a.greedy_candidates},
        {"experiment", "profile", &c.profile},
        {"experiment", "agent_kind", &c.agent_kind},
        {"experiment", "episodes", &c.episodes},
        {"experiment", "repetitions", &c.repetitions},
        {"experiment", "seeds", &c.seeds},
        {"experiment", "base_seed", &c.base_seed},
        {"experiment", "eval_episodes", &c.eval_episodes},
        {"experiment", "output_path", &c.output_path},
    };
}

[[noreturn]] void bad_value(const std::string& where, const std::string& text) {
    throw Error(ErrorCode::config, "bad value for " + where + ": '" + text + "'");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n\"");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n\"");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& where, const std::string& raw) {
    const std::string text = trim(raw);
    T value{};
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || text.empty()) bad_value(where, raw);
    return value;
}

template <class T>
std::vector<T> parse_list(const std::string& where, const std::string& raw) {
    std::vector<T> out;
    std::string text = trim(raw);
    if (!text.empty() && text.front() == '[') text = text.substr(1);
    if (!text.empty() && text.back() == ']') text.pop_back();
    if (trim(text).empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number<T>(where, item));
    return out;
}

void assign(const FieldRef& ref, const std::string& where, const std::string& text) {
    std::visit(
        [&](auto* p) {
            using T = std::remove_pointer_t<decltype(p)>;
            if constexpr (std::is_same_v<T, std::string>)
                *p = trim(text);
            else if constexpr (std::is_same_v<T, std::vector<int>>)
                *p = parse_list<int>(where, text);
            else if constexpr (std::is_same_v<T, std::vector<std::uint64_t>>)
                *p = parse_list<std::uint64_t>(where, text);
            else if constexpr (std::is_same_v<T, agents::AgentKind>)
                *p = agents::agent_kind_from_string(trim(text));
            else
                *p = parse_number<T>(where, text);
        },
        ref);
}

template <class T>
std::string join(const std::vector<T>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::string render(const FieldRef& ref) {
    return std::visit(
        [](auto* p) -> std::string {
            using T = std::remove_pointer_t<decltype(p)>;
            if constexpr (std::is_same_v<T, std::string>)
                return *p;
            else if constexpr (std::is_same_v<T, std::vector<int>> || std::is_same_v<T, std::vector<std::uint64_t>>)
                return join(*p);
            else if constexpr (std::is_same_v<T, agents::AgentKind>)
                return agents::to_string(*p);
            else if constexpr (std::is_same_v<T, double>) {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.17g", *p);
                return buf;
            } else
                return std::to_string(*p);
        },
        ref);
}

// JSON scalars and arrays both end up as strings; arrays are joined with ','.
std::string leaf_text(const pt::ptree& node) {
    if (node.empty()) return node.data();
    std::string s;
    for (const auto& [k, child] : node) {
        if (!k.empty() || !child.empty()) throw Error(ErrorCode::config, "nested values are not supported");
        s += (s.empty() ? "" : ",") + child.data();
    }
    return s;
}

}  // namespace

std::vector<std::uint64_t> ExperimentConfig::run_seeds() const {
    if (!seeds.empty()) return seeds;
    std::vector<std::uint64_t> out;
    for (int k = 0; k < repetitions; ++k) out.push_back(base_seed + static_cast<std::uint64_t>(k));
    return out;
}

void ExperimentConfig::validate() const {
    env.validate();
    agent.validate();
    if (episodes < 0) throw Error(ErrorCode::config, "episodes must be >= 0");
    if (repetitions < 1) throw Error(ErrorCode::config, "repetitions must be >= 1");
    if (!seeds.empty() && static_cast<int>(seeds.size()) != repetitions)
        throw Error(ErrorCode::config, "repetitions must equal the number of explicit seeds");
    if (eval_episodes < 0) throw Error(ErrorCode::config, "eval_episodes must be >= 0");
}

ExperimentConfig make_profile(const std::string& name) {
    ExperimentConfig c;
    c.profile = name;
    if (name == "desk") {
        c.env.n_servers = 5;
        c.env.n_users = 50;
        c.env.max_steps = 200;
        // Short slot and low overload threshold so the backlog reacts to the
        // frequency choice within the effective horizon of gamma = 0.9.
        c.env.slot_s = 1.5e-3;
        c.env.overload_queue_delay_s = 0.15;
        c.agent.hidden = {64, 128, 64};
        c.agent.batch_size = 64;
        c.episodes = 300;
    } else if (name == "paper") {
        c.env.n_servers = 5;
        c.env.n_users = 50;
        c.env.max_steps = 1000;
        c.agent.hidden = {256, 512, 256};
        c.agent.batch_size = 256;
        c.episodes = 2500;
    } else {
        throw Error(ErrorCode::config, "unknown profile '" + name + "' (expected desk or paper)");
    }
    return c;
}

namespace {

pt::ptree read_tree(std::istream& in, ConfigFormat format) {
    pt::ptree tree;
    try {
        if (format == ConfigFormat::json)
            pt::read_json(in, tree);
        else
            pt::read_ini(in, tree);
    } catch (const pt::file_parser_error& e) {
        throw Error(ErrorCode::config, "parse error: " + e.message() + " at line " + std::to_string(e.line()));
    }
    return tree;
}

ExperimentConfig overlay(const pt::ptree& tree, ExperimentConfig base) {
    auto table = fields(base);
    for (const auto& [section, body] : tree) {
        if (section != "env" && section != "agent" && section != "experiment")
            throw Error(ErrorCode::config, "unknown section [" + section + "]");
        for (const auto& [key, node] : body) {
            const std::string where = section + "." + key;
            auto it = std::find_if(table.begin(), table.end(),
                                   [&](const Field& f) { return section == f.section && key == f.key; });
            if (it == table.end()) throw Error(ErrorCode::config, "unknown key " + where);
            assign(it->ref, where, leaf_text(node));
        }
    }
    base.validate();
    return base;
}

pt::ptree read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io, "cannot open config file " + path);
    const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    try {
        return read_tree(in, json ? ConfigFormat::json : ConfigFormat::ini);
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.detail());
    }
}

ExperimentConfig apply_file(const std::string& path, const pt::ptree& tree, ExperimentConfig base) {
    try {
        return overlay(tree, std::move(base));
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.detail());
    }
}

}  // namespace

ExperimentConfig parse_config(std::istream& in, ConfigFormat format, ExperimentConfig base) {
    return overlay(read_tree(in, format), std::move(base));
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
    return apply_file(path, read_file(path), std::move(base));
}

ExperimentConfig load_config(const std::string& path) {
    const pt::ptree tree = read_file(path);
    const std::string profile = trim(tree.get<std::string>("experiment.profile", "desk"));
    ExperimentConfig base;
    try {
        base = make_profile(profile);
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.detail());
    }
    return apply_file(path, tree, std::move(base));
}

std::string to_ini(const ExperimentConfig& cfg) {
    ExperimentConfig copy = cfg;
    std::string out;
    std::string current;
    for (const Field& f : fields(copy)) {
        if (current != f.section) {
            out += (current.empty() ? "[" : "\n[") + std::string(f.section) + "]\n";
            current = f.section;
        }
        out += std::string(f.key) + " = " + render(f.ref) + "\n";
    }
    return out;
}

}  // namespace mec::harness
