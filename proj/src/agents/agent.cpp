#include <cmath>
#include "mec/agents/agent.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "mec/error.hpp"
#include "mec/policy/dirichlet.hpp"
#include "mec/policy/heads.hpp"

namespace mec::agents {

namespace {

std::vector<int> net_sizes(std::size_t in, const std::vector<int>& hidden, std::size_t out) {
    std::vector<int> sizes{static_cast<int>(in)};
    sizes.insert(sizes.end(), hidden.begin(), hidden.end());
    sizes.push_back(static_cast<int>(out));
    return sizes;
}

}  // namespace

ActorCriticAgent::ActorCriticAgent(AgentKind kind, std::size_t obs_dim, int n_servers, AgentConfig cfg,
                                   std::uint64_t seed, std::uint64_t stream_salt)
    : kind_(kind), cfg_(std::move(cfg)), obs_dim_(obs_dim),
      buffer_(static_cast<std::size_t>(std::max(1, cfg_.buffer_capacity))),
      explore_rng_(make_rng(seed, Stream::exploration, stream_salt)),
      partition_rng_(make_rng(seed, Stream::partition, stream_salt)),
      replay_rng_(make_rng(seed, Stream::replay, stream_salt)),
      smoothing_rng_(make_rng(seed, Stream::exploration, stream_salt + 0x5eed)) {
    cfg_.validate();
    head_.n_servers = n_servers;
    head_.dirichlet_eps = cfg_.dirichlet_eps;
    std::size_t n_critics = 1;
    switch (kind) {
        case AgentKind::d3pg:
            head_.partition = PartitionHead::dirichlet;
            policy_delay_ = cfg_.policy_delay;
            smoothing_ = true;
            break;
        case AgentKind::ddpg_softmax:
            head_.partition = PartitionHead::softmax;
            policy_delay_ = cfg_.policy_delay;
            smoothing_ = true;
            break;
        case AgentKind::ddpg:
            head_.partition = PartitionHead::raw;
            policy_delay_ = 1;
            smoothing_ = false;
            break;
        case AgentKind::td3:
            head_.partition = PartitionHead::raw;
            policy_delay_ = cfg_.policy_delay;
            smoothing_ = true;
            n_critics = 2;
            break;
        case AgentKind::greedy: throw Error(ErrorCode::invalid_argument, "greedy is not an actor-critic agent");
    }

    const std::size_t k = static_cast<std::size_t>(n_servers);
    actor_ = nn::init_xavier(net_sizes(obs_dim, cfg_.hidden, 2 * k), stream_seed(seed, Stream::init, 0));
    {
        // Every partition head starts at the uniform split.
        double offset = 0.0;
        if (head_.partition == PartitionHead::dirichlet)
            offset = std::log(cfg_.dirichlet_init_concentration - cfg_.dirichlet_eps);
        else if (head_.partition == PartitionHead::raw)
            offset = 1.0 / static_cast<double>(k);
        auto& out = actor_.mutable_layers().back();
        for (std::size_t j = 0; j < k; ++j) out.bias(static_cast<Eigen::Index>(j)) += offset;
    }
    actor_target_ = actor_;
    actor_opt_ = nn::AdamState::for_net(actor_, cfg_.actor_lr);
    for (std::size_t i = 0; i < n_critics; ++i) {
        critics_.push_back(nn::init_xavier(net_sizes(obs_dim + 2 * k, cfg_.hidden, 1), stream_seed(seed, Stream::init, 1 + i)));
        critic_targets_.push_back(critics_.back());
        critic_opts_.push_back(nn::AdamState::for_net(critics_.back(), cfg_.critic_lr));
    }
    // Unconstrained heads explore on the whole action; the others only on frequencies.
    const std::size_t noise_dim = head_.partition == PartitionHead::raw ? 2 * k : k;
    ou_ = policy::OUProcess(noise_dim, cfg_.ou_theta, cfg_.ou_sigma, cfg_.ou_mu, cfg_.ou_dt);
}

void ActorCriticAgent::begin_episode() { ou_.reset(); }

sim::HybridAction ActorCriticAgent::act(const sim::Environment&, std::span<const double> obs, bool explore) {
    return act(obs, explore);
}

sim::HybridAction ActorCriticAgent::act(std::span<const double> obs, bool explore) {
    if (obs.size() != obs_dim_) throw Error(ErrorCode::shape, "observation length does not match actor input");
    const std::size_t k = static_cast<std::size_t>(head_.n_servers);
    const nn::Vector logits = actor_.forward(Eigen::Map<const nn::Vector>(obs.data(), static_cast<Eigen::Index>(obs.size())));
    std::vector<double> z(logits.data(), logits.data() + k);

    sim::HybridAction a;
    a.freq.resize(k);
    const std::vector<double>* noise = explore ? &ou_.step(explore_rng_) : nullptr;
    switch (head_.partition) {
        case PartitionHead::dirichlet: {
            const auto params = policy::concentration_from_logits(z, head_.dirichlet_eps);
            a.partition = explore ? policy::dirichlet_sample(params, partition_rng_) : policy::dirichlet_mean(params);
            break;
        }
        case PartitionHead::softmax: a.partition = policy::softmax(z); break;
        case PartitionHead::raw:
            if (noise)
                for (std::size_t j = 0; j < k; ++j) z[j] += (*noise)[j];
            a.partition = policy::project_to_simplex(z);
            break;
    }
    const std::size_t freq_offset = head_.partition == PartitionHead::raw ? k : 0;
    for (std::size_t j = 0; j < k; ++j) {
        double f = policy::sigmoid(logits(static_cast<Eigen::Index>(k + j)));
        if (noise) f += (*noise)[freq_offset + j];
        a.freq[j] = std::clamp(f, 0.0, 1.0);
    }
    return a;
}

void ActorCriticAgent::remember(Transition t) { buffer_.push(std::move(t)); }

void ActorCriticAgent::learn() { learn_step(); }

std::optional<LearnDiagnostics> ActorCriticAgent::learn_step() {
    const auto batch_size = static_cast<std::size_t>(cfg_.batch_size);
    if (buffer_.size() < std::max(batch_size, static_cast<std::size_t>(cfg_.warmup_steps))) return std::nullopt;

    const Batch batch = buffer_.sample_batch(batch_size, replay_rng_);
    std::vector<const nn::DenseNet*> targets;
    for (const auto& t : critic_targets_) targets.push_back(&t);
    TargetSmoothing smoothing{cfg_.smoothing_sigma, cfg_.smoothing_clip, &smoothing_rng_};
    const Vector y = td_target(targets, actor_target_, head_, batch, cfg_.gamma, smoothing_ ? &smoothing : nullptr);

    LearnDiagnostics diag;
    for (std::size_t i = 0; i < critics_.size(); ++i)
        diag.critic_loss.push_back(critic_update(critics_[i], critic_opts_[i], y, batch));
    ++critic_updates_;

    if (critic_updates_ % policy_delay_ == 0) {
        diag.actor_objective = actor_update(actor_, actor_opt_, critics_.front(), head_, batch.state);
        ++actor_updates_;
        for (std::size_t i = 0; i < critics_.size(); ++i) soft_update(critic_targets_[i], critics_[i], cfg_.tau);
        soft_update(actor_target_, actor_, cfg_.tau);
    }
    return diag;
}

void ActorCriticAgent::save(std::ostream& os) const {
    os << "mec-agent 1 " << to_string(kind_) << ' ' << critics_.size() << ' ' << critic_updates_ << ' '
       << actor_updates_ << '\n';
    actor_.save(os);
    actor_target_.save(os);
    actor_opt_.save(os);
    for (std::size_t i = 0; i < critics_.size(); ++i) {
        critics_[i].save(os);
        critic_targets_[i].save(os);
        critic_opts_[i].save(os);
    }
}

void ActorCriticAgent::load(std::istream& is) {
    std::string tag, kind;
    int version = 0;
    std::size_t n = 0;
    if (!(is >> tag >> version >> kind >> n >> critic_updates_ >> actor_updates_) || tag != "mec-agent" || version != 1)
        throw Error(ErrorCode::io, "bad agent checkpoint header");
    if (kind != to_string(kind_) || n != critics_.size())
        throw Error(ErrorCode::io, "checkpoint belongs to a different agent kind");
    auto same_shape = [](const nn::DenseNet& a, const nn::DenseNet& b) {
        if (a.layer_sizes() != b.layer_sizes()) throw Error(ErrorCode::shape, "checkpoint network shape mismatch");
    };
    auto read_net = [&](nn::DenseNet& into) {
        nn::DenseNet net = nn::DenseNet::load(is);
        same_shape(net, into);
        into = std::move(net);
    };
    read_net(actor_);
    read_net(actor_target_);
    actor_opt_ = nn::AdamState::load(is);
    for (std::size_t i = 0; i < n; ++i) {
        read_net(critics_[i]);
        read_net(critic_targets_[i]);
        critic_opts_[i] = nn::AdamState::load(is);
    }
}

GreedyAgent::GreedyAgent(int n_candidates, std::uint64_t seed, std::uint64_t stream_salt)
    : n_candidates_(n_candidates), rng_(make_rng(seed, Stream::greedy, stream_salt)) {
    if (n_candidates < 1) throw Error(ErrorCode::config, "greedy needs at least one candidate");
}

sim::HybridAction GreedyAgent::act(const sim::Environment& env, std::span<const double>, bool) {
    const std::size_t k = env.n_servers();
    candidates_.clear();
    rewards_.clear();
    for (std::size_t j = 0; j < k && candidates_.size() < static_cast<std::size_t>(n_candidates_); ++j) {
        sim::HybridAction a{std::vector<double>(k, 0.0), std::vector<double>(k, 1.0)};
        a.partition[j] = 1.0;
        candidates_.push_back(std::move(a));
    }
    std::exponential_distribution<double> expo(1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    while (candidates_.size() < static_cast<std::size_t>(n_candidates_)) {
        // normalized unit exponentials are uniform on the simplex
        sim::HybridAction a{std::vector<double>(k), std::vector<double>(k)};
        double total = 0.0;
        for (auto& p : a.partition) total += (p = expo(rng_));
        for (auto& p : a.partition) p /= total;
        for (auto& f : a.freq) f = unif(rng_);
        candidates_.push_back(std::move(a));
    }
    choice_ = 0;
    for (std::size_t i = 0; i < candidates_.size(); ++i) {
        rewards_.push_back(env.lookahead_reward(candidates_[i]));
        if (rewards_[i] > rewards_[choice_]) choice_ = i;
    }
    return candidates_[choice_];
}

std::unique_ptr<Agent> make_agent(AgentKind kind, const sim::Environment& env, const AgentConfig& cfg,
                                  std::uint64_t seed, std::uint64_t stream_salt) {
    if (kind == AgentKind::greedy) return std::make_unique<GreedyAgent>(cfg.greedy_candidates, seed, stream_salt);
    return std::make_unique<ActorCriticAgent>(kind, env.observation_size(), env.config().n_servers, cfg, seed,
                                              stream_salt);
}

}  // namespace mec::agents
