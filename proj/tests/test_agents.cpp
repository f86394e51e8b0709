#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "doctest.h"
#include "mec/agents/agent.hpp"
#include "mec/agents/learning.hpp"
#include "mec/agents/replay_buffer.hpp"
#include "mec/agents/train.hpp"
#include "mec/error.hpp"
#include "mec/policy/heads.hpp"

using namespace mec;
using namespace mec::agents;

namespace {

Transition tagged(double tag, std::size_t obs_dim = 3, std::size_t act_dim = 4) {
    Transition t;
    t.state.assign(obs_dim, tag);
    t.action.assign(act_dim, 0.25);
    t.reward = tag;
    t.next_state.assign(obs_dim, tag + 0.5);
    return t;
}

// Q(s, a) = w . [s; a] + b
nn::DenseNet linear_critic(std::vector<double> w, double b) {
    nn::DenseLayer l;
    l.weight = nn::Matrix(1, static_cast<Eigen::Index>(w.size()));
    for (std::size_t i = 0; i < w.size(); ++i) l.weight(0, static_cast<Eigen::Index>(i)) = w[i];
    l.bias = nn::Vector::Constant(1, b);
    return nn::DenseNet({l});
}

nn::DenseNet constant_critic(std::size_t in_dim, double q) { return linear_critic(std::vector<double>(in_dim, 0.0), q); }

Batch random_batch(std::size_t n, std::size_t obs_dim, std::size_t k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Transition> items(n);
    std::vector<const Transition*> ptrs;
    for (auto& t : items) {
        for (std::size_t i = 0; i < obs_dim; ++i) {
            t.state.push_back(u(rng));
            t.next_state.push_back(u(rng));
        }
        std::vector<double> z(k);
        for (auto& v : z) v = u(rng);
        const auto p = policy::softmax(z);
        t.action = p;
        for (std::size_t j = 0; j < k; ++j) t.action.push_back(u(rng));
        t.reward = u(rng) - 0.5;
        t.done = u(rng) < 0.2;
        ptrs.push_back(&t);
    }
    return make_batch(ptrs);
}

sim::EnvConfig small_env() {
    sim::EnvConfig c;
    c.n_servers = 3;
    c.n_users = 8;
    c.max_steps = 30;
    c.slot_s = 1.5e-3;
    c.overload_queue_delay_s = 0.15;
    return c;
}

AgentConfig small_agent() {
    AgentConfig a;
    a.hidden = {16, 16};
    a.batch_size = 8;
    a.warmup_steps = 16;
    a.buffer_capacity = 1000;
    return a;
}

}  // namespace

TEST_CASE("replay buffer evicts oldest first") {
    ReplayBuffer buf(3);
    for (int i = 0; i < 4; ++i) buf.push(tagged(i));
    REQUIRE(buf.size() == 3);
    CHECK(buf.at(0).reward == 1.0);
    CHECK(buf.at(1).reward == 2.0);
    CHECK(buf.at(2).reward == 3.0);
    CHECK_THROWS_AS(buf.at(3), Error);

    ReplayBuffer one(5);
    one.push(tagged(7.0));
    Rng rng(1);
    const auto s = one.sample(1, rng);
    REQUIRE(s.size() == 1);
    CHECK(s[0].reward == 7.0);
    CHECK(s[0].next_state == tagged(7.0).next_state);
}

TEST_CASE("replay buffer size never exceeds capacity") {
    ReplayBuffer buf(257);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100000; ++i) {
        buf.push(tagged(static_cast<double>(rng() % 1000)));
        REQUIRE(buf.size() <= buf.capacity());
    }
    CHECK(buf.size() == 257);
}

TEST_CASE("replay sampling is uniform, complete and seeded") {
    ReplayBuffer buf(10);
    for (int i = 0; i < 10; ++i) buf.push(tagged(i));
    Rng rng(42);
    std::vector<int> counts(10, 0);
    for (int draw = 0; draw < 10000; ++draw)
        for (auto i : buf.sample_indices(10, rng)) ++counts.at(i);
    for (int c : counts) CHECK(std::abs(c / 1e5 - 0.1) < 0.01);

    Rng r2(5);
    for (const auto& t : buf.sample(10, r2)) CHECK((t.reward >= 0 && t.reward <= 9 && t.reward == std::floor(t.reward)));

    Rng a(9), b(9);
    CHECK(buf.sample_indices(8, a) == buf.sample_indices(8, b));

    Rng r3(1);
    try {
        buf.sample(11, r3);
        FAIL("expected insufficient data");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::insufficient_data);
    }
}

TEST_CASE("batch layout is one column per transition") {
    const auto t0 = tagged(1.0), t1 = tagged(2.0);
    Transition t2 = tagged(3.0);
    t2.done = true;
    const Batch b = make_batch({&t0, &t1, &t2});
    CHECK(b.size() == 3);
    CHECK(b.state.rows() == 3);
    CHECK(b.state.cols() == 3);
    CHECK(b.state(0, 1) == 2.0);
    CHECK(b.next_state(2, 2) == 3.5);
    CHECK(b.done(2) == 1.0);
    CHECK(b.done(0) == 0.0);
    CHECK(b.action.rows() == 4);
}

TEST_CASE("td target") {
    const HeadSpec head{PartitionHead::dirichlet, 2, 1e-6};
    const nn::DenseNet actor = nn::init_xavier(std::vector<int>{3, 8, 4}, 1);
    const nn::DenseNet q2 = constant_critic(7, 2.0);
    const nn::DenseNet* one[] = {&q2};

    Transition t = tagged(0.0);
    t.reward = 1.0;
    Transition d = t;
    d.done = true;
    const Batch b = make_batch({&t, &d});

    const Vector y = td_target(one, actor, head, b, 0.9);
    CHECK(y(0) == doctest::Approx(2.8).epsilon(1e-15));
    CHECK(y(1) == 1.0);

    const Vector y0 = td_target(one, actor, head, b, 0.0);
    CHECK(y0(0) == 1.0);
    CHECK(y0(1) == 1.0);

    // twin critics take the minimum
    const nn::DenseNet q3 = constant_critic(7, 3.0);
    const nn::DenseNet* twins[] = {&q3, &q2};
    CHECK(td_target(twins, actor, head, b, 0.9)(0) == doctest::Approx(2.8).epsilon(1e-15));
}

TEST_CASE("twin-min target never exceeds either single-critic target") {
    const HeadSpec head{PartitionHead::raw, 3, 1e-6};
    const std::size_t obs = 5;
    const nn::DenseNet actor = nn::init_xavier(std::vector<int>{5, 16, 6}, 11);
    const nn::DenseNet c1 = nn::init_xavier(std::vector<int>{11, 16, 1}, 12);
    const nn::DenseNet c2 = nn::init_xavier(std::vector<int>{11, 16, 1}, 13);
    const Batch b = random_batch(64, obs, 3, 14);
    const nn::DenseNet* a[] = {&c1};
    const nn::DenseNet* bb[] = {&c2};
    const nn::DenseNet* both[] = {&c1, &c2};
    const Vector y1 = td_target(a, actor, head, b, 0.9);
    const Vector y2 = td_target(bb, actor, head, b, 0.9);
    const Vector ym = td_target(both, actor, head, b, 0.9);
    for (Eigen::Index i = 0; i < ym.size(); ++i) {
        CHECK(ym(i) <= y1(i));
        CHECK(ym(i) <= y2(i));
        CHECK(ym(i) == std::min(y1(i), y2(i)));
    }
}

TEST_CASE("target smoothing perturbs frequencies only") {
    const int k = 3;
    const HeadSpec head{PartitionHead::dirichlet, k, 1e-6};
    const nn::DenseNet actor = nn::init_xavier(std::vector<int>{5, 16, 6}, 21);
    const Batch b = random_batch(32, 5, k, 22);

    // critic reading only the partition rows
    std::vector<double> w(11, 0.0);
    for (int j = 0; j < k; ++j) w[5 + j] = 1.0 + j;
    const nn::DenseNet part_critic = linear_critic(w, 0.0);
    const nn::DenseNet* pc[] = {&part_critic};

    Rng rng(5);
    const TargetSmoothing smooth{0.2, 0.5, &rng};
    const Vector plain = td_target(pc, actor, head, b, 0.9);
    const Vector smoothed = td_target(pc, actor, head, b, 0.9, &smooth);
    CHECK((plain - smoothed).cwiseAbs().maxCoeff() == 0.0);

    std::vector<double> wf(11, 0.0);
    for (int j = 0; j < k; ++j) wf[5 + k + j] = 1.0;
    const nn::DenseNet freq_critic = linear_critic(wf, 0.0);
    const nn::DenseNet* fc[] = {&freq_critic};
    const Vector fp = td_target(fc, actor, head, b, 0.9);
    const Vector fs = td_target(fc, actor, head, b, 0.9, &smooth);
    CHECK((fp - fs).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("critic update") {
    Transition t = tagged(0.0, 2, 2);
    const Batch b = make_batch({&t});

    SUBCASE("loss is the squared TD error before the step") {
        nn::DenseNet critic = constant_critic(4, 1.0);
        auto opt = nn::AdamState::for_net(critic, 1e-3);
        Vector y(1);
        y << 3.0;
        CHECK(critic_update(critic, opt, y, b) == doctest::Approx(4.0).epsilon(1e-15));
    }
    SUBCASE("zero error leaves parameters unchanged") {
        nn::DenseNet critic = linear_critic({0.3, -0.2, 0.1, 0.4}, 0.5);
        const nn::DenseNet before = critic;
        auto opt = nn::AdamState::for_net(critic, 1e-3);
        const Vector y = q_values(critic, b.state, b.action);
        CHECK(critic_update(critic, opt, y, b) == 0.0);
        CHECK(critic.layers()[0].weight == before.layers()[0].weight);
        CHECK(critic.layers()[0].bias == before.layers()[0].bias);
    }
    SUBCASE("loss falls on a frozen batch") {
        const Batch rb = random_batch(32, 4, 2, 3);
        nn::DenseNet critic = nn::init_xavier(std::vector<int>{8, 32, 1}, 4);
        auto opt = nn::AdamState::for_net(critic, 1e-3);
        Vector y(32);
        for (Eigen::Index i = 0; i < 32; ++i) y(i) = std::sin(3.0 * i);
        const double first = critic_update(critic, opt, y, rb);
        double last = first;
        for (int i = 0; i < 99; ++i) last = critic_update(critic, opt, y, rb);
        CHECK(last < first);
    }
    SUBCASE("non-finite targets raise divergence") {
        nn::DenseNet critic = constant_critic(4, 1.0);
        auto opt = nn::AdamState::for_net(critic, 1e-3);
        Vector y(1);
        y << std::nan("");
        try {
            critic_update(critic, opt, y, b);
            FAIL("expected divergence");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::training_divergence);
        }
    }
}

TEST_CASE("actor update") {
    const int k = 2;
    const HeadSpec head{PartitionHead::dirichlet, k, 1e-6};
    Matrix obs(3, 4);
    obs << 0.1, -0.4, 0.7, 0.2, 0.5, 0.3, -0.6, 0.9, -0.2, 0.8, 0.4, -0.1;

    SUBCASE("constant critic gives zero gradient") {
        nn::DenseNet actor = nn::init_xavier(std::vector<int>{3, 8, 4}, 7);
        const nn::DenseNet before = actor;
        auto opt = nn::AdamState::for_net(actor, 1e-2);
        actor_update(actor, opt, constant_critic(7, 5.0), head, obs);
        for (std::size_t i = 0; i < actor.layers().size(); ++i) {
            CHECK(actor.layers()[i].weight == before.layers()[i].weight);
            CHECK(actor.layers()[i].bias == before.layers()[i].bias);
        }
    }
    SUBCASE("critic summing frequencies raises the sigmoid pre-activations") {
        nn::DenseNet actor = nn::init_xavier(std::vector<int>{3, 4}, 8);
        auto opt = nn::AdamState::for_net(actor, 1e-2);
        const nn::DenseNet critic = linear_critic({0, 0, 0, 0, 0, 1, 1}, 0.0);
        const Matrix before = actor.forward(obs, nullptr);
        actor_update(actor, opt, critic, head, obs);
        const Matrix after = actor.forward(obs, nullptr);
        for (Eigen::Index c = 0; c < obs.cols(); ++c)
            for (int j = k; j < 2 * k; ++j) CHECK(after(j, c) > before(j, c));
    }
    SUBCASE("objective does not decrease with a small step") {
        for (auto part : {PartitionHead::dirichlet, PartitionHead::softmax, PartitionHead::raw}) {
            const HeadSpec h{part, k, 1e-6};
            nn::DenseNet actor = nn::init_xavier(std::vector<int>{3, 16, 4}, 9);
            auto opt = nn::AdamState::for_net(actor, 1e-3);
            const nn::DenseNet critic = linear_critic({0.2, -0.1, 0.3, 1.5, -0.7, 0.8, 0.4}, 0.0);
            double prev = actor_update(actor, opt, critic, h, obs);
            for (int i = 0; i < 50; ++i) {
                const double cur = actor_update(actor, opt, critic, h, obs);
                CHECK(cur >= prev - 1e-12);
                prev = cur;
            }
        }
    }
    SUBCASE("critic parameters are untouched") {
        nn::DenseNet actor = nn::init_xavier(std::vector<int>{3, 8, 4}, 10);
        auto opt = nn::AdamState::for_net(actor, 1e-2);
        const nn::DenseNet critic = nn::init_xavier(std::vector<int>{7, 8, 1}, 11);
        const nn::DenseNet copy = critic;
        actor_update(actor, opt, critic, head, obs);
        CHECK(critic.layers()[0].weight == copy.layers()[0].weight);
        CHECK(critic.layers()[1].bias == copy.layers()[1].bias);
    }
}

TEST_CASE("soft update") {
    nn::DenseNet local = constant_critic(2, 1.0);
    nn::DenseNet target = constant_critic(2, 0.0);
    local.mutable_layers()[0].weight.setConstant(1.0);

    soft_update(target, local, 0.5);
    CHECK(target.layers()[0].bias(0) == 0.5);
    CHECK(target.layers()[0].weight(0, 1) == 0.5);

    // the gap shrinks by (1 - tau) per call
    double gap = 0.5;
    for (int i = 0; i < 20; ++i) {
        soft_update(target, local, 0.1);
        const double g = 1.0 - target.layers()[0].bias(0);
        CHECK(g == doctest::Approx(gap * 0.9).epsilon(1e-12));
        gap = g;
    }

    soft_update(target, local, 1.0);
    CHECK(target.layers()[0].bias == local.layers()[0].bias);
    CHECK(target.layers()[0].weight == local.layers()[0].weight);
}

TEST_CASE("deterministic d3pg action") {
    sim::Environment env(small_env());
    const auto obs = env.reset(1);
    ActorCriticAgent agent(AgentKind::d3pg, obs.size(), 3, small_agent(), 1);
    for (auto& l : agent.actor().mutable_layers()) {
        l.weight.setZero();
        l.bias.setZero();
    }
    const auto a = agent.act(obs, false);
    for (double p : a.partition) CHECK(p == doctest::Approx(1.0 / 3).epsilon(1e-12));
    for (double f : a.freq) CHECK(f == 0.5);
}

TEST_CASE("exploratory actions satisfy the action constraints for every kind") {
    sim::Environment env(small_env());
    auto obs = env.reset(2);
    for (auto kind : {AgentKind::d3pg, AgentKind::ddpg, AgentKind::ddpg_softmax, AgentKind::td3}) {
        AgentConfig cfg = small_agent();
        cfg.ou_sigma = 5.0;  // large noise must still be clamped
        ActorCriticAgent agent(kind, obs.size(), 3, cfg, 3);
        for (int i = 0; i < 200; ++i) {
            const auto a = agent.act(obs, true);
            double s = 0;
            for (double p : a.partition) {
                CHECK(p >= 0.0);
                CHECK(p <= 1.0);
                s += p;
            }
            CHECK(std::abs(s - 1.0) < 1e-9);
            for (double f : a.freq) CHECK((f >= 0.0 && f <= 1.0));
        }
    }
}

TEST_CASE("untrained heads start at the uniform partition") {
    sim::Environment env(small_env());
    const auto obs = env.reset(3);
    for (auto kind : {AgentKind::d3pg, AgentKind::ddpg_softmax}) {
        ActorCriticAgent agent(kind, obs.size(), 3, small_agent(), 4);
        const auto a = agent.act(obs, false);
        for (double p : a.partition) CHECK(p == doctest::Approx(1.0 / 3).epsilon(0.2));
    }
}

TEST_CASE("d3pg and ddpg-softmax share the frequency path") {
    sim::Environment env(small_env());
    const auto obs = env.reset(4);
    ActorCriticAgent d(AgentKind::d3pg, obs.size(), 3, small_agent(), 5, 77);
    ActorCriticAgent s(AgentKind::ddpg_softmax, obs.size(), 3, small_agent(), 5, 77);
    for (int i = 0; i < 50; ++i) {
        const auto ad = d.act(obs, true);
        const auto as = s.act(obs, true);
        CHECK(ad.freq == as.freq);
    }
}

TEST_CASE("agent kinds configure heads, critics and schedules") {
    const AgentConfig cfg = small_agent();
    ActorCriticAgent d3pg(AgentKind::d3pg, 15, 3, cfg, 1);
    ActorCriticAgent ddpg(AgentKind::ddpg, 15, 3, cfg, 1);
    ActorCriticAgent soft(AgentKind::ddpg_softmax, 15, 3, cfg, 1);
    ActorCriticAgent td3(AgentKind::td3, 15, 3, cfg, 1);
    CHECK(d3pg.head().partition == PartitionHead::dirichlet);
    CHECK(d3pg.n_critics() == 1);
    CHECK(d3pg.policy_delay() == 2);
    CHECK(d3pg.smooths_target());
    CHECK(ddpg.head().partition == PartitionHead::raw);
    CHECK(ddpg.policy_delay() == 1);
    CHECK_FALSE(ddpg.smooths_target());
    CHECK(soft.head().partition == PartitionHead::softmax);
    CHECK(td3.n_critics() == 2);
    CHECK(td3.head().partition == PartitionHead::raw);
    CHECK_THROWS_AS(ActorCriticAgent(AgentKind::greedy, 15, 3, cfg, 1), Error);
}

TEST_CASE("td3 updates the actor once per policy_delay critic steps") {
    AgentConfig cfg = small_agent();
    cfg.warmup_steps = 0;
    ActorCriticAgent td3(AgentKind::td3, 3, 2, cfg, 6);
    CHECK_FALSE(td3.learn_step().has_value());  // empty buffer
    for (int i = 0; i < 20; ++i) td3.remember(tagged(i * 0.05));
    for (int i = 0; i < 10; ++i) {
        const auto diag = td3.learn_step();
        REQUIRE(diag.has_value());
        CHECK(diag->critic_loss.size() == 2);
        CHECK(diag->actor_objective.has_value() == ((i + 1) % 2 == 0));
    }
    CHECK(td3.critic_updates() == 10);
    CHECK(td3.actor_updates() == td3.critic_updates() / td3.policy_delay());
}

TEST_CASE("a learn step moves targets toward the local networks") {
    AgentConfig cfg = small_agent();
    cfg.warmup_steps = 0;
    cfg.policy_delay = 1;
    ActorCriticAgent agent(AgentKind::d3pg, 3, 2, cfg, 8);
    for (int i = 0; i < 20; ++i) agent.remember(tagged(i * 0.05));
    for (int i = 0; i < 3; ++i) agent.learn_step();

    const Matrix before_gap =
        (agent.critic_target(0).layers()[0].weight - agent.critic(0).layers()[0].weight).cwiseAbs();
    const nn::DenseNet target_before = agent.critic_target(0);
    agent.learn_step();
    // compare the new target with the same local it was blended toward
    const Matrix local = agent.critic(0).layers()[0].weight;
    const Matrix blended = agent.critic_target(0).layers()[0].weight;
    const Matrix gap_before = (target_before.layers()[0].weight - local).cwiseAbs();
    const Matrix gap_after = (blended - local).cwiseAbs();
    for (Eigen::Index i = 0; i < gap_before.size(); ++i)
        if (gap_before(i) > 1e-12) CHECK(gap_after(i) < gap_before(i));
    CHECK(before_gap.maxCoeff() > 0.0);
}

TEST_CASE("greedy returns the argmax of its candidates") {
    sim::Environment env(small_env());
    auto obs = env.reset(9);
    GreedyAgent greedy(64, 10);
    for (int step = 0; step < 20 && !env.done(); ++step) {
        const auto a = greedy.act(env, obs, false);
        const auto& rewards = greedy.last_rewards();
        REQUIRE(rewards.size() == 64);
        const std::size_t best = greedy.last_choice();
        for (std::size_t i = 0; i < rewards.size(); ++i) {
            CHECK(rewards[best] >= rewards[i]);
            if (i < best) CHECK(rewards[i] < rewards[best]);  // lowest index wins ties
        }
        CHECK(a.partition == greedy.last_candidates()[best].partition);
        CHECK(env.lookahead_reward(a) == rewards[best]);
        obs = env.step(a).next_observation;
    }
}

TEST_CASE("greedy candidates start with full-frequency one-hot partitions") {
    sim::Environment env(small_env());
    const auto obs = env.reset(11);
    GreedyAgent greedy(8, 12);
    greedy.act(env, obs, false);
    const auto& c = greedy.last_candidates();
    REQUIRE(c.size() == 8);
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i) CHECK(c[j].partition[i] == (i == j ? 1.0 : 0.0));
        for (double f : c[j].freq) CHECK(f == 1.0);
    }
}

TEST_CASE("greedy on a single empty server agrees with the closed-form reward") {
    sim::EnvConfig cfg = small_env();
    cfg.n_servers = 1;
    sim::Environment env(cfg);
    const auto obs = env.reset(13);
    GreedyAgent greedy(16, 14);
    greedy.act(env, obs, false);

    const auto& task = env.head_task();
    const auto& server = env.servers()[0];
    const double rate = env.rate(task.user_id, 0);
    const auto w = cfg.weights();
    std::vector<double> oracle;
    for (const auto& cand : greedy.last_candidates()) {
        const double f = std::max(cand.freq[0], cfg.freq_floor);
        const double tx = task.data_bits / rate;
        const double delay = tx + task.cpu_cycles / (f * server.f_max_hz);
        const double energy = cfg.tx_power_w * tx + 1e-26 * std::pow(f * server.f_max_hz, 2) * task.cpu_cycles;
        const int flag = delay <= task.deadline_s ? 1 : 0;
        oracle.push_back(w.alpha * w.w1 * flag - (1 - w.alpha) * w.w2 * std::log(energy) -
                         w.w3 * std::log(delay) + w.incentive_c);
    }
    const auto best = std::distance(oracle.begin(), std::max_element(oracle.begin(), oracle.end()));
    CHECK(static_cast<std::size_t>(best) == greedy.last_choice());
    for (std::size_t i = 0; i < oracle.size(); ++i)
        CHECK(greedy.last_rewards()[i] == doctest::Approx(oracle[i]).epsilon(1e-12));
}

TEST_CASE("training loop") {
    sim::Environment env(small_env());
    const AgentConfig cfg = small_agent();

    CHECK(train(AgentKind::d3pg, env, cfg, 0, 1).empty());

    SUBCASE("seeded runs are bit-reproducible") {
        for (auto kind : all_agent_kinds()) {
            const auto a = train(kind, env, cfg, 4, 21);
            const auto b = train(kind, env, cfg, 4, 21);
            CHECK(a == b);
            for (const auto& m : a) CHECK(m.steps_survived <= env.config().max_steps);
        }
    }
    SUBCASE("zero learning rates reproduce a pure-exploration rollout") {
        AgentConfig frozen = cfg;
        frozen.actor_lr = 0.0;
        frozen.critic_lr = 0.0;
        auto learner = make_agent(AgentKind::d3pg, env, frozen, 3);
        auto explorer = make_agent(AgentKind::d3pg, env, frozen, 3);
        const auto trained = train(*learner, env, 4, 5);
        std::vector<harness::RunMetrics> rollout;
        for (int e = 0; e < 4; ++e)
            rollout.push_back(run_episode(*explorer, env, episode_seed(5, e), {true, false, {}}));
        CHECK(trained == rollout);
    }
    SUBCASE("agents sharing a run seed see the same tasks") {
        std::vector<double> first_a, first_b;
        auto record = [](std::vector<double>& out) {
            return [&out](const sim::Environment& e, const sim::HybridAction&, const sim::StepOutcome&) {
                out.push_back(e.head_task().data_bits);
            };
        };
        auto a = make_agent(AgentKind::d3pg, env, cfg, 7, 1);
        auto b = make_agent(AgentKind::greedy, env, cfg, 7, 2);
        run_episode(*a, env, episode_seed(7, 0), {true, true, record(first_a)});
        run_episode(*b, env, episode_seed(7, 0), {true, true, record(first_b)});
        const std::size_t n = std::min(first_a.size(), first_b.size());
        REQUIRE(n > 0);
        // the task drawn after step i does not depend on the action
        for (std::size_t i = 0; i < n; ++i) CHECK(first_a[i] == first_b[i]);
    }
}

TEST_CASE("agent checkpoint round-trip") {
    sim::Environment env(small_env());
    const auto obs = env.reset(1);
    AgentConfig cfg = small_agent();
    cfg.warmup_steps = 0;
    ActorCriticAgent a(AgentKind::td3, obs.size(), 3, cfg, 2);
    for (int i = 0; i < 30; ++i) a.remember(tagged(0.01 * i, obs.size(), 6));
    for (int i = 0; i < 5; ++i) a.learn_step();

    std::stringstream ss;
    a.save(ss);
    ActorCriticAgent b(AgentKind::td3, obs.size(), 3, cfg, 99);
    b.load(ss);
    CHECK(a.act(obs, false).freq == b.act(obs, false).freq);
    CHECK(a.act(obs, false).partition == b.act(obs, false).partition);
    CHECK(a.critic(1).layers()[0].weight == b.critic(1).layers()[0].weight);
    CHECK(a.critic_target(0).layers()[1].bias == b.critic_target(0).layers()[1].bias);

    ActorCriticAgent wrong(AgentKind::d3pg, obs.size(), 3, cfg, 2);
    std::stringstream again;
    a.save(again);
    CHECK_THROWS_AS(wrong.load(again), Error);
}

TEST_CASE("agent config validation") {
    AgentConfig c;
    CHECK_NOTHROW(c.validate());
    c.gamma = 1.5;
    CHECK_THROWS_AS(c.validate(), Error);
    c = AgentConfig{};
    c.tau = 0.0;
    CHECK_THROWS_AS(c.validate(), Error);
    c = AgentConfig{};
    c.hidden = {};
    CHECK_THROWS_AS(c.validate(), Error);
    CHECK(agent_kind_from_string("ddpg_softmax") == AgentKind::ddpg_softmax);
    CHECK_THROWS_AS(agent_kind_from_string("dqn"), Error);
    for (auto k : all_agent_kinds()) CHECK(agent_kind_from_string(to_string(k)) == k);
}
