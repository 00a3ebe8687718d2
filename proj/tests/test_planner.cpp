#include <doctest.h>

#include <cmath>
#include <map>

#include "oppsyn/error.hpp"
#include "oppsyn/pipeline.hpp"
#include "oppsyn/planner.hpp"
#include "support/oracles.hpp"

using namespace oppsyn;

namespace {

// Hand-assembled decision process: states 0..n-1, no hypergame behind it.
struct Toy {
  OpportunisticMdp mdp;

  explicit Toy(std::size_t n) {
    mdp.choices.resize(n);
    mdp.reward.assign(n, 0);
    mdp.absorbing.assign(n, false);
    mdp.stuck.assign(n, false);
    mdp.sink1 = mdp.sink = OpportunisticMdp::kNone;
  }
  Toy& terminal(std::uint32_t m, double r) {
    mdp.absorbing[m] = true;
    mdp.reward[m] = r;
    return *this;
  }
  Toy& choice(std::uint32_t m, ActionId a, std::vector<MdpOutcome> outcomes) {
    mdp.choices[m].push_back({a, 0, std::move(outcomes)});
    return *this;
  }
};

struct CaseStudy {
  Solution sol;
  Plan plan;
  CaseStudy() : sol(solve_scenario(oracle::load_named_scenario("case_study.scn"))), plan(plan_scenario(sol)) {}
};

const CaseStudy& cs() {
  static const CaseStudy c;
  return c;
}

std::vector<ActionId> actions_of(const std::vector<MdpChoice>& choices) {
  std::vector<ActionId> out;
  for (const auto& c : choices) out.push_back(c.action);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("payoff configuration") {
  CHECK_NOTHROW(PayoffConfig::from_parts(200, 100).validate());
  CHECK(PayoffConfig::from_parts(200, 100).r == 300);
  CHECK_THROWS_AS((PayoffConfig{2, 1, 2.5}).validate(), InvalidConfigError);
  CHECK_THROWS_AS((PayoffConfig{0, 1, 2}).validate(), InvalidConfigError);
  CHECK_NOTHROW((PayoffConfig{2, 1, 4}).validate());
}

TEST_CASE("toy: a gamble against a sure partial payoff") {
  // 0: stop -> 1 (worth 2) or gamble -> 2 (worth 5) / 3 (nothing) evenly.
  Toy t(4);
  t.terminal(1, 2).terminal(2, 5).terminal(3, 0);
  t.choice(0, kStop, {{1, 1.0}}).choice(0, 0, {{2, 0.5}, {3, 0.5}});
  const auto res = value_iteration(t.mdp);
  CHECK(res.value[0] == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(res.policy[0] == std::optional<ActionId>{0});
  CHECK_FALSE(res.policy[1]);

  t.mdp.choices[0][1].outcomes = {{2, 0.3}, {3, 0.7}};
  const auto res2 = value_iteration(t.mdp);
  CHECK(std::abs(res2.value[0] - 2.0) < 1e-9);
  CHECK(res2.policy[0] == std::optional<ActionId>{kStop});
}

TEST_CASE("toy: discounted retry loop has the geometric closed form") {
  const double p = 0.5, gamma = 0.9, reward = 10;
  Toy t(2);
  t.terminal(1, reward).choice(0, 0, {{0, p}, {1, 1 - p}});
  const auto res = value_iteration(t.mdp, {gamma, 1e-13, 100'000});
  const double closed = gamma * (1 - p) * reward / (1 - gamma * p);
  CHECK(std::abs(res.value[0] - closed) < 1e-9);
  CHECK(bellman_residual(t.mdp, res.value, gamma) < 1e-9);

  CHECK_THROWS_AS(value_iteration(t.mdp, {gamma, 1e-13, 3}), NonConvergenceError);
  CHECK_THROWS_AS(value_iteration(t.mdp, {0.0, 1e-9, 10}), InvalidConfigError);
  CHECK_THROWS_AS(value_iteration(t.mdp, {1.5, 1e-9, 10}), InvalidConfigError);
}

TEST_CASE("toy: undiscounted chain of coin flips") {
  // State k moves to k+1 with probability q and to the payoff with 1-q;
  // the last state always pays. V = reward everywhere; losing mass only
  // if a zero-reward terminal is involved.
  const double q = 0.25;
  Toy t(5);
  t.terminal(3, 8).terminal(4, 0);
  t.choice(0, 0, {{1, q}, {3, 1 - q}});
  t.choice(1, 0, {{2, q}, {4, 1 - q}});
  t.choice(2, 0, {{3, 1.0}});
  const auto res = value_iteration(t.mdp);
  CHECK(std::abs(res.value[2] - 8) < 1e-9);
  CHECK(std::abs(res.value[1] - q * 8) < 1e-9);
  CHECK(std::abs(res.value[0] - (q * q * 8 + (1 - q) * 8)) < 1e-9);
}

TEST_CASE("toy: ties at discount one prefer moves towards a terminal") {
  // 0 <-> 1 forever, or leave from 1 for the payoff: both worth 7.
  Toy t(3);
  t.terminal(2, 7);
  t.choice(0, 0, {{1, 1.0}});
  t.choice(1, 0, {{0, 1.0}}).choice(1, 1, {{2, 1.0}});
  const auto res = value_iteration(t.mdp);
  CHECK(res.value[0] == doctest::Approx(7));
  CHECK(optimal_actions(t.mdp, res.value, 1, 1.0) == std::vector<ActionId>{0, 1});
  CHECK(res.policy[1] == std::optional<ActionId>{1});
  CHECK(res.policy[0] == std::optional<ActionId>{0});
}

TEST_CASE("decision process is composed from the arena and the adversary") {
  const auto& sol = cs().sol;
  const auto& mdp = cs().plan.mdp;
  const auto& adv = cs().plan.adversary;
  const auto& hts = sol.hts;
  const auto& labels = sol.labels;
  const double r1 = 200, r2 = 100, r = 300;

  std::size_t robot_states = 0;
  for (StateId h = 0; h < hts.num_states(); ++h) robot_states += hts.owner(h) == Player::Robot;
  CHECK(mdp.num_decision_states() == robot_states);
  CHECK(mdp.num_decision_states() == 1600);
  CHECK(mdp.num_states() == 1602);
  CHECK(mdp.reward[mdp.sink1] == r1);
  CHECK(mdp.reward[mdp.sink] == std::max(r1, r2));

  for (std::uint32_t m = 0; m < mdp.num_decision_states(); ++m) {
    const StateId h = mdp.hts_state[m];
    const WinLabel l = labels[h];
    CHECK(mdp.index[h] == m);
    CHECK(mdp.label[m] == l);

    if (l == kWWW || l == kLWL) {
      CHECK(mdp.absorbing[m]);
      CHECK(mdp.choices[m].empty());
      CHECK(mdp.reward[m] == (l == kWWW ? r : r2));
      continue;
    }
    CHECK_FALSE(mdp.absorbing[m]);

    // Enabled set by label.
    std::vector<ActionId> want;
    if (l == kWLL || l == kWWL) want.push_back(kStop);
    for (const Edge& e : hts.out(h)) {
      if (hts.out(e.dst).empty()) continue;
      const WinLabel mid = labels[e.dst];
      const bool ok = l == kLLL ? true : l == kWLL ? mid.win1 : !(mid == kLLL);
      if (ok) want.push_back(e.action);
    }
    std::sort(want.begin(), want.end());
    CHECK(actions_of(mdp.choices[m]) == want);
    CHECK(mdp.stuck[m] == (l == kLLL && want.empty()));

    for (const MdpChoice& c : mdp.choices[m]) {
      if (c.action == kStop) {
        REQUIRE(c.outcomes.size() == 1);
        CHECK(c.outcomes[0].dst == (l == kWLL ? mdp.sink1 : mdp.sink));
        CHECK(c.outcomes[0].prob == 1.0);
        continue;
      }
      const StateId mid = *hts.successor(h, c.action);
      CHECK(c.mid == mid);
      std::map<std::uint32_t, double> expect;
      const Distribution& d = adv.response(mid);
      for (std::size_t i = 0; i < d.actions.size(); ++i)
        expect[mdp.index[*hts.successor(mid, d.actions[i])]] += d.probs[i];
      REQUIRE(c.outcomes.size() == expect.size());
      double total = 0;
      auto it = expect.begin();
      for (const MdpOutcome& o : c.outcomes) {
        CHECK(o.dst == it->first);
        CHECK(std::abs(o.prob - it->second) < 1e-12);
        total += o.prob;
        ++it;
      }
      CHECK(std::abs(total - 1) < 1e-12);
    }
  }
}

TEST_CASE("adversary plays safe where it believes it wins, uniformly otherwise") {
  const auto& sol = cs().sol;
  const auto& hts = sol.hts;
  const auto& win1 = sol.regions.win1.winning;
  const auto& adv = cs().plan.adversary;
  for (StateId h = 0; h < hts.num_states(); ++h) {
    if (hts.owner(h) != Player::Adversary || hts.out(h).empty()) continue;
    const Distribution& d = adv.response(h);
    std::vector<ActionId> support;
    for (const Edge& e : hts.out(h))
      if (win1.contains(h) || !win1.contains(e.dst)) support.push_back(e.action);
    CHECK(d.actions == support);
    for (double p : d.probs) CHECK(p == doctest::Approx(1.0 / support.size()));
    // Inside Win(phi1) every response stays inside.
    if (win1.contains(h))
      for (const Edge& e : hts.out(h)) CHECK(win1.contains(e.dst));
    CHECK(adv.in_win1[h] == win1.contains(h));
  }
}

TEST_CASE("seeded random adversary is a reproducible full-support distribution") {
  const auto& sol = cs().sol;
  const auto a = build_adversary_model(sol.hts, sol.labels, AdversaryMode::SeededRandom, 5);
  const auto b = build_adversary_model(sol.hts, sol.labels, AdversaryMode::SeededRandom, 5);
  const auto c = build_adversary_model(sol.hts, sol.labels, AdversaryMode::SeededRandom, 6);
  bool differs = false;
  for (StateId h = 0; h < sol.hts.num_states(); ++h) {
    const auto& d = a.sigma_l[h];
    CHECK(d.probs == b.sigma_l[h].probs);
    if (d.empty()) continue;
    CHECK(d.actions.size() == sol.hts.out(h).size());
    double total = 0;
    for (double p : d.probs) {
      CHECK(p > 0);
      total += p;
    }
    CHECK(std::abs(total - 1) < 1e-12);
    differs = differs || d.probs != c.sigma_l[h].probs;
  }
  CHECK(differs);
}

TEST_CASE("an adversary without a safe move is reported") {
  const auto& sol = cs().sol;
  std::vector<WinLabel> labels(sol.hts.num_states(), kWLL);
  StateId target = 0;
  while (sol.hts.owner(target) != Player::Adversary || sol.hts.out(target).empty()) ++target;
  labels[target] = kLLL;
  CHECK_THROWS_AS(build_adversary_model(sol.hts, labels, AdversaryMode::Uniform, 0),
                  EmptySafeSetError);
}

TEST_CASE("stuck states can be rejected") {
  const auto& sol = cs().sol;
  const auto& mdp = cs().plan.mdp;
  const bool any_stuck = std::find(mdp.stuck.begin(), mdp.stuck.end(), true) != mdp.stuck.end();
  REQUIRE(any_stuck);
  CHECK_THROWS_AS(build_mdp(sol.hts, sol.labels, cs().plan.adversary, sol.scenario.payoff,
                            MdpOptions{true}),
                  NoEnabledActionError);
}

TEST_CASE("value function properties") {
  const auto& mdp = cs().plan.mdp;
  const auto& res = cs().plan.result;
  const auto& v = res.value;
  const double r1 = 200, r2 = 100, r = 300;
  CHECK(bellman_residual(mdp, v, 1.0) < 1e-9);
  for (std::uint32_t m = 0; m < mdp.num_states(); ++m) {
    CHECK(std::abs(bellman_backup(mdp, v, m, 1.0) - v[m]) < 1e-9);
    CHECK(v[m] >= 0);
    CHECK(v[m] <= r + 1e-9);
    if (mdp.absorbing[m]) {
      CHECK(v[m] == mdp.reward[m]);
      CHECK_FALSE(res.policy[m]);
      continue;
    }
    if (mdp.label[m] == kWLL) CHECK(v[m] >= r1 - 1e-9);
    if (mdp.label[m] == kWWL) CHECK(v[m] >= std::max(r1, r2) - 1e-9);
    if (mdp.stuck[m]) {
      CHECK_FALSE(res.policy[m]);
      CHECK(v[m] == 0);
      continue;
    }
    REQUIRE(res.policy[m]);
    CHECK(mdp.find_choice(m, *res.policy[m]) != nullptr);
    const auto opt = optimal_actions(mdp, v, m, 1.0);
    CHECK(std::find(opt.begin(), opt.end(), *res.policy[m]) != opt.end());
  }
}

TEST_CASE("sweeps never decrease the values at discount one") {
  const auto& mdp = cs().plan.mdp;
  std::vector<double> v(mdp.num_states(), 0.0);
  for (std::uint32_t m = 0; m < mdp.num_states(); ++m)
    if (mdp.absorbing[m]) v[m] = mdp.reward[m];
  for (int sweep = 0; sweep < 60; ++sweep) {
    std::vector<double> next(v.size());
    for (std::uint32_t m = 0; m < mdp.num_states(); ++m) next[m] = bellman_backup(mdp, v, m, 1.0);
    for (std::uint32_t m = 0; m < mdp.num_states(); ++m) CHECK(next[m] >= v[m] - 1e-12);
    v.swap(next);
  }
}

TEST_CASE("scaling every payoff scales values and keeps the argmax sets") {
  const auto& sol = cs().sol;
  const auto& base = cs().plan;
  for (double c : {0.5, 3.0}) {
    CAPTURE(c);
    const auto mdp = build_mdp(sol.hts, sol.labels, base.adversary, sol.scenario.payoff.scaled(c));
    const auto res = value_iteration(mdp);
    for (std::uint32_t m = 0; m < mdp.num_states(); ++m) {
      CHECK(std::abs(res.value[m] - c * base.result.value[m]) < 1e-6);
      CHECK(optimal_actions(mdp, res.value, m, 1.0) ==
            optimal_actions(base.mdp, base.result.value, m, 1.0));
      CHECK(res.policy[m] == base.result.policy[m]);
    }
  }
}

TEST_CASE("opportunity counts") {
  const auto& sol = cs().sol;
  const auto& mdp = cs().plan.mdp;
  const auto& v = cs().plan.result.value;
  const OpportunityCounts c = count_opportunities(mdp, v);
  CHECK(c.absorbing + c.opportunity + c.dead == 1600);

  std::size_t absorbing = 0, opportunity = 0, dead = 0;
  for (StateId h = 0; h < sol.hts.num_states(); ++h) {
    if (sol.hts.owner(h) != Player::Robot) continue;
    const WinLabel l = sol.labels[h];
    if (l == kWWW || l == kLWL) ++absorbing;
    else if (v[mdp.index[h]] > 0) ++opportunity;
    else ++dead;
  }
  CHECK(c.absorbing == absorbing);
  CHECK(c.opportunity == opportunity);
  CHECK(c.dead == dead);

  Toy t(2);
  t.terminal(0, 1).terminal(1, 2);
  t.mdp.hts_state = {0, 1};
  const auto all = count_opportunities(t.mdp, {1, 2});
  CHECK(all.absorbing == 2);
  CHECK(all.opportunity + all.dead == 0);
}

TEST_CASE("decision table at the initial state") {
  const auto& sol = cs().sol;
  const auto& mdp = cs().plan.mdp;
  const auto& v = cs().plan.result.value;
  const std::uint32_t m = mdp.index_of(sol.hts.initial());
  const auto rows = decision_table(mdp, v, m);
  std::vector<std::string> acts;
  std::map<ActionId, double> mass;
  for (const auto& row : rows) {
    if (acts.empty() || acts.back() != mdp.action_name(row.action))
      acts.push_back(mdp.action_name(row.action));
    mass[row.action] += row.prob;
    CHECK(row.value == v[row.successor]);
  }
  CHECK(acts == std::vector<std::string>{"stop", "N", "E", "NE"});
  for (auto [a, p] : mass) CHECK(p == doctest::Approx(1.0));
  CHECK(v[m] == doctest::Approx(300));

  std::uint32_t absorbing = 0;
  while (!mdp.absorbing[absorbing]) ++absorbing;
  CHECK_THROWS_AS(decision_table(mdp, v, absorbing), AbsorbingStateError);
  CHECK_THROWS_AS(mdp.index_of(*sol.hts.successor(sol.hts.initial(), 0)), UnknownStateError);
}
