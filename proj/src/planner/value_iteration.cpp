#include <algorithm>
#include <cmath>

#include "oppsyn/error.hpp"
#include "oppsyn/planner.hpp"

namespace oppsyn {

namespace {

// Q-values this close to the best (relative to the largest reward) tie.
double tie_tolerance(const OpportunisticMdp& mdp) {
  double scale = 0;
  for (double r : mdp.reward) scale = std::max(scale, std::abs(r));
  return 1e-6 * std::max(scale, 1e-300);
}

bool canonical_less(ActionId a, ActionId b) {
  if (a == b) return false;
  if (a == kStop) return true;
  if (b == kStop) return false;
  return a < b;
}

}  // namespace

double q_value(const std::vector<double>& value, const MdpChoice& choice, double discount) {
  double sum = 0;
  for (const MdpOutcome& o : choice.outcomes) sum += o.prob * value[o.dst];
  return discount * sum;
}

double bellman_backup(const OpportunisticMdp& mdp, const std::vector<double>& value,
                      std::uint32_t m, double discount) {
  if (mdp.absorbing[m]) return mdp.reward[m];
  double best = 0;
  bool any = false;
  for (const MdpChoice& c : mdp.choices[m]) {
    const double q = q_value(value, c, discount);
    if (!any || q > best) best = q;
    any = true;
  }
  return best;
}

double bellman_residual(const OpportunisticMdp& mdp, const std::vector<double>& value,
                        double discount) {
  double worst = 0;
  for (std::uint32_t m = 0; m < mdp.num_states(); ++m)
    worst = std::max(worst, std::abs(bellman_backup(mdp, value, m, discount) - value[m]));
  return worst;
}

ValueIterationResult value_iteration(const OpportunisticMdp& mdp,
                                     const ValueIterationOptions& options) {
  if (!(options.discount > 0) || options.discount > 1)
    throw InvalidConfigError("discount must lie in (0, 1]");
  if (!(options.tol > 0)) throw InvalidConfigError("tolerance must be positive");

  const std::size_t n = mdp.num_states();
  ValueIterationResult res;
  res.value.assign(n, 0.0);
  for (std::uint32_t m = 0; m < n; ++m)
    if (mdp.absorbing[m]) res.value[m] = mdp.reward[m];

  std::vector<double> next(n);
  for (;;) {
    if (res.sweeps == options.max_sweeps) throw NonConvergenceError(res.sweeps, res.residual);
    double delta = 0;
    for (std::uint32_t m = 0; m < n; ++m) {
      next[m] = bellman_backup(mdp, res.value, m, options.discount);
      delta = std::max(delta, std::abs(next[m] - res.value[m]));
    }
    res.value.swap(next);
    ++res.sweeps;
    res.residual = delta;
    if (delta < options.tol) break;
  }
  res.policy = extract_policy(mdp, res.value, options.discount);
  return res;
}

std::vector<ActionId> optimal_actions(const OpportunisticMdp& mdp,
                                      const std::vector<double>& value, std::uint32_t m,
                                      double discount) {
  std::vector<ActionId> out;
  if (mdp.absorbing.at(m) || mdp.choices[m].empty()) return out;
  const double best = bellman_backup(mdp, value, m, discount);
  const double eps = tie_tolerance(mdp);
  for (const MdpChoice& c : mdp.choices[m])
    if (q_value(value, c, discount) >= best - eps) out.push_back(c.action);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

// With discount 1 an action that circles among equally valued states ties
// with one that heads for the payoff. Rank states by how many optimal
// moves they need before some terminal can be hit with positive
// probability, and pick an optimal action that lowers that rank.
Policy extract_policy(const OpportunisticMdp& mdp, const std::vector<double>& value,
                      double discount) {
  const std::size_t n = mdp.num_states();
  constexpr std::uint32_t kUnranked = UINT32_MAX;
  std::vector<std::vector<ActionId>> opt(n);
  std::vector<std::uint32_t> rank(n, kUnranked);
  for (std::uint32_t m = 0; m < n; ++m) {
    if (mdp.absorbing[m]) rank[m] = 0;
    else opt[m] = optimal_actions(mdp, value, m, discount);
  }

  auto lowers = [&](std::uint32_t m, ActionId a, std::uint32_t bound) {
    const MdpChoice* c = mdp.find_choice(m, a);
    return std::any_of(c->outcomes.begin(), c->outcomes.end(),
                       [&](const MdpOutcome& o) { return o.prob > 0 && rank[o.dst] < bound; });
  };

  for (std::uint32_t level = 1;; ++level) {
    std::vector<std::uint32_t> fresh;
    for (std::uint32_t m = 0; m < n; ++m) {
      if (rank[m] != kUnranked) continue;
      if (std::any_of(opt[m].begin(), opt[m].end(),
                      [&](ActionId a) { return lowers(m, a, level); }))
        fresh.push_back(m);
    }
    if (fresh.empty()) break;
    for (auto m : fresh) rank[m] = level;
  }

  Policy policy(n);
  for (std::uint32_t m = 0; m < n; ++m) {
    if (opt[m].empty()) continue;
    policy[m] = opt[m].front();
    if (rank[m] == kUnranked) continue;
    for (ActionId a : opt[m]) {
      if (lowers(m, a, rank[m])) {
        policy[m] = a;
        break;
      }
    }
  }
  return policy;
}

std::vector<DecisionRow> decision_table(const OpportunisticMdp& mdp,
                                        const std::vector<double>& value, std::uint32_t m) {
  if (m >= mdp.num_states()) throw UnknownStateError("MDP state out of range");
  if (mdp.absorbing[m])
    throw AbsorbingStateError("state is absorbing with value " + std::to_string(mdp.reward[m]));
  std::vector<const MdpChoice*> rows;
  for (const MdpChoice& c : mdp.choices[m]) rows.push_back(&c);
  std::sort(rows.begin(), rows.end(), [](const MdpChoice* a, const MdpChoice* b) {
    return canonical_less(a->action, b->action);
  });
  std::vector<DecisionRow> out;
  for (const MdpChoice* c : rows)
    for (const MdpOutcome& o : c->outcomes)
      out.push_back({c->action, o.dst, o.prob, value[o.dst]});
  return out;
}

OpportunityCounts count_opportunities(const OpportunisticMdp& mdp,
                                      const std::vector<double>& value) {
  OpportunityCounts out;
  for (std::uint32_t m = 0; m < mdp.num_decision_states(); ++m) {
    if (mdp.absorbing[m]) ++out.absorbing;
    else if (value[m] > 0) ++out.opportunity;
    else ++out.dead;
  }
  return out;
}

}  // namespace oppsyn
