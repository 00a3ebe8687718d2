#include <algorithm>
#include <map>

#include "oppsyn/error.hpp"
#include "oppsyn/planner.hpp"

namespace oppsyn {

std::string OpportunisticMdp::action_name(ActionId a) const {
  return a == kStop ? "stop" : action_names.at(a);
}

std::uint32_t OpportunisticMdp::index_of(StateId h) const {
  if (h >= index.size() || index[h] == kNone)
    throw UnknownStateError("hypergame state " + std::to_string(h) +
                            " is not a robot decision state");
  return index[h];
}

const MdpChoice* OpportunisticMdp::find_choice(std::uint32_t m, ActionId a) const {
  for (const MdpChoice& c : choices.at(m))
    if (c.action == a) return &c;
  return nullptr;
}

OpportunisticMdp build_mdp(const HypergameTS& hts, const std::vector<WinLabel>& labels,
                           const AdversaryModel& adv, const PayoffConfig& pay,
                           const MdpOptions& options) {
  pay.validate();
  const std::size_t n = hts.num_states();
  if (labels.size() != n || adv.in_win1.size() != n)
    throw Error("labels or adversary model do not match the hypergame");

  OpportunisticMdp mdp;
  mdp.payoff = pay;
  for (const auto& a : hts.ts().actions()) mdp.action_names.push_back(a.name);
  mdp.index.assign(n, OpportunisticMdp::kNone);
  for (StateId h = 0; h < n; ++h) {
    if (hts.owner(h) != Player::Robot) continue;
    mdp.index[h] = static_cast<std::uint32_t>(mdp.hts_state.size());
    mdp.hts_state.push_back(h);
    mdp.label.push_back(labels[h]);
  }
  const auto decisions = static_cast<std::uint32_t>(mdp.hts_state.size());
  mdp.sink1 = decisions;
  mdp.sink = decisions + 1;
  mdp.choices.resize(decisions + 2);
  mdp.reward.assign(decisions + 2, 0.0);
  mdp.absorbing.assign(decisions + 2, false);
  mdp.stuck.assign(decisions + 2, false);
  mdp.reward[mdp.sink1] = pay.r1;
  mdp.reward[mdp.sink] = std::max(pay.r1, pay.r2);
  mdp.absorbing[mdp.sink1] = mdp.absorbing[mdp.sink] = true;

  auto compose = [&](const Edge& move) {
    MdpChoice c{move.action, move.dst, {}};
    std::map<std::uint32_t, double> dist;
    const Distribution& sigma = adv.response(move.dst);
    for (std::size_t i = 0; i < sigma.actions.size(); ++i) {
      const auto next = hts.successor(move.dst, sigma.actions[i]);
      if (!next) throw Error("adversary distribution uses a disabled action");
      dist[mdp.index.at(*next)] += sigma.probs[i];
    }
    for (auto [dst, p] : dist) c.outcomes.push_back({dst, p});
    return c;
  };

  for (std::uint32_t m = 0; m < decisions; ++m) {
    const StateId h = mdp.hts_state[m];
    const WinLabel l = labels[h];
    if (l == kLWL || l == kWWW) {
      mdp.absorbing[m] = true;
      mdp.reward[m] = l == kWWW ? pay.r : pay.r2;
      continue;
    }
    auto& row = mdp.choices[m];
    if (l == kWLL) row.push_back({kStop, 0, {{mdp.sink1, 1.0}}});
    if (l == kWWL) row.push_back({kStop, 0, {{mdp.sink, 1.0}}});
    for (const Edge& e : hts.out(h)) {
      // A move into an adversary state without moves would end the play.
      if (hts.out(e.dst).empty()) continue;
      const WinLabel mid = labels[e.dst];
      if (l == kWLL && !mid.win1) continue;
      if (l == kWWL && mid == kLLL) continue;
      row.push_back(compose(e));
    }
    if (row.empty()) {
      if (options.reject_stuck_states)
        throw NoEnabledActionError("hypergame state " + std::to_string(h) + " with label " +
                                   l.to_string() + " has no enabled action");
      mdp.stuck[m] = true;
    }
  }
  return mdp;
}

}  // namespace oppsyn
