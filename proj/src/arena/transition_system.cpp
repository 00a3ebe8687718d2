#include <algorithm>

#include "oppsyn/arena.hpp"
#include "oppsyn/error.hpp"

namespace oppsyn {

TransitionSystem::TransitionSystem(std::vector<std::string> ap,
                                   std::vector<Action> actions,
                                   std::vector<State> states, StateId initial)
    : ap_(std::move(ap)),
      actions_(std::move(actions)),
      states_(std::move(states)),
      initial_(initial) {
  if (ap_.size() > 32) throw InvalidConfigError("at most 32 atomic propositions");
  if (initial_ >= states_.size()) throw InvalidConfigError("initial state out of range");
  if (states_[initial_].owner != Player::Robot)
    throw InvalidConfigError("the initial state must be robot-owned");
  for (std::size_t s = 0; s < states_.size(); ++s) {
    auto& st = states_[s];
    std::sort(st.out.begin(), st.out.end(),
              [](const Edge& a, const Edge& b) { return a.action < b.action; });
    for (std::size_t i = 0; i < st.out.size(); ++i) {
      const Edge& e = st.out[i];
      if (e.action >= actions_.size() || e.dst >= states_.size())
        throw InvalidConfigError("transition out of range at state " + std::to_string(s));
      if (actions_[e.action].owner != st.owner)
        throw InvalidConfigError("action '" + actions_[e.action].name +
                                 "' does not belong to the owner of state " +
                                 std::to_string(s));
      if (states_[e.dst].owner == st.owner)
        throw InvalidConfigError("transition from state " + std::to_string(s) +
                                 " does not alternate turns");
      if (i > 0 && st.out[i - 1].action == e.action)
        throw InvalidConfigError("nondeterministic transition at state " + std::to_string(s));
    }
  }
}

const TransitionSystem::State& TransitionSystem::state(StateId s) const {
  if (s >= states_.size())
    throw UnknownStateError("arena state " + std::to_string(s) + " does not exist");
  return states_[s];
}

std::set<std::string> TransitionSystem::label_names(StateId s) const {
  std::set<std::string> out;
  const LabelMask l = label(s);
  for (std::size_t i = 0; i < ap_.size(); ++i)
    if (l & (LabelMask{1} << i)) out.insert(ap_[i]);
  return out;
}

std::optional<StateId> TransitionSystem::successor(StateId s, ActionId a) const {
  const auto& out = state(s).out;
  auto it = std::lower_bound(out.begin(), out.end(), a,
                             [](const Edge& e, ActionId x) { return e.action < x; });
  if (it == out.end() || it->action != a) return std::nullopt;
  return it->dst;
}

std::vector<ActionId> TransitionSystem::enabled_actions(StateId s) const {
  std::vector<ActionId> out;
  for (const Edge& e : state(s).out) out.push_back(e.action);
  return out;
}

std::vector<ActionId> TransitionSystem::actions_of(Player p) const {
  std::vector<ActionId> out;
  for (ActionId a = 0; a < actions_.size(); ++a)
    if (actions_[a].owner == p) out.push_back(a);
  return out;
}

std::optional<ActionId> TransitionSystem::find_action(Player p, const std::string& name) const {
  for (ActionId a = 0; a < actions_.size(); ++a)
    if (actions_[a].owner == p && actions_[a].name == name) return a;
  return std::nullopt;
}

std::vector<LabelMask> TransitionSystem::occurring_labels() const {
  std::vector<LabelMask> out;
  for (const auto& st : states_) out.push_back(st.label);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ActionId> enabled_actions(const TransitionSystem& ts, StateId s) {
  return ts.enabled_actions(s);
}

}  // namespace oppsyn
