#include <algorithm>

#include "oppsyn/error.hpp"
#include "oppsyn/games.hpp"

namespace oppsyn {

std::size_t StateSet::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<StateId> StateSet::members() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < bits_.size(); ++s)
    if (bits_[s]) out.push_back(s);
  return out;
}

bool StateSet::subset_of(const StateSet& other) const {
  for (StateId s = 0; s < bits_.size(); ++s)
    if (bits_[s] && !other.contains(s)) return false;
  return true;
}

StateSet StateSet::complement() const {
  StateSet out(bits_.size());
  for (StateId s = 0; s < bits_.size(); ++s) out.bits_[s] = !bits_[s];
  return out;
}

StateSet operator&(const StateSet& a, const StateSet& b) {
  StateSet out(a.universe());
  for (StateId s = 0; s < a.universe(); ++s)
    if (a.contains(s) && b.contains(s)) out.insert(s);
  return out;
}

std::span<const Edge> GameGraph::out(StateId g) const {
  if (g >= num_states())
    throw UnknownStateError("game state " + std::to_string(g) + " does not exist");
  return std::span<const Edge>(edges_).subspan(row_[g], row_[g + 1] - row_[g]);
}

std::optional<StateId> GameGraph::successor(StateId g, ActionId a) const {
  for (const Edge& e : out(g))
    if (e.action == a) return e.dst;
  return std::nullopt;
}

void GameGraph::add_state(Player owner, std::span<const Edge> out) {
  owner_.push_back(owner);
  edges_.insert(edges_.end(), out.begin(), out.end());
  row_.push_back(edges_.size());
}

namespace {

// Automaton symbol read when the arena enters each state.
std::vector<Symbol> project_labels(const TransitionSystem& ts, const Dfa& d) {
  std::vector<int> bit(d.props().size());
  for (std::size_t i = 0; i < d.props().size(); ++i) {
    auto it = std::find(ts.ap().begin(), ts.ap().end(), d.props()[i]);
    if (it == ts.ap().end()) throw UnknownAtomError(d.props()[i]);
    bit[i] = static_cast<int>(it - ts.ap().begin());
  }
  std::vector<Symbol> out(ts.num_states());
  for (StateId s = 0; s < ts.num_states(); ++s) {
    const LabelMask l = ts.label(s);
    Symbol a = 0;
    for (std::size_t i = 0; i < bit.size(); ++i)
      if (l & (LabelMask{1} << bit[i])) a |= Symbol{1} << i;
    out[s] = a;
  }
  return out;
}

DfaState step_on(const Dfa& d, DfaState q, Symbol a) {
  auto dst = d.next(q, a);
  if (!dst) {
    std::string names;
    for (const auto& n : d.names_of(a)) names += (names.empty() ? "" : ",") + n;
    throw IncompleteDfaError("automaton state " + std::to_string(q) +
                             " has no transition on the arena label {" + names + "}");
  }
  return *dst;
}

}  // namespace

ProductGame build_product(const TransitionSystem& ts, const Dfa& d) {
  const auto sym = project_labels(ts, d);
  ProductGame g;
  g.num_q_ = static_cast<std::uint32_t>(d.num_states());
  g.final_ = StateSet(ts.num_states() * d.num_states());
  std::vector<Edge> row;
  for (StateId s = 0; s < ts.num_states(); ++s) {
    for (DfaState q = 0; q < d.num_states(); ++q) {
      row.clear();
      for (const Edge& e : ts.out(s))
        row.push_back({e.action, g.id(e.dst, step_on(d, q, sym[e.dst]))});
      g.add_state(ts.owner(s), row);
      if (d.is_accepting(q)) g.final_.insert(g.id(s, q));
    }
  }
  const StateId s0 = ts.initial();
  g.initial_ = g.id(s0, step_on(d, d.initial(), sym[s0]));
  return g;
}

HypergameTS build_hypergame_ts(const TransitionSystem& ts, const Dfa& d1, const Dfa& d2) {
  const auto sym1 = project_labels(ts, d1);
  const auto sym2 = project_labels(ts, d2);
  HypergameTS h(ts, d1, d2);
  h.num_q1_ = static_cast<std::uint32_t>(d1.num_states());
  h.num_q2_ = static_cast<std::uint32_t>(d2.num_states());
  const std::size_t n = ts.num_states() * d1.num_states() * d2.num_states();
  h.final1_ = StateSet(n);
  h.final2_ = StateSet(n);
  h.final12_ = StateSet(n);
  std::vector<Edge> row;
  for (StateId s = 0; s < ts.num_states(); ++s) {
    for (DfaState q1 = 0; q1 < d1.num_states(); ++q1) {
      for (DfaState q2 = 0; q2 < d2.num_states(); ++q2) {
        row.clear();
        for (const Edge& e : ts.out(s)) {
          row.push_back({e.action, h.id(e.dst, step_on(d1, q1, sym1[e.dst]),
                                        step_on(d2, q2, sym2[e.dst]))});
        }
        h.add_state(ts.owner(s), row);
        const StateId id = h.id(s, q1, q2);
        if (d1.is_accepting(q1)) h.final1_.insert(id);
        if (d2.is_accepting(q2)) h.final2_.insert(id);
        if (d1.is_accepting(q1) && d2.is_accepting(q2)) h.final12_.insert(id);
      }
    }
  }
  const StateId s0 = ts.initial();
  h.initial_ = h.id(s0, step_on(d1, d1.initial(), sym1[s0]),
                    step_on(d2, d2.initial(), sym2[s0]));
  return h;
}

}  // namespace oppsyn
