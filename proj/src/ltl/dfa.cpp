#include "oppsyn/dfa.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "oppsyn/error.hpp"

namespace oppsyn {

Dfa::Dfa(std::vector<std::string> props, std::size_t num_states, DfaState initial)
    : props_(std::move(props)), initial_(initial), accepting_(num_states, false) {
  if (props_.size() > kMaxProps)
    throw Error("too many propositions for a DFA alphabet (" +
                std::to_string(props_.size()) + ")");
  if (num_states == 0) throw Error("a DFA needs at least one state");
  std::set<std::string> seen(props_.begin(), props_.end());
  if (seen.size() != props_.size()) throw Error("duplicate DFA proposition");
  check_state(initial);
  delta_.assign(num_states * num_symbols(), std::nullopt);
}

void Dfa::check_state(DfaState q) const {
  if (q >= num_states())
    throw UnknownStateError("DFA state " + std::to_string(q) + " out of range");
}

std::size_t Dfa::index(DfaState q, Symbol a) const {
  check_state(q);
  if (a >= num_symbols()) throw Error("symbol outside the DFA alphabet");
  return static_cast<std::size_t>(q) * num_symbols() + a;
}

std::vector<DfaState> Dfa::accepting_states() const {
  std::vector<DfaState> out;
  for (DfaState q = 0; q < num_states(); ++q)
    if (accepting_[q]) out.push_back(q);
  return out;
}

std::optional<DfaState> Dfa::next(DfaState q, Symbol a) const {
  return delta_[index(q, a)];
}

DfaState Dfa::step(DfaState q, Symbol a) const {
  auto dst = next(q, a);
  if (!dst)
    throw IncompleteDfaError("no transition from DFA state " + std::to_string(q) +
                             " on symbol " + std::to_string(a));
  return *dst;
}

bool Dfa::is_complete() const {
  return std::all_of(delta_.begin(), delta_.end(),
                     [](const auto& d) { return d.has_value(); });
}

Symbol Dfa::symbol_of(const std::set<std::string>& names) const {
  Symbol a = 0;
  for (const auto& n : names) {
    auto it = std::find(props_.begin(), props_.end(), n);
    if (it == props_.end()) throw UnknownAtomError(n);
    a |= Symbol{1} << (it - props_.begin());
  }
  return a;
}

std::set<std::string> Dfa::names_of(Symbol a) const {
  std::set<std::string> out;
  for (std::size_t i = 0; i < props_.size(); ++i)
    if (a & (Symbol{1} << i)) out.insert(props_[i]);
  return out;
}

void Dfa::set_transition(DfaState q, Symbol a, DfaState dst) {
  check_state(dst);
  delta_[index(q, a)] = dst;
}

void Dfa::clear_transition(DfaState q, Symbol a) { delta_[index(q, a)].reset(); }

void Dfa::set_accepting(DfaState q, bool accepting) {
  check_state(q);
  accepting_[q] = accepting;
}

void Dfa::set_sink(std::optional<DfaState> q) {
  if (q) {
    check_state(*q);
    if (accepting_[*q]) throw Error("a sink state must be non-accepting");
    for (Symbol a = 0; a < num_symbols(); ++a)
      if (next(*q, a) != q) throw Error("a sink state must self-loop on every symbol");
  }
  sink_ = q;
}

void Dfa::detect_sink() {
  sink_.reset();
  for (DfaState q = 0; q < num_states(); ++q) {
    if (accepting_[q]) continue;
    bool loops = true;
    for (Symbol a = 0; a < num_symbols() && loops; ++a) loops = next(q, a) == q;
    if (loops) {
      sink_ = q;
      return;
    }
  }
}

bool operator==(const Dfa& a, const Dfa& b) {
  return a.props_ == b.props_ && a.initial_ == b.initial_ &&
         a.accepting_ == b.accepting_ && a.delta_ == b.delta_ && a.sink_ == b.sink_;
}

Dfa complete_dfa(const Dfa& d) {
  if (d.is_complete()) return d;
  const auto sink = static_cast<DfaState>(d.num_states());
  Dfa out(d.props(), d.num_states() + 1, d.initial());
  for (DfaState q = 0; q < d.num_states(); ++q) {
    out.set_accepting(q, d.is_accepting(q));
    for (Symbol a = 0; a < d.num_symbols(); ++a)
      out.set_transition(q, a, d.next(q, a).value_or(sink));
  }
  for (Symbol a = 0; a < d.num_symbols(); ++a) out.set_transition(sink, a, sink);
  out.set_sink(sink);
  return out;
}

Dfa trim_to_symbols(const Dfa& d, std::span<const Symbol> symbols) {
  std::vector<bool> keep(d.num_states(), false);
  std::vector<DfaState> todo{d.initial()};
  keep[d.initial()] = true;
  while (!todo.empty()) {
    const DfaState q = todo.back();
    todo.pop_back();
    for (Symbol a : symbols) {
      auto dst = d.next(q, a);
      if (dst && !keep[*dst]) {
        keep[*dst] = true;
        todo.push_back(*dst);
      }
    }
  }
  // Surviving states keep their relative order so ids stay recognisable.
  std::vector<DfaState> renumber(d.num_states(), 0);
  std::vector<DfaState> order;
  for (DfaState q = 0; q < d.num_states(); ++q) {
    if (!keep[q]) continue;
    renumber[q] = static_cast<DfaState>(order.size());
    order.push_back(q);
  }
  Dfa out(d.props(), order.size(), renumber[d.initial()]);
  for (DfaState q = 0; q < order.size(); ++q) {
    out.set_accepting(q, d.is_accepting(order[q]));
    for (Symbol a : symbols)
      if (auto dst = d.next(order[q], a)) out.set_transition(q, a, renumber[*dst]);
  }
  if (out.is_complete()) out.detect_sink();
  return out;
}

bool dfa_accepts(const Dfa& d, std::span<const Symbol> word) {
  DfaState q = d.initial();
  for (Symbol a : word) {
    auto dst = d.next(q, a);
    if (!dst) return false;
    q = *dst;
  }
  return d.is_accepting(q);
}

bool dfa_accepts(const Dfa& d, const std::vector<std::set<std::string>>& word) {
  std::vector<Symbol> encoded;
  encoded.reserve(word.size());
  for (const auto& letter : word) encoded.push_back(d.symbol_of(letter));
  return dfa_accepts(d, encoded);
}

bool isomorphic(const Dfa& a, const Dfa& b) {
  if (a.props() != b.props() || a.num_states() != b.num_states()) return false;
  // Deterministic automata: the bijection is forced by a joint traversal
  // from the initial states. Unreachable states are matched by count only.
  std::vector<std::optional<DfaState>> map(a.num_states());
  std::vector<bool> used(b.num_states(), false);
  std::deque<DfaState> todo{a.initial()};
  map[a.initial()] = b.initial();
  used[b.initial()] = true;
  while (!todo.empty()) {
    DfaState q = todo.front();
    todo.pop_front();
    DfaState p = *map[q];
    if (a.is_accepting(q) != b.is_accepting(p)) return false;
    for (Symbol s = 0; s < a.num_symbols(); ++s) {
      auto qa = a.next(q, s);
      auto pb = b.next(p, s);
      if (qa.has_value() != pb.has_value()) return false;
      if (!qa) continue;
      if (map[*qa]) {
        if (*map[*qa] != *pb) return false;
      } else {
        if (used[*pb]) return false;
        map[*qa] = *pb;
        used[*pb] = true;
        todo.push_back(*qa);
      }
    }
  }
  return true;
}

}  // namespace oppsyn
