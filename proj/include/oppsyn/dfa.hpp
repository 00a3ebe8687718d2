#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "oppsyn/formula.hpp"

namespace oppsyn {

/// A letter of the powerset alphabet, encoded as a bit mask over the
/// automaton's ordered proposition list (bit i set iff props()[i] holds).
using Symbol = std::uint32_t;
using DfaState = std::uint32_t;

/// Deterministic finite automaton over 2^props. Transitions may be partial
/// until complete_dfa() is applied.
class Dfa {
 public:
  static constexpr std::size_t kMaxProps = 16;

  Dfa(std::vector<std::string> props, std::size_t num_states, DfaState initial);

  const std::vector<std::string>& props() const { return props_; }
  std::size_t num_states() const { return accepting_.size(); }
  std::size_t num_symbols() const { return std::size_t{1} << props_.size(); }
  DfaState initial() const { return initial_; }
  std::optional<DfaState> sink() const { return sink_; }

  bool is_accepting(DfaState q) const { return accepting_.at(q); }
  std::vector<DfaState> accepting_states() const;

  std::optional<DfaState> next(DfaState q, Symbol a) const;
  /// Like next() but throws IncompleteDfaError on a missing transition.
  DfaState step(DfaState q, Symbol a) const;
  bool is_complete() const;

  /// Encodes a set of proposition names; throws UnknownAtomError for names
  /// outside props().
  Symbol symbol_of(const std::set<std::string>& names) const;
  std::set<std::string> names_of(Symbol a) const;

  void set_transition(DfaState q, Symbol a, DfaState dst);
  void clear_transition(DfaState q, Symbol a);
  void set_accepting(DfaState q, bool accepting);
  /// Designates `q` as the sink. Requires q non-accepting with a self-loop
  /// on every symbol.
  void set_sink(std::optional<DfaState> q);
  /// Marks the first non-accepting all-self-loop state as the sink, if any.
  void detect_sink();

  friend bool operator==(const Dfa& a, const Dfa& b);

 private:
  std::size_t index(DfaState q, Symbol a) const;
  void check_state(DfaState q) const;

  std::vector<std::string> props_;
  DfaState initial_;
  std::vector<bool> accepting_;
  std::vector<std::optional<DfaState>> delta_;
  std::optional<DfaState> sink_;
};

/// Routes every undefined transition to a fresh non-accepting sink.
/// Already-complete automata are returned unchanged.
Dfa complete_dfa(const Dfa& d);

/// Keeps the states reachable from the initial state through `symbols`
/// and only the transitions on those symbols. The result is usually partial.
Dfa trim_to_symbols(const Dfa& d, std::span<const Symbol> symbols);

/// True iff the run on `word` ends in an accepting state. A missing
/// transition rejects.
bool dfa_accepts(const Dfa& d, std::span<const Symbol> word);
bool dfa_accepts(const Dfa& d, const std::vector<std::set<std::string>>& word);

/// True iff there is a bijection of states mapping one automaton onto the
/// other (same props, initial, acceptance and transitions).
bool isomorphic(const Dfa& a, const Dfa& b);

struct TranslateOptions {
  std::size_t max_states = 1'000'000;
};

/// Builds the complete DFA of good prefixes by formula progression. State 0
/// is the accepting "true" state when reachable; the "false" sink, when
/// reachable, is numbered last.
Dfa to_dfa(const CosafeFormula& f, const std::vector<std::string>& ap,
           const TranslateOptions& options = {});

}  // namespace oppsyn
