#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oppsyn/dfa.hpp"

namespace oppsyn {

/// Text form:
///   dfa <nstates> <initial> ; props: A,O
///   <src> <symbol> <dst>       (symbol: comma-separated props, "-" if empty)
///   accepting: <ids>
std::string write_dfa(const Dfa& d);
/// Throws FormatError. A complete automaton gets its sink detected.
Dfa read_dfa(std::string_view text);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

/// One row of a value or policy file.
struct StateRow {
  /// Hypergame state id; empty for the terminal sinks.
  std::optional<std::uint32_t> state_id;
  std::string state;
  std::string label;
  double value = 0;
  std::string action;
};

struct StateTable {
  std::string checksum;
  std::vector<StateRow> rows;
};

/// Floats are written with 6 decimals.
std::string write_state_table(const StateTable& table);
/// Throws FormatError.
StateTable read_state_table(std::string_view text);

}  // namespace oppsyn
