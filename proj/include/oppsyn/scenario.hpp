#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "oppsyn/arena.hpp"
#include "oppsyn/planner.hpp"

namespace oppsyn {

/// A sub-specification: a formula, or a DFA file.
struct TaskSpec {
  std::optional<std::string> formula;
  std::optional<std::filesystem::path> dfa_path;
};

struct Scenario {
  GridworldConfig grid;
  /// Robot's specification φ1 as the adversary perceives it.
  TaskSpec phi1;
  /// The robot's hidden extra objective φ2.
  TaskSpec phi2;
  /// Restrict the automata to the labels the arena can emit.
  bool prune_automata = true;
  PayoffConfig payoff;
  AdversaryMode adversary_mode = AdversaryMode::Uniform;
  /// Seeds the adversary model (seeded-random mode only).
  std::uint64_t adversary_seed = 0;
  ValueIterationOptions value_iteration;
  /// Simulation defaults.
  std::size_t episodes = 100;
  std::uint64_t sim_seed = 0;
  std::size_t max_steps = 10'000;
};

/// Line-oriented `[section]` / `key = value` text with an ASCII `map:`
/// block; relative DFA paths are resolved against `base_dir`. Throws
/// FormatError or InvalidConfigError.
Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir = {});

Scenario load_scenario(const std::filesystem::path& path);

/// Reads a whole file; throws FormatError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

}  // namespace oppsyn
