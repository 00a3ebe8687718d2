#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "oppsyn/games.hpp"
#include "oppsyn/io.hpp"
#include "oppsyn/labeling.hpp"
#include "oppsyn/planner.hpp"
#include "oppsyn/scenario.hpp"
#include "oppsyn/sim.hpp"

namespace oppsyn {

/// Compiles a formula over the atoms it mentions, ordered as in `ap`.
/// Throws UnknownAtomError for atoms outside `ap`.
Dfa compile_formula(std::string_view text, const std::vector<std::string>& ap);

/// Everything up to the win-label partition.
struct Solution {
  Scenario scenario;
  Gridworld world;
  HypergameTS hts;
  HypergameRegions regions;
  std::vector<WinLabel> labels;
  PartitionSummary partition;
  /// Identifies the solved model; embedded in value and policy files.
  std::string checksum;

  const Dfa& dfa1() const { return hts.dfa1(); }
  const Dfa& dfa2() const { return hts.dfa2(); }
};

Solution solve_scenario(const Scenario& scenario);

struct Plan {
  AdversaryModel adversary;
  OpportunisticMdp mdp;
  ValueIterationResult result;
};

Plan plan_scenario(const Solution& solution);

/// "(((rx,ry),(ex,ey),turn),q1,q2)".
std::string state_name(const Solution& solution, StateId h);
/// Accepts state_name() output and "init". Throws UnknownStateError.
StateId parse_state_name(const Solution& solution, std::string_view text);

/// Name of an MDP state: a hypergame state name, "sink1" or "sink".
std::string mdp_state_name(const Solution& solution, const OpportunisticMdp& mdp,
                           std::uint32_t m);

StateTable value_table(const Solution& solution, const Plan& plan);
/// Rows of value_table() that carry an action.
StateTable policy_table(const Solution& solution, const Plan& plan);

/// Policy and values read back from a policy file. Throws
/// ChecksumMismatchError if the file belongs to another model.
struct LoadedPolicy {
  Policy policy;
  std::vector<double> value;
};

LoadedPolicy load_policy(const Solution& solution, const OpportunisticMdp& mdp,
                         const StateTable& table);

}  // namespace oppsyn
