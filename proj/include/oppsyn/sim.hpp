#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "oppsyn/planner.hpp"

namespace oppsyn {

enum class Outcome : std::uint8_t { SatisfiedPhi, SatisfiedPhi1Only, SatisfiedPhi2Only, None };

const char* to_string(Outcome o);

/// Why an episode ended.
enum class Termination : std::uint8_t {
  /// Entered a (W,W,W) or (L,W,L) state.
  Absorbed,
  /// The policy chose stop.
  Stopped,
  /// Reached a state from which no payoff is possible (value 0).
  NoOpportunity,
  StepBudget,
};

const char* to_string(Termination t);

struct TraceStep {
  StateId state;
  WinLabel label;
  Player actor;
  /// kStop for the stop decision.
  ActionId action;
};

struct Trace {
  std::vector<TraceStep> path;
  StateId final_state = 0;
  Outcome outcome = Outcome::None;
  Termination termination = Termination::StepBudget;
  double payoff = 0;
  /// Opportunistic decisions taken (robot moves and stop under the policy).
  std::size_t steps = 0;
  /// Robot moves of the winning-strategy play-out after absorption.
  std::size_t playout_steps = 0;
};

/// Everything an episode reads; all references must outlive the context.
struct SimContext {
  const HypergameTS& hts;
  const std::vector<WinLabel>& labels;
  const HypergameRegions& regions;
  const AdversaryModel& adversary;
  const OpportunisticMdp& mdp;
  const Policy& policy;
  const std::vector<double>& value;
};

struct SimOptions {
  std::size_t max_steps = 10'000;
  /// After absorption, play the matching winning strategy until its final
  /// set is visited. The payoff is the same either way.
  bool playout = true;
  /// Record every move in Trace::path.
  bool record_path = true;
};

/// Throws Error if `start` is not robot-owned.
Trace simulate_episode(const SimContext& ctx, StateId start, std::uint64_t seed,
                       const SimOptions& options = {});

struct RunStats {
  std::size_t episodes = 0;
  /// Indexed by Outcome.
  std::array<std::size_t, 4> outcomes{};
  double mean_payoff = 0;
  /// Standard error of the mean payoff.
  double payoff_stderr = 0;
  double min_payoff = 0;
  double max_payoff = 0;
  double mean_steps = 0;
  std::size_t max_steps = 0;
  std::size_t budget_hits = 0;
};

/// Episode i uses seed splitmix64(seed + i).
std::uint64_t episode_seed(std::uint64_t batch_seed, std::size_t i);

RunStats batch_simulate(const SimContext& ctx, StateId start, std::size_t n, std::uint64_t seed,
                        const SimOptions& options = {}, std::vector<Trace>* traces = nullptr);

}  // namespace oppsyn
