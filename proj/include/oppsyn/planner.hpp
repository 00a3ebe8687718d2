#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oppsyn/games.hpp"
#include "oppsyn/labeling.hpp"

namespace oppsyn {

struct PayoffConfig {
  /// Payoff for satisfying only φ1 (the robot's goal as the adversary sees it).
  double r1 = 0;
  /// Payoff for satisfying only φ2.
  double r2 = 0;
  /// Payoff for satisfying both.
  double r = 0;

  static PayoffConfig from_parts(double r1, double r2) { return {r1, r2, r1 + r2}; }
  /// Throws InvalidConfigError unless all payoffs are positive and r >= r1 + r2.
  void validate() const;
  PayoffConfig scaled(double c) const { return {r1 * c, r2 * c, r * c}; }
};

enum class AdversaryMode : std::uint8_t { Uniform, SeededRandom };

const char* to_string(AdversaryMode m);

struct Distribution {
  std::vector<ActionId> actions;
  std::vector<double> probs;

  bool empty() const { return actions.empty(); }
};

/// Stochastic adversary. Where the adversary believes it wins the game for
/// φ1 (first label component L) it plays sigma_w, uniform over the actions
/// that keep the play out of Win(φ1); elsewhere it plays sigma_l.
struct AdversaryModel {
  AdversaryMode mode = AdversaryMode::Uniform;
  std::uint64_t seed = 0;
  /// Indexed by hypergame state; empty where the other one applies, on
  /// robot-owned states, and on adversary states without moves.
  std::vector<Distribution> sigma_w;
  std::vector<Distribution> sigma_l;
  std::vector<bool> in_win1;

  const Distribution& response(StateId h) const {
    return in_win1.at(h) ? sigma_l.at(h) : sigma_w.at(h);
  }
};

/// Throws EmptySafeSetError when an adversary state outside Win(φ1) has
/// moves but none of them stays outside.
AdversaryModel build_adversary_model(const HypergameTS& hts, const std::vector<WinLabel>& labels,
                                     AdversaryMode mode, std::uint64_t seed);

/// Pseudo-action for quitting with the partial payoff.
inline constexpr ActionId kStop = UINT32_MAX;

struct MdpOutcome {
  std::uint32_t dst;
  double prob;
};

struct MdpChoice {
  ActionId action;
  /// Adversary-owned hypergame state after the robot's move (unused for stop).
  StateId mid;
  /// Sorted by destination.
  std::vector<MdpOutcome> outcomes;
};

struct MdpOptions {
  /// Raise NoEnabledActionError for (L,L,L) states without any usable move
  /// instead of treating them as value-0 dead ends.
  bool reject_stuck_states = false;
};

/// Decision process over the robot-owned hypergame states (in id order)
/// followed by the terminals sink1 and sink.
struct OpportunisticMdp {
  std::vector<StateId> hts_state;
  /// Hypergame state -> MDP index, kNone for adversary-owned states.
  std::vector<std::uint32_t> index;
  std::vector<WinLabel> label;
  std::vector<std::vector<MdpChoice>> choices;
  std::vector<double> reward;
  std::vector<bool> absorbing;
  /// (L,L,L) states with no usable move.
  std::vector<bool> stuck;
  std::vector<std::string> action_names;
  PayoffConfig payoff;
  std::uint32_t sink1 = 0;
  std::uint32_t sink = 0;

  static constexpr std::uint32_t kNone = UINT32_MAX;

  std::size_t num_states() const { return reward.size(); }
  std::size_t num_decision_states() const { return hts_state.size(); }
  bool is_sink(std::uint32_t m) const { return m == sink1 || m == sink; }
  std::string action_name(ActionId a) const;
  /// Throws UnknownStateError for adversary-owned or out-of-range states.
  std::uint32_t index_of(StateId h) const;
  const MdpChoice* find_choice(std::uint32_t m, ActionId a) const;
};

OpportunisticMdp build_mdp(const HypergameTS& hts, const std::vector<WinLabel>& labels,
                           const AdversaryModel& adv, const PayoffConfig& pay,
                           const MdpOptions& options = {});

struct ValueIterationOptions {
  double discount = 1.0;
  double tol = 1e-9;
  std::size_t max_sweeps = 100'000;
};

/// Per MDP state; nullopt on absorbing and stuck states.
using Policy = std::vector<std::optional<ActionId>>;

struct ValueIterationResult {
  std::vector<double> value;
  Policy policy;
  std::size_t sweeps = 0;
  /// Sup-norm change of the last sweep.
  double residual = 0;
};

/// Synchronous sweeps from V = 0 until the sup-norm change drops below tol.
/// Throws NonConvergenceError after max_sweeps.
ValueIterationResult value_iteration(const OpportunisticMdp& mdp,
                                     const ValueIterationOptions& options = {});

double q_value(const std::vector<double>& value, const MdpChoice& choice, double discount);

/// Bellman update of one state under `value`.
double bellman_backup(const OpportunisticMdp& mdp, const std::vector<double>& value,
                      std::uint32_t m, double discount);

/// max_m |backup(m) - value(m)|.
double bellman_residual(const OpportunisticMdp& mdp, const std::vector<double>& value,
                        double discount);

/// Actions whose Q-value is within a small tolerance (relative to r) of
/// the best, in canonical order: stop, then arena actions by id.
std::vector<ActionId> optimal_actions(const OpportunisticMdp& mdp,
                                      const std::vector<double>& value, std::uint32_t m,
                                      double discount);

/// Greedy policy. Among optimal actions it prefers ones that make progress
/// towards a terminal, so that ties never produce a policy that circles
/// forever; remaining ties go to the first action in canonical order.
Policy extract_policy(const OpportunisticMdp& mdp, const std::vector<double>& value,
                      double discount);

struct DecisionRow {
  ActionId action;
  std::uint32_t successor;
  double prob;
  double value;
};

/// One row per (enabled action, successor). Throws AbsorbingStateError.
std::vector<DecisionRow> decision_table(const OpportunisticMdp& mdp,
                                        const std::vector<double>& value, std::uint32_t m);

struct OpportunityCounts {
  std::size_t absorbing = 0;
  std::size_t opportunity = 0;
  std::size_t dead = 0;
};

/// Over the decision states (sinks excluded).
OpportunityCounts count_opportunities(const OpportunisticMdp& mdp,
                                      const std::vector<double>& value);

}  // namespace oppsyn
