#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "oppsyn/arena.hpp"
#include "oppsyn/dfa.hpp"

namespace oppsyn {

/// Dense subset of {0, ..., universe-1}.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t universe) : bits_(universe, false) {}

  std::size_t universe() const { return bits_.size(); }
  bool contains(StateId s) const { return s < bits_.size() && bits_[s]; }
  void insert(StateId s) { bits_.at(s) = true; }
  void erase(StateId s) { bits_.at(s) = false; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<StateId> members() const;

  bool subset_of(const StateSet& other) const;
  StateSet complement() const;
  friend StateSet operator&(const StateSet& a, const StateSet& b);
  friend bool operator==(const StateSet&, const StateSet&) = default;

 private:
  std::vector<bool> bits_;
};

/// Turn-based game graph with deterministic edges in compressed rows.
/// Base of the product game and the hypergame transition system.
class GameGraph {
 public:
  std::size_t num_states() const { return owner_.size(); }
  StateId initial() const { return initial_; }
  Player owner(StateId g) const { return owner_.at(g); }
  std::span<const Edge> out(StateId g) const;
  std::optional<StateId> successor(StateId g, ActionId a) const;
  std::size_t num_edges() const { return edges_.size(); }

 protected:
  GameGraph() = default;
  /// Appends the next state's row; states must be added in id order.
  void add_state(Player owner, std::span<const Edge> out);

  StateId initial_ = 0;

 private:
  std::vector<Player> owner_;
  std::vector<std::size_t> row_{0};
  std::vector<Edge> edges_;
};

/// Product of an arena with one task automaton. State (s, q) has id
/// s * |Q| + q.
class ProductGame : public GameGraph {
 public:
  StateId ts_state(StateId g) const { return g / num_q_; }
  DfaState dfa_state(StateId g) const { return g % num_q_; }
  StateId id(StateId s, DfaState q) const { return s * num_q_ + q; }
  const StateSet& final_states() const { return final_; }

 private:
  friend ProductGame build_product(const TransitionSystem& ts, const Dfa& d);
  std::uint32_t num_q_ = 1;
  StateSet final_;
};

/// Transitions update the automaton component on the label of the arena
/// successor. The automaton only needs transitions for labels the arena
/// can emit; a missing one raises IncompleteDfaError.
ProductGame build_product(const TransitionSystem& ts, const Dfa& d);

/// Arena paired with the robot's and the adversary's task automata.
/// State (s, q1, q2) has id (s * |Q1| + q1) * |Q2| + q2; the full grid is
/// kept, reachable or not.
class HypergameTS : public GameGraph {
 public:
  StateId ts_state(StateId h) const { return h / (num_q1_ * num_q2_); }
  DfaState q1(StateId h) const { return (h / num_q2_) % num_q1_; }
  DfaState q2(StateId h) const { return h % num_q2_; }
  StateId id(StateId s, DfaState q1, DfaState q2) const {
    return (s * num_q1_ + q1) * num_q2_ + q2;
  }

  const TransitionSystem& ts() const { return ts_; }
  const Dfa& dfa1() const { return dfa1_; }
  const Dfa& dfa2() const { return dfa2_; }

  /// q1 accepting.
  const StateSet& final1() const { return final1_; }
  /// q2 accepting.
  const StateSet& final2() const { return final2_; }
  const StateSet& final12() const { return final12_; }

 private:
  friend HypergameTS build_hypergame_ts(const TransitionSystem& ts, const Dfa& d1,
                                        const Dfa& d2);
  HypergameTS(TransitionSystem ts, Dfa d1, Dfa d2)
      : ts_(std::move(ts)), dfa1_(std::move(d1)), dfa2_(std::move(d2)) {}

  TransitionSystem ts_;
  Dfa dfa1_;
  Dfa dfa2_;
  std::uint32_t num_q1_ = 1;
  std::uint32_t num_q2_ = 1;
  StateSet final1_, final2_, final12_;
};

HypergameTS build_hypergame_ts(const TransitionSystem& ts, const Dfa& d1, const Dfa& d2);

struct AttractorResult {
  static constexpr std::uint32_t kNoRank = UINT32_MAX;

  StateSet winning;
  /// kNoRank outside `winning`.
  std::vector<std::uint32_t> rank;
};

/// States from which `player` forces a visit to `target`. A state without
/// outgoing edges is attracted only if it is itself a target: the play
/// stops there, so the target is never reached.
AttractorResult attractor(const GameGraph& game, const StateSet& target,
                          Player player = Player::Robot);

struct RobotStrategy {
  /// Actions staying in the winning region.
  std::vector<ActionId> safe;
  /// Actions strictly decreasing the rank.
  std::vector<ActionId> progress;
};

/// Throws StateNotWinningError if h is not in res.winning.
RobotStrategy robot_asw_strategy(const GameGraph& game, const AttractorResult& res,
                                 StateId h);

/// Actions of adversary-owned h that keep the play inside adv_win. Throws
/// StateNotInRegionError if h is not in adv_win.
std::vector<ActionId> adversary_safe_actions(const GameGraph& game, const StateSet& adv_win,
                                             StateId h);

/// The three robot winning regions of a hypergame.
struct HypergameRegions {
  AttractorResult win1;
  AttractorResult win2;
  AttractorResult win12;
};

HypergameRegions solve_hypergame(const HypergameTS& hts);

}  // namespace oppsyn
