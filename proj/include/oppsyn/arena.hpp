#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace oppsyn {

enum class Player : std::uint8_t { Robot, Adversary };

using StateId = std::uint32_t;
using ActionId = std::uint32_t;
/// Bit mask over TransitionSystem::ap().
using LabelMask = std::uint32_t;

struct Edge {
  ActionId action;
  StateId dst;
};

/// Turn-based two-player arena. Transitions are deterministic and stored
/// per state, sorted by action id.
class TransitionSystem {
 public:
  struct State {
    Player owner;
    LabelMask label;
    std::vector<Edge> out;
  };

  struct Action {
    std::string name;
    Player owner;
  };

  /// Validates action ownership, determinism, turn alternation and that
  /// the initial state belongs to the robot.
  TransitionSystem(std::vector<std::string> ap, std::vector<Action> actions,
                   std::vector<State> states, StateId initial);

  const std::vector<std::string>& ap() const { return ap_; }
  const std::vector<Action>& actions() const { return actions_; }
  std::size_t num_states() const { return states_.size(); }
  StateId initial() const { return initial_; }

  Player owner(StateId s) const { return state(s).owner; }
  LabelMask label(StateId s) const { return state(s).label; }
  std::set<std::string> label_names(StateId s) const;
  std::span<const Edge> out(StateId s) const { return state(s).out; }
  std::optional<StateId> successor(StateId s, ActionId a) const;

  /// Actions with a defined transition at `s`, ascending.
  std::vector<ActionId> enabled_actions(StateId s) const;
  /// Ids of the actions owned by `p`, ascending.
  std::vector<ActionId> actions_of(Player p) const;
  std::optional<ActionId> find_action(Player p, const std::string& name) const;

  /// Distinct labels carried by states.
  std::vector<LabelMask> occurring_labels() const;

 private:
  const State& state(StateId s) const;

  std::vector<std::string> ap_;
  std::vector<Action> actions_;
  std::vector<State> states_;
  StateId initial_;
};

// ---------------------------------------------------------------------------
// Gridworld

struct Cell {
  int x = 0;  // column, 0 = leftmost
  int y = 0;  // row, 0 = bottom
  auto operator<=>(const Cell&) const = default;
};

enum class Direction : std::uint8_t { N, S, E, W, NE, NW, SE, SW, Stay };

const char* to_string(Direction d);
std::optional<Direction> parse_direction(const std::string& name);
Cell offset(Cell c, Direction d);

/// How the two agents constrain each other.
enum class Interaction : std::uint8_t {
  /// Co-location allowed; positions never constrain moves.
  None,
  /// Neither agent may move onto the other's cell.
  Block,
};

struct GridworldConfig {
  int width = 0;
  int height = 0;
  std::set<Cell> obstacles;
  std::map<std::string, std::set<Cell>> goal_labels;
  Cell robot_start;
  Cell adversary_start;
  std::vector<Direction> robot_actions{Direction::N,  Direction::S,  Direction::E,
                                       Direction::W,  Direction::NE, Direction::NW,
                                       Direction::SE, Direction::SW};
  std::vector<Direction> adversary_actions{Direction::N, Direction::S, Direction::E,
                                           Direction::W, Direction::Stay};
  Interaction interaction = Interaction::None;
  /// When false a diagonal move also needs both orthogonal neighbours free
  /// of obstacles.
  bool corner_cutting = true;
  /// Proposition for obstacle cells. It is part of the alphabet but never
  /// holds, since obstacle cells are not states.
  std::string obstacle_label = "O";

  bool in_bounds(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width && c.y < height; }
  bool is_free(Cell c) const { return in_bounds(c) && !obstacles.contains(c); }
  /// Throws InvalidConfigError.
  void validate() const;
};

struct GridState {
  Cell robot;
  Cell adversary;
  Player turn;
  auto operator<=>(const GridState&) const = default;
};

/// Encoding used in reports, e.g. "((0,2),(4,2),0)"; turn 0 = robot to move.
std::string to_string(const GridState& g);

class Gridworld {
 public:
  explicit Gridworld(GridworldConfig config);

  const GridworldConfig& config() const { return config_; }
  const TransitionSystem& ts() const { return ts_; }
  const std::vector<Cell>& free_cells() const { return free_cells_; }

  const GridState& decode(StateId s) const { return decode_.at(s); }
  std::optional<StateId> find(const GridState& g) const;
  /// The ts state of the configured start positions (robot to move).
  StateId start() const { return ts_.initial(); }

 private:
  GridworldConfig config_;
  std::vector<Cell> free_cells_;
  std::vector<GridState> decode_;
  std::map<GridState, StateId> encode_;
  TransitionSystem ts_;
};

/// States are (robot cell, adversary cell, turn) over obstacle-free cells.
/// Moves off the grid or into an obstacle are not enabled.
Gridworld build_gridworld_ts(const GridworldConfig& config);

/// Exactly the actions with a defined transition; throws UnknownStateError.
std::vector<ActionId> enabled_actions(const TransitionSystem& ts, StateId s);

}  // namespace oppsyn
