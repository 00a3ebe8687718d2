#include <algorithm>

#include "oppsyn/arena.hpp"
#include "oppsyn/error.hpp"

namespace oppsyn {

namespace {

constexpr const char* kDirectionNames[] = {"N", "S", "E", "W", "NE", "NW", "SE", "SW", "STAY"};

std::string cell_string(Cell c) {
  return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

}  // namespace

const char* to_string(Direction d) { return kDirectionNames[static_cast<int>(d)]; }

std::optional<Direction> parse_direction(const std::string& name) {
  for (int i = 0; i <= static_cast<int>(Direction::Stay); ++i)
    if (name == kDirectionNames[i]) return static_cast<Direction>(i);
  return std::nullopt;
}

Cell offset(Cell c, Direction d) {
  switch (d) {
    case Direction::N: return {c.x, c.y + 1};
    case Direction::S: return {c.x, c.y - 1};
    case Direction::E: return {c.x + 1, c.y};
    case Direction::W: return {c.x - 1, c.y};
    case Direction::NE: return {c.x + 1, c.y + 1};
    case Direction::NW: return {c.x - 1, c.y + 1};
    case Direction::SE: return {c.x + 1, c.y - 1};
    case Direction::SW: return {c.x - 1, c.y - 1};
    case Direction::Stay: return c;
  }
  return c;
}

std::string to_string(const GridState& g) {
  return "(" + cell_string(g.robot) + "," + cell_string(g.adversary) + "," +
         (g.turn == Player::Robot ? "0" : "1") + ")";
}

void GridworldConfig::validate() const {
  if (width <= 0 || height <= 0) throw InvalidConfigError("grid dimensions must be positive");
  for (Cell c : obstacles)
    if (!in_bounds(c)) throw InvalidConfigError("obstacle " + cell_string(c) + " out of bounds");
  if (!is_free(robot_start))
    throw InvalidConfigError("robot start " + cell_string(robot_start) + " is not a free cell");
  if (!is_free(adversary_start))
    throw InvalidConfigError("adversary start " + cell_string(adversary_start) +
                             " is not a free cell");
  for (const auto& [name, cells] : goal_labels) {
    if (name.empty() || name == obstacle_label)
      throw InvalidConfigError("invalid goal label '" + name + "'");
    for (Cell c : cells)
      if (!is_free(c))
        throw InvalidConfigError("goal " + name + " cell " + cell_string(c) +
                                 " is not a free cell");
  }
  auto check_actions = [](const std::vector<Direction>& acts, bool robot) {
    std::set<Direction> seen;
    for (Direction d : acts) {
      if (robot && d == Direction::Stay)
        throw InvalidConfigError("STAY is not a robot action");
      if (!robot && (d == Direction::NE || d == Direction::NW || d == Direction::SE ||
                     d == Direction::SW))
        throw InvalidConfigError("diagonal moves are not adversary actions");
      if (!seen.insert(d).second) throw InvalidConfigError("duplicate action");
    }
  };
  check_actions(robot_actions, true);
  check_actions(adversary_actions, false);
}

namespace {

std::vector<Cell> collect_free_cells(const GridworldConfig& cfg) {
  cfg.validate();
  std::vector<Cell> out;
  for (int x = 0; x < cfg.width; ++x)
    for (int y = 0; y < cfg.height; ++y)
      if (cfg.is_free({x, y})) out.push_back({x, y});
  return out;
}

std::vector<GridState> enumerate_states(const std::vector<Cell>& free) {
  std::vector<GridState> out;
  out.reserve(free.size() * free.size() * 2);
  for (Cell r : free)
    for (Cell e : free)
      for (Player t : {Player::Robot, Player::Adversary}) out.push_back({r, e, t});
  return out;
}

std::map<GridState, StateId> index_states(const std::vector<GridState>& states) {
  std::map<GridState, StateId> out;
  for (StateId i = 0; i < states.size(); ++i) out.emplace(states[i], i);
  return out;
}

bool move_allowed(const GridworldConfig& cfg, Cell from, Direction d, Cell other) {
  const Cell to = offset(from, d);
  if (!cfg.is_free(to)) return false;
  const bool diagonal = d == Direction::NE || d == Direction::NW || d == Direction::SE ||
                        d == Direction::SW;
  if (diagonal && !cfg.corner_cutting &&
      (!cfg.is_free({to.x, from.y}) || !cfg.is_free({from.x, to.y})))
    return false;
  if (cfg.interaction == Interaction::Block && d != Direction::Stay && to == other)
    return false;
  return true;
}

TransitionSystem build_ts(const GridworldConfig& cfg, const std::vector<GridState>& states,
                          const std::map<GridState, StateId>& index) {
  std::vector<std::string> ap;
  for (const auto& [name, cells] : cfg.goal_labels) ap.push_back(name);
  ap.push_back(cfg.obstacle_label);

  std::vector<TransitionSystem::Action> actions;
  for (Direction d : cfg.robot_actions) actions.push_back({to_string(d), Player::Robot});
  for (Direction d : cfg.adversary_actions) actions.push_back({to_string(d), Player::Adversary});
  const auto robot_count = static_cast<ActionId>(cfg.robot_actions.size());

  auto label_of = [&](Cell robot) {
    LabelMask l = 0;
    std::size_t i = 0;
    for (const auto& [name, cells] : cfg.goal_labels) {
      if (cells.contains(robot)) l |= LabelMask{1} << i;
      ++i;
    }
    return l;
  };

  std::vector<TransitionSystem::State> out(states.size());
  for (StateId s = 0; s < states.size(); ++s) {
    const GridState& g = states[s];
    auto& st = out[s];
    st.owner = g.turn;
    st.label = label_of(g.robot);
    if (g.turn == Player::Robot) {
      for (ActionId a = 0; a < robot_count; ++a) {
        const Direction d = cfg.robot_actions[a];
        if (!move_allowed(cfg, g.robot, d, g.adversary)) continue;
        st.out.push_back({a, index.at({offset(g.robot, d), g.adversary, Player::Adversary})});
      }
    } else {
      for (ActionId i = 0; i < cfg.adversary_actions.size(); ++i) {
        const Direction d = cfg.adversary_actions[i];
        if (!move_allowed(cfg, g.adversary, d, g.robot)) continue;
        st.out.push_back(
            {robot_count + i, index.at({g.robot, offset(g.adversary, d), Player::Robot})});
      }
    }
  }
  const StateId initial = index.at({cfg.robot_start, cfg.adversary_start, Player::Robot});
  return TransitionSystem(std::move(ap), std::move(actions), std::move(out), initial);
}

}  // namespace

Gridworld::Gridworld(GridworldConfig config)
    : config_(std::move(config)),
      free_cells_(collect_free_cells(config_)),
      decode_(enumerate_states(free_cells_)),
      encode_(index_states(decode_)),
      ts_(build_ts(config_, decode_, encode_)) {}

std::optional<StateId> Gridworld::find(const GridState& g) const {
  auto it = encode_.find(g);
  if (it == encode_.end()) return std::nullopt;
  return it->second;
}

Gridworld build_gridworld_ts(const GridworldConfig& config) { return Gridworld(config); }

}  // namespace oppsyn
