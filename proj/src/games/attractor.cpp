#include <deque>

#include "oppsyn/error.hpp"
#include "oppsyn/games.hpp"

namespace oppsyn {

// Predecessor-count worklist. States leave the FIFO queue in nondecreasing
// rank order, so the first robot-side hit and the last adversary-side
// decrement both happen at the rank the level-by-level definition gives.
AttractorResult attractor(const GameGraph& game, const StateSet& target, Player player) {
  const std::size_t n = game.num_states();
  if (target.universe() != n) throw Error("target set does not match the game");

  std::vector<std::vector<StateId>> preds(n);
  std::vector<std::uint32_t> remaining(n, 0);
  for (StateId g = 0; g < n; ++g) {
    for (const Edge& e : game.out(g)) preds[e.dst].push_back(g);
    remaining[g] = static_cast<std::uint32_t>(game.out(g).size());
  }

  AttractorResult res{StateSet(n), std::vector<std::uint32_t>(n, AttractorResult::kNoRank)};
  std::deque<StateId> queue;
  for (StateId g : target.members()) {
    res.winning.insert(g);
    res.rank[g] = 0;
    queue.push_back(g);
  }
  while (!queue.empty()) {
    const StateId g = queue.front();
    queue.pop_front();
    for (StateId p : preds[g]) {
      if (res.winning.contains(p)) continue;
      // One predecessor entry per edge, so a multi-edge is counted per edge.
      if (game.owner(p) == player || --remaining[p] == 0) {
        res.winning.insert(p);
        res.rank[p] = res.rank[g] + 1;
        queue.push_back(p);
      }
    }
  }
  return res;
}

RobotStrategy robot_asw_strategy(const GameGraph& game, const AttractorResult& res,
                                 StateId h) {
  if (!res.winning.contains(h))
    throw StateNotWinningError("state " + std::to_string(h) + " is not winning");
  if (game.owner(h) != Player::Robot)
    throw Error("state " + std::to_string(h) + " is not robot-owned");
  RobotStrategy out;
  for (const Edge& e : game.out(h)) {
    if (!res.winning.contains(e.dst)) continue;
    out.safe.push_back(e.action);
    if (res.rank[e.dst] < res.rank[h]) out.progress.push_back(e.action);
  }
  return out;
}

std::vector<ActionId> adversary_safe_actions(const GameGraph& game, const StateSet& adv_win,
                                             StateId h) {
  if (!adv_win.contains(h))
    throw StateNotInRegionError("state " + std::to_string(h) +
                                " is outside the adversary's winning region");
  std::vector<ActionId> out;
  for (const Edge& e : game.out(h))
    if (adv_win.contains(e.dst)) out.push_back(e.action);
  return out;
}

HypergameRegions solve_hypergame(const HypergameTS& hts) {
  return {attractor(hts, hts.final1()), attractor(hts, hts.final2()),
          attractor(hts, hts.final12())};
}

}  // namespace oppsyn
