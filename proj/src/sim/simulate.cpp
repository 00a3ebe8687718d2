#include <algorithm>
#include <cmath>
#include <random>

#include "oppsyn/error.hpp"
#include "oppsyn/sim.hpp"

namespace oppsyn {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::SatisfiedPhi: return "satisfied-phi";
    case Outcome::SatisfiedPhi1Only: return "satisfied-phi1-only";
    case Outcome::SatisfiedPhi2Only: return "satisfied-phi2-only";
    case Outcome::None: return "none";
  }
  return "?";
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::Absorbed: return "absorbed";
    case Termination::Stopped: return "stopped";
    case Termination::NoOpportunity: return "no-opportunity";
    case Termination::StepBudget: return "step-budget";
  }
  return "?";
}

std::uint64_t episode_seed(std::uint64_t batch_seed, std::size_t i) {
  std::uint64_t z = batch_seed + i + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

class Episode {
 public:
  Episode(const SimContext& ctx, std::uint64_t seed, const SimOptions& options)
      : ctx_(ctx), rng_(seed), options_(options) {}

  Trace run(StateId start) {
    if (ctx_.hts.owner(start) != Player::Robot)
      throw Error("episodes must start in a robot-owned state");
    const PayoffConfig& pay = ctx_.mdp.payoff;
    StateId h = start;
    for (;;) {
      const std::uint32_t m = ctx_.mdp.index_of(h);
      const WinLabel l = ctx_.labels[h];
      if (l == kWWW) {
        finish(Outcome::SatisfiedPhi, Termination::Absorbed, pay.r);
        h = playout(h, ctx_.regions.win12, ctx_.hts.final12());
        break;
      }
      if (l == kLWL) {
        finish(Outcome::SatisfiedPhi2Only, Termination::Absorbed, pay.r2);
        h = playout(h, ctx_.regions.win2, ctx_.hts.final2());
        break;
      }
      if (trace_.steps >= options_.max_steps) {
        finish(Outcome::None, Termination::StepBudget, 0);
        break;
      }
      const auto& action = ctx_.policy.at(m);
      if (!action || !(ctx_.value.at(m) > 0)) {
        finish(Outcome::None, Termination::NoOpportunity, 0);
        break;
      }
      record(h, Player::Robot, *action);
      ++trace_.steps;
      if (*action == kStop) {
        if (l == kWLL || pay.r1 >= pay.r2) {
          finish(Outcome::SatisfiedPhi1Only, Termination::Stopped,
                 l == kWLL ? pay.r1 : std::max(pay.r1, pay.r2));
          h = playout(h, ctx_.regions.win1, ctx_.hts.final1());
        } else {
          finish(Outcome::SatisfiedPhi2Only, Termination::Stopped, pay.r2);
          h = playout(h, ctx_.regions.win2, ctx_.hts.final2());
        }
        break;
      }
      h = adversary_reply(*ctx_.hts.successor(h, *action));
    }
    trace_.final_state = h;
    return std::move(trace_);
  }

 private:
  double uniform01() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  StateId adversary_reply(StateId mid) {
    const Distribution& sigma = ctx_.adversary.response(mid);
    if (sigma.empty()) throw Error("adversary state " + std::to_string(mid) + " has no move");
    const double u = uniform01();
    double acc = 0;
    std::size_t pick = sigma.actions.size() - 1;
    for (std::size_t i = 0; i < sigma.actions.size(); ++i) {
      acc += sigma.probs[i];
      if (u < acc) {
        pick = i;
        break;
      }
    }
    record(mid, Player::Adversary, sigma.actions[pick]);
    return *ctx_.hts.successor(mid, sigma.actions[pick]);
  }

  // Almost-sure winning play: uniform over the rank-decreasing moves.
  StateId playout(StateId h, const AttractorResult& region, const StateSet& target) {
    if (!options_.playout) return h;
    while (!target.contains(h) && trace_.playout_steps < options_.max_steps) {
      const auto strategy = robot_asw_strategy(ctx_.hts, region, h);
      const auto n = strategy.progress.size();
      const ActionId a =
          strategy.progress[std::min(n - 1, static_cast<std::size_t>(uniform01() * n))];
      record(h, Player::Robot, a);
      ++trace_.playout_steps;
      h = *ctx_.hts.successor(h, a);
      if (target.contains(h)) break;
      h = adversary_reply(h);
    }
    return h;
  }

  void record(StateId h, Player actor, ActionId a) {
    if (options_.record_path) trace_.path.push_back({h, ctx_.labels[h], actor, a});
  }

  void finish(Outcome o, Termination t, double payoff) {
    trace_.outcome = o;
    trace_.termination = t;
    trace_.payoff = payoff;
  }

  const SimContext& ctx_;
  std::mt19937_64 rng_;
  const SimOptions& options_;
  Trace trace_;
};

}  // namespace

Trace simulate_episode(const SimContext& ctx, StateId start, std::uint64_t seed,
                       const SimOptions& options) {
  return Episode(ctx, seed, options).run(start);
}

RunStats batch_simulate(const SimContext& ctx, StateId start, std::size_t n, std::uint64_t seed,
                        const SimOptions& options, std::vector<Trace>* traces) {
  if (n == 0) throw InvalidConfigError("at least one episode is required");
  RunStats s;
  s.episodes = n;
  double sum = 0, sum_sq = 0, steps = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Trace t = simulate_episode(ctx, start, episode_seed(seed, i), options);
    ++s.outcomes[static_cast<std::size_t>(t.outcome)];
    sum += t.payoff;
    sum_sq += t.payoff * t.payoff;
    steps += static_cast<double>(t.steps);
    s.min_payoff = i == 0 ? t.payoff : std::min(s.min_payoff, t.payoff);
    s.max_payoff = i == 0 ? t.payoff : std::max(s.max_payoff, t.payoff);
    s.max_steps = std::max(s.max_steps, t.steps);
    if (t.termination == Termination::StepBudget) ++s.budget_hits;
    if (traces) traces->push_back(std::move(t));
  }
  const auto dn = static_cast<double>(n);
  s.mean_payoff = sum / dn;
  s.mean_steps = steps / dn;
  if (n > 1) {
    const double var = std::max(0.0, (sum_sq - dn * s.mean_payoff * s.mean_payoff) / (dn - 1));
    s.payoff_stderr = std::sqrt(var / dn);
  }
  return s;
}

}  // namespace oppsyn
