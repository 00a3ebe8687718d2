#include <random>

#include "oppsyn/error.hpp"
#include "oppsyn/planner.hpp"

namespace oppsyn {

const char* to_string(AdversaryMode m) {
  return m == AdversaryMode::Uniform ? "uniform" : "seeded-random";
}

void PayoffConfig::validate() const {
  if (!(r1 > 0) || !(r2 > 0) || !(r > 0))
    throw InvalidConfigError("payoffs must be positive");
  // Allow for rounding when r was written as the sum in decimal.
  if (r < (r1 + r2) * (1 - 1e-12))
    throw InvalidConfigError("payoff r must be at least r1 + r2");
}

namespace {

Distribution uniform(std::vector<ActionId> actions) {
  Distribution d;
  d.probs.assign(actions.size(), 1.0 / static_cast<double>(actions.size()));
  d.actions = std::move(actions);
  return d;
}

}  // namespace

AdversaryModel build_adversary_model(const HypergameTS& hts, const std::vector<WinLabel>& labels,
                                     AdversaryMode mode, std::uint64_t seed) {
  const std::size_t n = hts.num_states();
  if (labels.size() != n) throw Error("label map does not match the hypergame");
  AdversaryModel m;
  m.mode = mode;
  m.seed = seed;
  m.sigma_w.resize(n);
  m.sigma_l.resize(n);
  m.in_win1.resize(n);

  // Raw engine bits rather than std::uniform_real_distribution, whose
  // output is not specified across standard libraries.
  std::mt19937_64 rng(seed);
  for (StateId h = 0; h < n; ++h) {
    m.in_win1[h] = labels[h].win1;
    if (hts.owner(h) != Player::Adversary || hts.out(h).empty()) continue;
    if (!labels[h].win1) {
      std::vector<ActionId> safe;
      for (const Edge& e : hts.out(h))
        if (!labels[e.dst].win1) safe.push_back(e.action);
      if (safe.empty())
        throw EmptySafeSetError("adversary state " + std::to_string(h) +
                                " has no move that avoids Win(phi1)");
      m.sigma_w[h] = uniform(std::move(safe));
    } else {
      std::vector<ActionId> all;
      for (const Edge& e : hts.out(h)) all.push_back(e.action);
      if (mode == AdversaryMode::Uniform) {
        m.sigma_l[h] = uniform(std::move(all));
      } else {
        Distribution d;
        double total = 0;
        for (std::size_t i = 0; i < all.size(); ++i) {
          const double w = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
          d.probs.push_back(w);
          total += w;
        }
        for (double& p : d.probs) p /= total;
        d.actions = std::move(all);
        m.sigma_l[h] = std::move(d);
      }
    }
  }
  return m;
}

}  // namespace oppsyn
