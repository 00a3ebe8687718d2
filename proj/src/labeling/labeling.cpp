#include "oppsyn/labeling.hpp"

#include <algorithm>

#include "oppsyn/error.hpp"

namespace oppsyn {

const std::array<WinLabel, 8>& all_win_labels() {
  static constexpr std::array<WinLabel, 8> kAll{
      kWWW, kWWL, kWLL, kLWL, kLLL, WinLabel{true, false, true}, WinLabel{false, true, true},
      WinLabel{false, false, true}};
  return kAll;
}

std::string WinLabel::to_string() const {
  auto c = [](bool w) { return w ? 'W' : 'L'; };
  return std::string{'(', c(win1), ',', c(win2), ',', c(win12), ')'};
}

std::size_t WinLabel::index() const {
  const auto& all = all_win_labels();
  return static_cast<std::size_t>(std::find(all.begin(), all.end(), *this) - all.begin());
}

WinLabel parse_win_label(const std::string& text) {
  for (const WinLabel& l : all_win_labels())
    if (l.to_string() == text) return l;
  throw FormatError("not a win-label: '" + text + "'");
}

std::vector<WinLabel> win_label_all(const HypergameTS& hts, const StateSet& win1,
                                    const StateSet& win2, const StateSet& win12) {
  const std::size_t n = hts.num_states();
  if (win1.universe() != n || win2.universe() != n || win12.universe() != n)
    throw Error("winning regions do not match the hypergame");
  std::vector<WinLabel> out(n);
  for (StateId h = 0; h < n; ++h) {
    out[h] = {win1.contains(h), win2.contains(h), win12.contains(h)};
    if (!out[h].possible())
      throw InconsistentRegionError("state " + std::to_string(h) + " has label " +
                                    out[h].to_string() +
                                    ": the conjunction region leaks out of a sub-region");
  }
  return out;
}

std::vector<WinLabel> win_label_all(const HypergameTS& hts, const HypergameRegions& regions) {
  return win_label_all(hts, regions.win1.winning, regions.win2.winning,
                       regions.win12.winning);
}

std::size_t PartitionSummary::nonempty() const {
  return static_cast<std::size_t>(
      std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }));
}

PartitionSummary partition_summary(const std::vector<WinLabel>& labels) {
  PartitionSummary out;
  for (const WinLabel& l : labels) ++out.counts[l.index()];
  out.total = labels.size();
  return out;
}

}  // namespace oppsyn
