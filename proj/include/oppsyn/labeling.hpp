#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "oppsyn/games.hpp"

namespace oppsyn {

/// Membership of a hypergame state in Win(φ1), Win(φ2) and Win(φ1 ∧ φ2).
struct WinLabel {
  bool win1 = false;
  bool win2 = false;
  bool win12 = false;

  /// "(W,L,L)" style rendering.
  std::string to_string() const;
  /// Position in all_win_labels().
  std::size_t index() const;
  /// A state winning for the conjunction must be winning for both parts.
  bool possible() const { return !win12 || (win1 && win2); }

  friend bool operator==(const WinLabel&, const WinLabel&) = default;
};

inline constexpr WinLabel kWWW{true, true, true};
inline constexpr WinLabel kWWL{true, true, false};
inline constexpr WinLabel kWLL{true, false, false};
inline constexpr WinLabel kLWL{false, true, false};
inline constexpr WinLabel kLLL{false, false, false};

/// The eight labels; the five possible ones first, in report order.
const std::array<WinLabel, 8>& all_win_labels();

/// Throws FormatError.
WinLabel parse_win_label(const std::string& text);

/// Label of every state. Throws InconsistentRegionError if win12 is not
/// contained in win1 ∩ win2.
std::vector<WinLabel> win_label_all(const HypergameTS& hts, const StateSet& win1,
                                    const StateSet& win2, const StateSet& win12);
std::vector<WinLabel> win_label_all(const HypergameTS& hts, const HypergameRegions& regions);

struct PartitionSummary {
  /// Indexed like all_win_labels().
  std::array<std::size_t, 8> counts{};
  std::size_t total = 0;

  std::size_t count(const WinLabel& l) const { return counts[l.index()]; }
  std::size_t nonempty() const;
};

PartitionSummary partition_summary(const std::vector<WinLabel>& labels);

}  // namespace oppsyn
