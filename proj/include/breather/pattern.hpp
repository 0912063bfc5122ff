#pragma once

#include <string>
#include <vector>

#include "breather/fock_basis.hpp"

namespace breather {

/// Multiset of nonzero on-site occupations, stored in descending order:
/// {2,2}, {4,2}, {3,1}, {4}, ...
struct Pattern {
  std::vector<int> counts;

  Pattern() = default;
  explicit Pattern(std::vector<int> occupations);
  Pattern(std::initializer_list<int> occupations) : Pattern(std::vector<int>(occupations)) {}

  int bosons() const noexcept;
  std::size_t clumps() const noexcept { return counts.size(); }

  /// "2+2", "4+2", "4", "2+1+1"; safe inside a CSV field.
  std::string label() const;

  bool operator==(const Pattern&) const = default;
  auto operator<=>(const Pattern&) const = default;
};

/// Parses "m,l" (any number of comma-separated positive integers).
Pattern parse_pattern(const std::string& text);

Pattern pattern_of(const FockState& state);

/// For a two-clump state: whether the two occupied sites are nearest neighbours on the ring.
bool clumps_adjacent(const FockState& state);

}  // namespace breather
