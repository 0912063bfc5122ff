#include "breather/pattern.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "breather/errors.hpp"

namespace breather {

Pattern::Pattern(std::vector<int> occupations) : counts(std::move(occupations)) {
  std::erase(counts, 0);
  if (std::any_of(counts.begin(), counts.end(), [](int c) { return c < 0; })) {
    throw ValidationError("pattern entries must be positive");
  }
  std::sort(counts.begin(), counts.end(), std::greater<>());
}

int Pattern::bosons() const noexcept { return std::accumulate(counts.begin(), counts.end(), 0); }

std::string Pattern::label() const {
  if (counts.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) out += '+';
    out += std::to_string(counts[i]);
  }
  return out;
}

Pattern parse_pattern(const std::string& text) {
  std::vector<int> counts;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw ValidationError("pattern '" + text + "' is not a comma-separated list of integers");
    }
    const auto rest = item.find_first_not_of(" \t", used);
    if (rest != std::string::npos || value <= 0) {
      throw ValidationError("pattern '" + text + "' must list positive integers, e.g. \"2,2\"");
    }
    counts.push_back(value);
  }
  if (counts.empty()) throw ValidationError("empty pattern");
  return Pattern(std::move(counts));
}

Pattern pattern_of(const FockState& state) { return Pattern(state.occ); }

bool clumps_adjacent(const FockState& state) {
  const int f = state.sites();
  std::vector<int> sites;
  for (int s = 0; s < f; ++s) {
    if (state[s] > 0) sites.push_back(s);
  }
  if (sites.size() != 2) return false;
  const int gap = sites[1] - sites[0];
  return gap == 1 || gap == f - 1;
}

}  // namespace breather
