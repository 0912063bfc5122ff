#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "breather/hamiltonian.hpp"

namespace breather::testing {

inline ModelParams random_params(std::mt19937& rng, int f, int n) {
  std::uniform_real_distribution<double> g(0.5, 12.0);
  std::uniform_real_distribution<double> e(0.05, 1.5);
  ModelParams p;
  p.f = f;
  p.n = n;
  p.gamma1 = g(rng);
  p.gamma2 = g(rng) / 2.0;
  p.epsilon = e(rng);
  return p;
}

inline double max_abs_diff(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return INFINITY;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace breather::testing
