#include "breather/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>
#include <unordered_set>

#include "breather/eigensolve.hpp"
#include "breather/errors.hpp"

namespace breather {

namespace {

using StateAmplitudes = std::unordered_map<FockState, cplx, FockStateHash>;

void check_denominator(const char* name, double value, const ModelParams& params) {
  if (!(std::abs(value) >= resonance_floor(params))) throw ResonanceError(name, value);
}

int sigma_of(int f) {
  require_odd_ring(f);
  return (f - 1) / 2;
}

StateAmplitudes bloch_ket(const TranslationOrbit& orbit, MomentumIndex k) {
  if ((static_cast<long long>(k.l()) * orbit.period) % k.f() != 0) {
    throw ValidationError("orbit " + orbit.rep.ket() + " has no Bloch ket at l=" +
                          std::to_string(k.centered()));
  }
  StateAmplitudes ket;
  const double norm = 1.0 / std::sqrt(static_cast<double>(orbit.period));
  for (int t = 0; t < orbit.period; ++t) {
    ket.emplace(translate(orbit.rep, t), norm * std::polar(1.0, -k.k() * t));
  }
  return ket;
}

StateAmplitudes apply_hopping(const StateAmplitudes& ket, double epsilon) {
  StateAmplitudes out;
  for (const auto& [state, amp] : ket) {
    for (int s = 0; s < state.sites(); ++s) {
      for (int dir : {+1, -1}) {
        if (const auto hop = hop_element(state, s, dir)) {
          out[hop->dst] += -epsilon * hop->amp * amp;
        }
      }
    }
  }
  return out;
}

void hermitize(HermitianMatrix& h) {
  HermitianMatrix adj = h.adjoint();
  h = (h + adj) * 0.5;
}

}  // namespace

double onsite_energy(int s, double gamma1, double gamma2) {
  const double m = s;
  return -gamma1 * m * (m - 1.0) + gamma2 * m * (m - 1.0) * (m - 2.0);
}

double zeroth_order_energy(const Pattern& pattern, const ModelParams& params) {
  double energy = 0.0;
  for (int c : pattern.counts) energy += onsite_energy(c, params.gamma1, params.effective_gamma2());
  return energy;
}

double resonance_floor(const ModelParams& params) {
  return 1e-6 * std::max({params.gamma1, params.effective_gamma2(), 1.0});
}

std::optional<std::string> validity_warning(const ModelParams& params,
                                            double smallest_denominator) {
  if (std::abs(smallest_denominator) < 10.0 * params.epsilon) {
    return "smallest perturbation denominator " + std::to_string(smallest_denominator) +
           " is below 10*epsilon; second-order results are of doubtful accuracy";
  }
  return std::nullopt;
}

void require_odd_ring(int f) {
  if (f < 3 || f % 2 == 0) {
    throw ValidationError("perturbation theory needs an odd ring f = 2*sigma+1 >= 3, got f=" +
                          std::to_string(f));
  }
}

std::complex<double> PTCoefficients22::kappa(double k) const {
  return std::polar(1.0, k / 2.0) * std::cos(k / 2.0);
}

double PTCoefficients22::p(double k) const { return std::cos(sigma * k); }

PTCoefficients22 PTCoefficients22::from(const ModelParams& params) {
  const double g1 = params.gamma1;
  const double g2 = params.effective_gamma2();
  check_denominator("gamma1", g1, params);
  check_denominator("gamma1 - 3 gamma2", g1 - 3.0 * g2, params);
  PTCoefficients22 c;
  c.sigma = params.f >= 3 && params.f % 2 == 1 ? (params.f - 1) / 2 : 0;
  const double e1 = onsite_energy(1, g1, g2);
  const double e2 = onsite_energy(2, g1, g2);
  const double e3 = onsite_energy(3, g1, g2);
  c.gamma = (3.0 * g2 - 4.0 * g1) / (g1 - 3.0 * g2);
  c.prefactor = 4.0 * params.epsilon * params.epsilon / (e2 - 2.0 * e1);
  c.shift = 2.0 * c.prefactor;
  c.smallest_denominator = std::min(std::abs(e2 - 2.0 * e1), std::abs(2.0 * e2 - e3 - e1));
  return c;
}

std::complex<double> PTCoefficients42::p(double k) const {
  return corner_scale * std::polar(1.0, k);
}

PTCoefficients42 PTCoefficients42::from(const ModelParams& params) {
  const double g1 = params.gamma1;
  const double g2 = params.effective_gamma2();
  check_denominator("gamma1", g1, params);
  check_denominator("gamma1 - 3 gamma2", g1 - 3.0 * g2, params);
  check_denominator("gamma1 - 6 gamma2", g1 - 6.0 * g2, params);
  PTCoefficients42 c;
  c.d = -(2.0 / 3.0) * (5.0 * g1 - 9.0 * g2) / (g1 * (g1 - 3.0 * g2));
  c.gamma = (2.0 / 3.0) * (4.0 * g1 * g1 - 27.0 * g2 * g2) / ((g1 - 3.0 * g2) * (g1 - 6.0 * g2));
  c.prefactor = -params.epsilon * params.epsilon / g1;
  c.corner_scale = 6.0 * g1 / (g1 - 6.0 * g2);
  // Intermediate energies relative to E_4 + E_2: the {5,1}, {4,1,1}, {3,3} and {3,2,1} families.
  auto E = [&](int s) { return onsite_energy(s, g1, g2); };
  const double deg = E(4) + E(2);
  c.smallest_denominator = std::min({std::abs(deg - E(5)), std::abs(deg - E(4)),
                                     std::abs(deg - 2.0 * E(3)), std::abs(deg - E(3) - E(2))});
  return c;
}

PTCoefficients33 PTCoefficients33::from(const ModelParams& params) {
  const double g1 = params.gamma1;
  const double g2 = params.effective_gamma2();
  check_denominator("3 gamma2 - 2 gamma1", 3.0 * g2 - 2.0 * g1, params);
  check_denominator("gamma1 - 6 gamma2", g1 - 6.0 * g2, params);
  PTCoefficients33 c;
  c.prefactor = 6.0 * params.epsilon * params.epsilon / (3.0 * g2 - 2.0 * g1);
  c.gamma = 4.5 * (2.0 * g2 - g1) / (g1 - 6.0 * g2);
  auto E = [&](int s) { return onsite_energy(s, g1, g2); };
  const double deg = 2.0 * E(3);
  c.smallest_denominator =
      std::min({std::abs(deg - E(3) - E(2)), std::abs(deg - E(4) - E(2))});
  return c;
}

HermitianMatrix h22_matrix(const ModelParams& params, MomentumIndex k) {
  const int sigma = sigma_of(params.f);
  const auto c = PTCoefficients22::from(params);
  const double kv = k.k();
  const auto m = static_cast<Eigen::Index>(sigma);
  HermitianMatrix h = HermitianMatrix::Identity(m, m) * c.shift;
  // sigma == 1: the single entry keeps the impurity only.
  h(0, 0) += c.prefactor * c.gamma;
  if (sigma > 1) h(m - 1, m - 1) += c.prefactor * c.p(kv);
  const cplx below = c.prefactor * std::conj(c.kappa(kv));
  for (Eigen::Index j = 0; j + 1 < m; ++j) {
    h(j + 1, j) = below;
    h(j, j + 1) = std::conj(below);
  }
  return h;
}

HermitianMatrix h42_matrix(const ModelParams& params, MomentumIndex k) {
  const int sigma = sigma_of(params.f);
  const auto c = PTCoefficients42::from(params);
  const auto m = static_cast<Eigen::Index>(2 * sigma);
  const double eps2 = params.epsilon * params.epsilon;
  HermitianMatrix h = HermitianMatrix::Identity(m, m) * (c.d * eps2);
  h(0, 0) += c.prefactor * c.gamma;
  h(m - 1, m - 1) += c.prefactor * c.gamma;
  for (Eigen::Index j = 0; j + 1 < m; ++j) {
    h(j + 1, j) += c.prefactor;
    h(j, j + 1) += c.prefactor;
  }
  const cplx corner = c.prefactor * c.p(k.k());
  h(m - 1, 0) += corner;
  h(0, m - 1) += std::conj(corner);
  return h;
}

HermitianMatrix h33_matrix(const ModelParams& params, MomentumIndex /*k*/) {
  const int sigma = sigma_of(params.f);
  const auto c = PTCoefficients33::from(params);
  const auto m = static_cast<Eigen::Index>(sigma);
  HermitianMatrix h = HermitianMatrix::Identity(m, m) * c.prefactor;
  h(0, 0) += c.prefactor * c.gamma;
  return h;
}

double AsymptoticBand22::continuum(double theta) const {
  return base + shift * (1.0 + cos_half_k * std::cos(theta));
}

double AsymptoticBand22::continuum_min() const {
  return base + shift + std::min(shift * cos_half_k, -shift * cos_half_k);
}

double AsymptoticBand22::continuum_max() const {
  return base + shift + std::max(shift * cos_half_k, -shift * cos_half_k);
}

AsymptoticBand22 band22_asymptotic(const ModelParams& params, double k) {
  if (!(params.epsilon > 0.0)) throw ValidationError("asymptotic band needs epsilon > 0");
  const auto c = PTCoefficients22::from(params);
  AsymptoticBand22 band;
  band.k = k;
  band.base = 2.0 * onsite_energy(2, params.gamma1, params.effective_gamma2());
  band.shift = c.shift;
  band.cos_half_k = std::abs(std::cos(k / 2.0));
  if (c.gamma == 0.0) {
    band.status = LineStatus::singular_gamma;
  } else if (std::abs(c.gamma) > band.cos_half_k) {
    band.status = LineStatus::present;
    band.line = band.base + c.prefactor * (2.0 + c.gamma +
                                           band.cos_half_k * band.cos_half_k / c.gamma);
  }
  return band;
}

double continuum42(const ModelParams& params, double theta) {
  const double g1 = params.gamma1;
  const double g2 = params.effective_gamma2();
  check_denominator("gamma1", g1, params);
  check_denominator("gamma1 - 3 gamma2", g1 - 3.0 * g2, params);
  const double eps2 = params.epsilon * params.epsilon;
  return 24.0 * g2 - 14.0 * g1 +
         (2.0 * eps2 / g1) * ((5.0 * g1 - 9.0 * g2) / (9.0 * g2 - 3.0 * g1) - std::cos(theta));
}

std::vector<TranslationOrbit> pattern_classes(int f, const Pattern& pattern) {
  if (pattern.counts.empty()) throw ValidationError("empty pattern");
  if (static_cast<int>(pattern.clumps()) > f) {
    throw ValidationError("pattern " + pattern.label() + " has more clumps than sites");
  }
  // Place the largest clump at site 0 and distribute the rest; canonicalize and dedupe.
  std::vector<TranslationOrbit> classes;
  std::unordered_set<FockState, FockStateHash> seen;
  std::vector<int> rest(pattern.counts.begin() + 1, pattern.counts.end());
  std::sort(rest.begin(), rest.end());
  FockState state(std::vector<int>(static_cast<std::size_t>(f), 0));
  state.occ[0] = pattern.counts.front();
  auto place = [&](auto&& self, std::size_t next) -> void {
    if (next == rest.size()) {
      auto orbit = orbit_of(state);
      if (seen.insert(orbit.rep).second) classes.push_back(std::move(orbit));
      return;
    }
    for (int s = 1; s < f; ++s) {
      if (state[s] != 0) continue;
      state.occ[static_cast<std::size_t>(s)] = rest[next];
      self(self, next + 1);
      state.occ[static_cast<std::size_t>(s)] = 0;
    }
  };
  do {
    place(place, 0);
  } while (std::next_permutation(rest.begin(), rest.end()));
  // Reverse-lexicographic order of the representatives, as in Sector.
  std::sort(classes.begin(), classes.end(),
            [](const TranslationOrbit& a, const TranslationOrbit& b) { return a.rep > b.rep; });
  return classes;
}

HermitianMatrix bw_second_order_block(const ModelParams& params, MomentumIndex k,
                                      const std::vector<TranslationOrbit>& classes) {
  if (classes.empty()) throw ValidationError("Brillouin-Wigner block needs at least one class");
  if (k.f() != params.f) throw ValidationError("momentum grid does not match f");
  const double floor = resonance_floor(params);
  const double degenerate = diagonal_energy(classes.front().rep, params);
  std::unordered_set<FockState, FockStateHash> class_space;
  for (const auto& orbit : classes) {
    if (orbit.rep.sites() != params.f || orbit.rep.bosons() != params.n) {
      throw ValidationError("class " + orbit.rep.ket() + " is outside the sector");
    }
    if (std::abs(diagonal_energy(orbit.rep, params) - degenerate) >= floor) {
      throw ValidationError("classes are not degenerate at zero hopping: " + orbit.rep.ket() +
                            " differs from " + classes.front().rep.ket());
    }
    for (int t = 0; t < orbit.period; ++t) class_space.insert(translate(orbit.rep, t));
  }

  std::vector<StateAmplitudes> kets;
  std::vector<StateAmplitudes> images;
  for (const auto& orbit : classes) {
    kets.push_back(bloch_ket(orbit, k));
    images.push_back(apply_hopping(kets.back(), params.epsilon));
  }

  const auto m = static_cast<Eigen::Index>(classes.size());
  HermitianMatrix h = HermitianMatrix::Zero(m, m);
  for (Eigen::Index col = 0; col < m; ++col) {
    for (const auto& [state, amp] : images[static_cast<std::size_t>(col)]) {
      if (class_space.contains(state)) {
        for (Eigen::Index row = 0; row < m; ++row) {
          const auto& bra = kets[static_cast<std::size_t>(row)];
          if (auto it = bra.find(state); it != bra.end()) h(row, col) += std::conj(it->second) * amp;
        }
        continue;
      }
      const double gap = degenerate - diagonal_energy(state, params);
      if (std::abs(gap) < floor) {
        throw ResonanceError("E_deg - E(" + state.ket() + ")", gap);
      }
      for (Eigen::Index row = 0; row < m; ++row) {
        const auto& bra = images[static_cast<std::size_t>(row)];
        if (auto it = bra.find(state); it != bra.end()) {
          h(row, col) += std::conj(it->second) * amp / gap;
        }
      }
    }
  }
  hermitize(h);
  return h;
}

bool has_closed_form(const Pattern& pattern) {
  return pattern == Pattern{2, 2} || pattern == Pattern{4, 2} || pattern == Pattern{3, 3};
}

HermitianMatrix pt_matrix(const ModelParams& params, const Pattern& pattern, MomentumIndex k) {
  if (pattern.bosons() != params.n) {
    throw ValidationError("pattern " + pattern.label() + " does not sum to n=" +
                          std::to_string(params.n));
  }
  if (pattern == Pattern{2, 2}) return h22_matrix(params, k);
  if (pattern == Pattern{4, 2}) return h42_matrix(params, k);
  if (pattern == Pattern{3, 3}) return h33_matrix(params, k);
  std::vector<TranslationOrbit> compatible;
  for (auto& orbit : pattern_classes(params.f, pattern)) {
    if ((static_cast<long long>(k.l()) * orbit.period) % params.f == 0) {
      compatible.push_back(std::move(orbit));
    }
  }
  if (compatible.empty()) return HermitianMatrix(0, 0);
  return bw_second_order_block(params, k, compatible);
}

Eigen::VectorXd pt_band_energies(const ModelParams& params, const Pattern& pattern,
                                 MomentumIndex k) {
  const HermitianMatrix h = pt_matrix(params, pattern, k);
  Eigen::VectorXd energies = eigh(h).eigenvalues;
  energies.array() += zeroth_order_energy(pattern, params);
  return energies;
}

}  // namespace breather
