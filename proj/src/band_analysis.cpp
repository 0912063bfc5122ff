#include "breather/band_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "breather/errors.hpp"
#include "breather/perturbation.hpp"

namespace breather {

namespace {

constexpr double kDegeneracyTolerance = 1e-9;
constexpr double kMaxMassFitMomentum = 0.3 * std::numbers::pi;

struct PatternWeights {
  double total = 0.0;
  double adjacent = 0.0;
  double dominant = -1.0;  // largest single-component weight
  bool dominant_adjacent = false;
};

template <typename StateAt>
Classification classify(std::size_t size, const Eigen::VectorXcd& vector, double threshold,
                        StateAt state_at) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ValidationError("classification threshold must lie in (0, 1]");
  }
  if (static_cast<std::size_t>(vector.size()) != size) {
    throw ValidationError("vector length does not match the basis");
  }
  std::map<Pattern, PatternWeights> weights;
  for (std::size_t i = 0; i < size; ++i) {
    const double w = std::norm(vector(static_cast<Eigen::Index>(i)));
    const FockState& state = state_at(i);
    auto& entry = weights[pattern_of(state)];
    const bool adjacent = clumps_adjacent(state);
    entry.total += w;
    if (adjacent) entry.adjacent += w;
    if (w > entry.dominant) {
      entry.dominant = w;
      entry.dominant_adjacent = adjacent;
    }
  }
  Classification out;
  const Pattern* best = nullptr;
  bool dominant_adjacent = false;
  for (const auto& [pattern, w] : weights) {
    if (!best || w.total > out.weight) {
      best = &pattern;
      out.weight = w.total;
      out.adjacent_fraction = w.total > 0.0 ? w.adjacent / w.total : 0.0;
      dominant_adjacent = w.dominant_adjacent;
    }
  }
  // Adjacency follows the largest component of the winning pattern.
  if (best && best->clumps() == 2) {
    out.adjacency = dominant_adjacent ? Adjacency::adjacent : Adjacency::separated;
  }
  if (best && out.weight > threshold) out.pattern = *best;
  return out;
}

}  // namespace

std::string to_string(Adjacency adjacency) {
  switch (adjacency) {
    case Adjacency::adjacent: return "adjacent";
    case Adjacency::separated: return "separated";
    case Adjacency::not_applicable: break;
  }
  return "n/a";
}

std::string to_string(BandTag tag) {
  switch (tag) {
    case BandTag::line: return "line";
    case BandTag::continuum: return "continuum";
    case BandTag::merged: break;
  }
  return "merged";
}

Classification classify_state(const MomentumBasis& basis, const Eigen::VectorXcd& vector,
                              double threshold) {
  return classify(basis.dim(), vector, threshold,
                  [&](std::size_t i) -> const FockState& { return basis.orbit(i).rep; });
}

Classification classify_state(std::span<const FockState> states, const Eigen::VectorXcd& vector,
                              double threshold) {
  return classify(states.size(), vector, threshold,
                  [&](std::size_t i) -> const FockState& { return states[i]; });
}

double pattern_weight(const MomentumBasis& basis, const Eigen::VectorXcd& vector,
                      const Pattern& pattern) {
  double weight = 0.0;
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    if (pattern_of(basis.orbit(i).rep) == pattern) {
      weight += std::norm(vector(static_cast<Eigen::Index>(i)));
    }
  }
  return weight;
}

std::vector<double> BandMomentum::energies(BandTag tag) const {
  std::vector<double> out;
  for (const auto& s : states) {
    if (s.tag == tag) out.push_back(s.energy);
  }
  return out;
}

void BandReport::require_complete() const {
  for (const auto& m : per_k) {
    if (m.states.size() != m.expected) {
      throw BandOverlapError("band " + pattern.label() + " at l=" +
                             std::to_string(m.k.centered()) + " selected " +
                             std::to_string(m.states.size()) + " states, expected " +
                             std::to_string(m.expected));
    }
  }
}

std::optional<double> BandReport::pt_max_residual() const {
  std::optional<double> worst;
  for (const auto& m : per_k) {
    if (m.pt_max_residual) worst = std::max(worst.value_or(0.0), *m.pt_max_residual);
  }
  return worst;
}

BandReport extract_band(const SectorSpectrum& spectrum, const Pattern& pattern, double threshold) {
  if (pattern.bosons() != spectrum.params.n) {
    throw ValidationError("pattern " + pattern.label() + " does not sum to n=" +
                          std::to_string(spectrum.params.n));
  }
  BandReport report;
  report.pattern = pattern;
  report.threshold = threshold;
  for (const auto& block : spectrum.blocks) {
    if (!block.spectrum.eigenvectors) {
      throw ValidationError("band extraction needs eigenvectors");
    }
    BandMomentum m{block.basis.k, {}, 0, std::nullopt, std::nullopt};
    for (std::size_t i = 0; i < block.basis.dim(); ++i) {
      if (pattern_of(block.basis.orbit(i).rep) == pattern) ++m.expected;
    }
    const auto& vectors = *block.spectrum.eigenvectors;
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
      const Classification c = classify_state(block.basis, vectors.col(j), threshold);
      if (!c.classified() || *c.pattern != pattern) continue;
      BandState state;
      state.index = static_cast<int>(j);
      state.energy = block.spectrum.eigenvalues(j);
      state.weight = c.weight;
      state.adjacent_fraction = c.adjacent_fraction;
      if (pattern.clumps() == 1) {
        state.tag = BandTag::line;
      } else if (pattern.clumps() == 2) {
        state.tag = c.adjacency == Adjacency::adjacent ? BandTag::line : BandTag::continuum;
      } else {
        state.tag = BandTag::continuum;
      }
      m.states.push_back(state);
    }
    // Degenerate partners.
    for (std::size_t i = 0; i + 1 < m.states.size(); ++i) {
      auto& a = m.states[i];
      auto& b = m.states[i + 1];
      const double scale = std::max({1.0, std::abs(a.energy), std::abs(b.energy)});
      if (std::abs(b.energy - a.energy) <= kDegeneracyTolerance * scale) {
        a.tag = BandTag::merged;
        b.tag = BandTag::merged;
      }
    }
    if (m.states.size() != m.expected) {
      report.overlap = true;
      report.warnings.push_back("band overlap at l=" + std::to_string(m.k.centered()) + ": " +
                                std::to_string(m.states.size()) + " states selected, " +
                                std::to_string(m.expected) + " expected");
    }
    report.per_k.push_back(std::move(m));
  }
  return report;
}

void attach_pt(BandReport& report, const ModelParams& params) {
  for (auto& m : report.per_k) {
    const Eigen::VectorXd pt = pt_band_energies(params, report.pattern, m.k);
    if (static_cast<std::size_t>(pt.size()) != m.states.size()) {
      report.warnings.push_back("perturbation theory predicts " + std::to_string(pt.size()) +
                                " states at l=" + std::to_string(m.k.centered()) + " but " +
                                std::to_string(m.states.size()) + " were selected");
      continue;
    }
    double worst = 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < m.states.size(); ++i) {
      const double predicted = pt(static_cast<Eigen::Index>(i));
      m.states[i].pt_energy = predicted;
      const double diff = std::abs(m.states[i].energy - predicted);
      worst = std::max(worst, diff);
      sum += diff;
    }
    if (!m.states.empty()) {
      m.pt_max_residual = worst;
      m.pt_mean_residual = sum / static_cast<double>(m.states.size());
    }
  }
  report.pt_applied = true;
  double smallest = 0.0;
  if (report.pattern == Pattern{2, 2}) smallest = PTCoefficients22::from(params).smallest_denominator;
  else if (report.pattern == Pattern{4, 2}) smallest = PTCoefficients42::from(params).smallest_denominator;
  else if (report.pattern == Pattern{3, 3}) smallest = PTCoefficients33::from(params).smallest_denominator;
  else return;
  if (auto warning = validity_warning(params, smallest)) report.warnings.push_back(*warning);
}

EffectiveMass effective_mass(std::span<const DispersionSample> samples) {
  if (samples.size() < 5) throw ValidationError("effective mass needs at least 5 k-samples");
  std::vector<DispersionSample> central(samples.begin(), samples.end());
  std::sort(central.begin(), central.end(), [](const auto& a, const auto& b) {
    return std::abs(a.k) < std::abs(b.k) || (std::abs(a.k) == std::abs(b.k) && a.k < b.k);
  });
  central.resize(5);
  std::sort(central.begin(), central.end(),
            [](const auto& a, const auto& b) { return a.k < b.k; });

  const double step = central[3].k - central[2].k;
  const double tol = 1e-9 * std::max(1.0, std::abs(step));
  if (std::abs(central[2].k) > tol || !(step > 0.0)) {
    throw ValidationError("effective mass needs a sample at k = 0");
  }
  for (std::size_t i = 0; i < 5; ++i) {
    const double expected = (static_cast<double>(i) - 2.0) * step;
    if (std::abs(central[i].k - expected) > tol) {
      throw ValidationError("effective mass needs a uniform k-grid around k = 0");
    }
  }
  if (2.0 * step > kMaxMassFitMomentum + tol) {
    throw ValidationError("k-grid too coarse for a mass fit: the central points reach |k| = " +
                          std::to_string(2.0 * step));
  }

  // Quartic through the five points in the scaled variable x = k / step.
  Eigen::Matrix<double, 5, 5> vandermonde;
  Eigen::Matrix<double, 5, 1> rhs;
  for (int i = 0; i < 5; ++i) {
    const double x = i - 2.0;
    for (int p = 0; p < 5; ++p) vandermonde(i, p) = std::pow(x, p);
    rhs(i) = central[static_cast<std::size_t>(i)].energy - central[2].energy;
  }
  const Eigen::Matrix<double, 5, 1> coeff = vandermonde.fullPivLu().solve(rhs);
  const double slope = coeff(1) / step;
  const double curvature = 2.0 * coeff(2) / (step * step);
  const double second_difference =
      (central[3].energy - 2.0 * central[2].energy + central[1].energy) / (step * step);

  if (curvature == 0.0 || second_difference == 0.0) {
    throw NumericalError("dispersion has zero curvature at k = 0");
  }
  if (std::abs(slope) * step > std::abs(curvature) * step * step) {
    throw NumericalError("k = 0 is not an extremum of the band (odd derivative dominates)");
  }
  EffectiveMass out;
  out.curvature = curvature;
  out.mass = 1.0 / curvature;
  out.mass_fd = 1.0 / second_difference;
  if (std::abs(out.mass_fd - out.mass) > 0.02 * std::abs(out.mass)) {
    throw NumericalError("quartic and finite-difference masses disagree by more than 2%");
  }
  return out;
}

namespace {

std::vector<DispersionSample> band_dispersion(const BandReport& report, BandTag tag) {
  std::vector<DispersionSample> samples;
  for (const auto& m : report.per_k) {
    const auto energies = m.energies(tag);
    if (energies.size() != 1) continue;
    samples.push_back({m.k.k(), energies.front()});
  }
  return samples;
}

}  // namespace

EffectiveMassReport effective_mass_report(const ModelParams& params, double threshold,
                                          int threads) {
  if (params.f < 17) throw ValidationError("mass fits need f >= 17");
  require_odd_ring(params.f);
  SolveOptions options;
  options.want_vectors = true;
  options.threads = threads;

  ModelParams single = params;
  single.n = 2;
  BandReport doublet = extract_band(solve_sector(single, options), Pattern{2}, threshold);
  ModelParams pair = params;
  pair.n = 4;
  BandReport pairs = extract_band(solve_sector(pair, options), Pattern{2, 2}, threshold);

  EffectiveMassReport report;
  report.m2_star = effective_mass(band_dispersion(doublet, BandTag::line)).mass;
  report.m22_star = effective_mass(band_dispersion(pairs, BandTag::line)).mass;
  report.ratio = report.m22_star / (2.0 * report.m2_star);
  report.gamma_prediction = PTCoefficients22::from(params).gamma;
  return report;
}

}  // namespace breather
