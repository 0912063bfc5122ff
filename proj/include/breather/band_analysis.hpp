#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "breather/fock_basis.hpp"
#include "breather/hamiltonian.hpp"
#include "breather/pattern.hpp"
#include "breather/sector_solver.hpp"

namespace breather {

inline constexpr double kDefaultClassificationThreshold = 0.5;

enum class Adjacency { adjacent, separated, not_applicable };
enum class BandTag { line, continuum, merged };

std::string to_string(Adjacency adjacency);
std::string to_string(BandTag tag);

struct Classification {
  std::optional<Pattern> pattern;  // empty when the best weight is not above the threshold
  double weight = 0.0;             // squared-amplitude weight of the best pattern
  double adjacent_fraction = 0.0;  // share of that weight on adjacent two-clump configurations
  Adjacency adjacency = Adjacency::not_applicable;

  bool classified() const noexcept { return pattern.has_value(); }
};

/// Classifies a normalized vector over the Bloch kets of a momentum basis.
Classification classify_state(const MomentumBasis& basis, const Eigen::VectorXcd& vector,
                              double threshold = kDefaultClassificationThreshold);

/// Same, for a vector over plain occupation states.
Classification classify_state(std::span<const FockState> states, const Eigen::VectorXcd& vector,
                              double threshold = kDefaultClassificationThreshold);

/// Squared-amplitude weight of a vector on the orbits matching a pattern.
double pattern_weight(const MomentumBasis& basis, const Eigen::VectorXcd& vector,
                      const Pattern& pattern);

struct BandState {
  int index = 0;  // position in the block's ascending spectrum
  double energy = 0.0;
  double weight = 0.0;
  double adjacent_fraction = 0.0;
  BandTag tag = BandTag::continuum;
  std::optional<double> pt_energy;
};

struct BandMomentum {
  MomentumIndex k;
  std::vector<BandState> states;  // ascending energy
  std::size_t expected = 0;       // orbits of the pattern compatible with k
  std::optional<double> pt_max_residual;
  std::optional<double> pt_mean_residual;

  std::vector<double> energies(BandTag tag) const;
};

struct BandReport {
  Pattern pattern;
  double threshold = kDefaultClassificationThreshold;
  std::vector<BandMomentum> per_k;
  bool overlap = false;  // some k selected a different number of states than expected
  bool pt_applied = false;
  std::vector<std::string> warnings;

  /// Throws BandOverlapError when the band is incomplete at some k.
  void require_complete() const;
  std::optional<double> pt_max_residual() const;
};

/// Selects, per momentum, the eigenstates classified as the pattern and tags them
/// line (largest component has adjacent clumps), continuum, or merged (degenerate partner
/// inside the band). Needs eigenvectors in the spectrum.
BandReport extract_band(const SectorSpectrum& spectrum, const Pattern& pattern,
                        double threshold = kDefaultClassificationThreshold);

/// Fills pt_energy and per-k residuals from second-order perturbation theory.
/// Propagates ValidationError (even f) and ResonanceError.
void attach_pt(BandReport& report, const ModelParams& params);

struct DispersionSample {
  double k = 0.0;
  double energy = 0.0;
};

struct EffectiveMass {
  double mass = 0.0;       // from the quartic through the five central points
  double mass_fd = 0.0;    // from the symmetric second difference
  double curvature = 0.0;  // d^2E/dk^2 at k = 0 (quartic)
};

/// m* = 1 / E''(0) from the five samples nearest k = 0 on a uniform grid.
/// The quartic and finite-difference estimates must agree within 2%.
EffectiveMass effective_mass(std::span<const DispersionSample> samples);

struct EffectiveMassReport {
  double m2_star = 0.0;   // single doublet, n = 2
  double m22_star = 0.0;  // adjacent pair of doublets, n = 4 line band
  double ratio = 0.0;     // m22_star / (2 m2_star)
  double gamma_prediction = 0.0;
};

/// Fits both masses from exact spectra on an f-site ring (f >= 17, odd).
EffectiveMassReport effective_mass_report(const ModelParams& params,
                                          double threshold = kDefaultClassificationThreshold,
                                          int threads = 0);

}  // namespace breather
