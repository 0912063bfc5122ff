#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "breather/fock_basis.hpp"
#include "breather/hamiltonian.hpp"
#include "breather/pattern.hpp"

// Second-order degenerate perturbation theory for two-clump bands on an odd ring
// f = 2*sigma + 1. Closed-form effective matrices return the O(epsilon^2)
// correction only; add zeroth_order_energy() for band energies.
//
// Phase convention: Bloch kets use exp(-ikt) T^t with T shifting bosons to higher
// site indices. In this gauge the hopping entries carry exp(-ik/2) cos(k/2) below
// the diagonal.

namespace breather {

/// E_s = -gamma1 s(s-1) + gamma2 s(s-1)(s-2): energy of s bosons alone on a site.
double onsite_energy(int s, double gamma1, double gamma2);

/// Energy of the pattern at zero hopping.
double zeroth_order_energy(const Pattern& pattern, const ModelParams& params);

/// Denominators below 1e-6 * max(gamma1, gamma2, 1) are rejected as resonant.
double resonance_floor(const ModelParams& params);

/// Warning text when the smallest denominator is below 10*epsilon (PT of doubtful validity).
std::optional<std::string> validity_warning(const ModelParams& params, double smallest_denominator);

struct PTCoefficients22 {
  int sigma = 0;
  double gamma = 0.0;      // (3 g2 - 4 g1) / (g1 - 3 g2)
  double prefactor = 0.0;  // 4 eps^2 / (E_2 - 2 E_1)
  double shift = 0.0;      // 8 eps^2 / (E_2 - 2 E_1)
  double smallest_denominator = 0.0;

  /// exp(ik/2) cos(k/2)
  std::complex<double> kappa(double k) const;
  /// cos(sigma k)
  double p(double k) const;

  static PTCoefficients22 from(const ModelParams& params);
};

struct PTCoefficients42 {
  double d = 0.0;          // uniform shift, in units of eps^2
  double gamma = 0.0;      // end-site impurity
  double prefactor = 0.0;  // -eps^2 / g1
  double corner_scale = 0.0;  // 6 g1 / (g1 - 6 g2)
  double smallest_denominator = 0.0;

  /// 6 g1 exp(ik) / (g1 - 6 g2): second-order |42> -> |33> -> |24> coupling.
  std::complex<double> p(double k) const;

  static PTCoefficients42 from(const ModelParams& params);
};

struct PTCoefficients33 {
  double prefactor = 0.0;  // 6 eps^2 / (3 g2 - 2 g1)
  double gamma = 0.0;      // (9/2)(2 g2 - g1) / (g1 - 6 g2)
  double smallest_denominator = 0.0;

  static PTCoefficients33 from(const ModelParams& params);
};

/// sigma x sigma effective matrix of the {2,2} band over separations j = 1..sigma.
HermitianMatrix h22_matrix(const ModelParams& params, MomentumIndex k);

/// 2sigma x 2sigma effective matrix of the {4,2} band; index j-1 holds the state
/// with the 2-clump j sites clockwise of the 4-clump (j = 1 is |42>, j = 2sigma is |24>).
HermitianMatrix h42_matrix(const ModelParams& params, MomentumIndex k);

/// Diagonal, k-independent effective matrix of the {3,3} band.
HermitianMatrix h33_matrix(const ModelParams& params, MomentumIndex k);

enum class LineStatus { present, absent, singular_gamma };

/// Infinite-ring {2,2} band at fixed k.
struct AsymptoticBand22 {
  double k = 0.0;
  LineStatus status = LineStatus::absent;
  std::optional<double> line;
  double base = 0.0;        // 2 E_2
  double shift = 0.0;       // 8 eps^2 / (E_2 - 2 E_1)
  double cos_half_k = 0.0;  // |cos(k/2)|

  double continuum(double theta) const;
  /// Closure of the continuum over theta in (0, pi).
  double continuum_min() const;
  double continuum_max() const;
};

AsymptoticBand22 band22_asymptotic(const ModelParams& params, double k);

/// {4,2} continuum E_c(theta); independent of k.
double continuum42(const ModelParams& params, double theta);

/// Bloch-symmetrized canonical representatives of a two-clump or single-clump
/// pattern on the ring, in the basis order used by the closed-form matrices.
std::vector<TranslationOrbit> pattern_classes(int f, const Pattern& pattern);

/// Generic second-order Brillouin-Wigner block over the Bloch kets of the given
/// orbits, assembled numerically from single hops. Returns first- plus
/// second-order terms; the common zeroth-order energy is excluded.
HermitianMatrix bw_second_order_block(const ModelParams& params, MomentumIndex k,
                                      const std::vector<TranslationOrbit>& classes);

/// True when a closed-form matrix exists for the pattern ({2,2}, {4,2}, {3,3}).
bool has_closed_form(const Pattern& pattern);

/// Closed-form matrix for a supported pattern, or the generic Brillouin-Wigner
/// block over pattern_classes() otherwise.
HermitianMatrix pt_matrix(const ModelParams& params, const Pattern& pattern, MomentumIndex k);

/// Ascending second-order band energies (zeroth order included) at one momentum.
Eigen::VectorXd pt_band_energies(const ModelParams& params, const Pattern& pattern,
                                 MomentumIndex k);

/// Throws ValidationError unless f is odd and at least 3.
void require_odd_ring(int f);

}  // namespace breather
