#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "breather/fock_basis.hpp"

namespace breather {

using cplx = std::complex<double>;
using HermitianMatrix = Eigen::MatrixXcd;
using RealSymmetricMatrix = Eigen::MatrixXd;

inline constexpr std::uint64_t kDefaultDenseCap = 4000;

enum class Model { H1, H2 };

std::string to_string(Model model);
Model model_from_string(const std::string& name);

/// Ring of f sites with n bosons:
///   H = sum_s [ -gamma1 n_s(n_s-1) + gamma2 n_s(n_s-1)(n_s-2) ]
///       - epsilon sum_s (a+_{s+1} a_s + a+_s a_{s+1}).
/// Under Model::H1 the three-body term is absent regardless of gamma2.
struct ModelParams {
  int f = 2;
  int n = 0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double epsilon = 0.0;
  Model model = Model::H2;

  double effective_gamma2() const noexcept { return model == Model::H1 ? 0.0 : gamma2; }

  /// Throws ValidationError on f < 2, n < 0, negative or non-finite couplings,
  /// or a nonzero gamma2 under Model::H1.
  void validate() const;

  bool operator==(const ModelParams&) const = default;
};

/// Zero-hopping energy of a configuration.
double diagonal_energy(const FockState& state, const ModelParams& params);

/// One boson moved from site s to s+dir (mod f) with bosonic amplitude sqrt(n_s (n_t + 1)).
struct Hop {
  FockState dst;
  double amp;
};

/// Empty when site s is unoccupied.
std::optional<Hop> hop_element(const FockState& src, int s, int dir);

/// Dense cap for full_matrix; BREATHER_DENSE_CAP overrides the default.
std::uint64_t dense_cap_from_env();

struct MomentumBlock {
  MomentumBasis basis;
  HermitianMatrix matrix;
};

/// H restricted to one crystal momentum, in the basis of Bloch kets
/// (1/sqrt(d)) sum_{t<d} exp(-ikt) T^t |rep>.
MomentumBlock assemble_block(const ModelParams& params, const MomentumBasis& basis,
                             std::uint64_t max_dim = kDefaultDenseCap);

/// Brute-force matrix over the unsymmetrized sector basis (enumeration order).
RealSymmetricMatrix full_matrix(const ModelParams& params, std::uint64_t dense_cap);
RealSymmetricMatrix full_matrix(const ModelParams& params);

}  // namespace breather
