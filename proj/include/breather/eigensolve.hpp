#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace breather {

/// Residual contract: ||H v - lambda v||_2 <= kResidualTolerance * ||H||_F for every pair.
inline constexpr double kResidualTolerance = 1e-10;
/// Hermiticity precondition: max |H - H^dagger| <= kHermiticityTolerance * max |H|.
inline constexpr double kHermiticityTolerance = 1e-12;

struct Spectrum {
  Eigen::VectorXd eigenvalues;                  // ascending
  std::optional<Eigen::MatrixXcd> eigenvectors; // columns, when requested
  double residual_bound = 0.0;                  // max_i ||H v_i - lambda_i v_i|| (0 without vectors)
};

/// Dense Hermitian eigendecomposition. Throws ValidationError for non-Hermitian
/// input and NumericalError when the solver fails or the residual contract is missed.
Spectrum eigh(const Eigen::MatrixXcd& matrix, bool want_vectors = false);
Spectrum eigh(const Eigen::MatrixXd& matrix, bool want_vectors = false);

/// Eigenvalues of the Hermitian matrix with the given real diagonal, sub-diagonal
/// entries (i+1, i) = offdiag[i] (super-diagonal conjugated) and corner entry
/// (0, m-1) = corner, (m-1, 0) = conj(corner). Corners add onto the band when m <= 2.
Eigen::VectorXd eigvals_tridiag_plus_corners(std::span<const double> diag,
                                             std::span<const std::complex<double>> offdiag,
                                             std::complex<double> corner = {});

/// The matrix that eigvals_tridiag_plus_corners diagonalizes.
Eigen::MatrixXcd materialize_tridiag_plus_corners(std::span<const double> diag,
                                                  std::span<const std::complex<double>> offdiag,
                                                  std::complex<double> corner = {});

/// Implicit-shift QL on a real symmetric tridiagonal matrix; eigenvalues ascending.
Eigen::VectorXd symmetric_tridiagonal_eigenvalues(std::vector<double> diag,
                                                  std::vector<double> offdiag);

}  // namespace breather
