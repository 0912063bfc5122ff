#include "breather/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "breather/errors.hpp"

namespace breather {

namespace {

constexpr int kMaxQlSweepsPerEigenvalue = 60;

template <typename Matrix>
void require_hermitian(const Matrix& matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw ValidationError("eigh: matrix is " + std::to_string(matrix.rows()) + "x" +
                          std::to_string(matrix.cols()) + ", not square");
  }
  const double scale = matrix.cwiseAbs().maxCoeff();
  if (!std::isfinite(scale)) throw ValidationError("eigh: matrix has non-finite entries");
  const double asym = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermiticityTolerance * scale) {
    throw ValidationError("eigh: matrix is not Hermitian (max |H - H^dagger| = " +
                          std::to_string(asym) + ")");
  }
}

template <typename Matrix>
Spectrum solve(const Matrix& matrix, bool want_vectors) {
  Spectrum out;
  if (matrix.rows() == 0) {
    out.eigenvalues = Eigen::VectorXd();
    if (want_vectors) out.eigenvectors = Eigen::MatrixXcd();
    return out;
  }
  require_hermitian(matrix);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      matrix, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigh: eigensolver did not converge (dimension " +
                         std::to_string(matrix.rows()) + ")");
  }
  out.eigenvalues = solver.eigenvalues();
  if (want_vectors) {
    Eigen::MatrixXcd vectors = solver.eigenvectors().template cast<std::complex<double>>();
    const Eigen::MatrixXcd residual =
        matrix.template cast<std::complex<double>>() * vectors -
        vectors * out.eigenvalues.template cast<std::complex<double>>().asDiagonal();
    out.residual_bound = residual.colwise().norm().maxCoeff();
    const double frobenius = matrix.norm();
    if (out.residual_bound > kResidualTolerance * std::max(frobenius, 1e-300)) {
      throw NumericalError("eigh: residual " + std::to_string(out.residual_bound) +
                           " exceeds the contract bound");
    }
    out.eigenvectors = std::move(vectors);
  }
  return out;
}

}  // namespace

Spectrum eigh(const Eigen::MatrixXcd& matrix, bool want_vectors) {
  return solve(matrix, want_vectors);
}

Spectrum eigh(const Eigen::MatrixXd& matrix, bool want_vectors) {
  return solve(matrix, want_vectors);
}

Eigen::MatrixXcd materialize_tridiag_plus_corners(std::span<const double> diag,
                                                  std::span<const std::complex<double>> offdiag,
                                                  std::complex<double> corner) {
  const auto m = static_cast<Eigen::Index>(diag.size());
  if (m == 0) throw ValidationError("tridiagonal matrix must have size >= 1");
  if (offdiag.size() + 1 != diag.size()) {
    throw ValidationError("tridiagonal matrix: need size-1 off-diagonal entries");
  }
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) h(i, i) = diag[static_cast<std::size_t>(i)];
  for (Eigen::Index i = 0; i + 1 < m; ++i) {
    h(i + 1, i) += offdiag[static_cast<std::size_t>(i)];
    h(i, i + 1) += std::conj(offdiag[static_cast<std::size_t>(i)]);
  }
  if (m == 1) {
    h(0, 0) += 2.0 * corner.real();
  } else {
    h(0, m - 1) += corner;
    h(m - 1, 0) += std::conj(corner);
  }
  return h;
}

Eigen::VectorXd eigvals_tridiag_plus_corners(std::span<const double> diag,
                                             std::span<const std::complex<double>> offdiag,
                                             std::complex<double> corner) {
  if (corner != std::complex<double>{}) {
    return eigh(materialize_tridiag_plus_corners(diag, offdiag, corner)).eigenvalues;
  }
  if (diag.empty()) throw ValidationError("tridiagonal matrix must have size >= 1");
  if (offdiag.size() + 1 != diag.size()) {
    throw ValidationError("tridiagonal matrix: need size-1 off-diagonal entries");
  }
  // A diagonal unitary gauge maps every off-diagonal entry to its modulus.
  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(offdiag.size());
  std::transform(offdiag.begin(), offdiag.end(), e.begin(),
                 [](std::complex<double> z) { return std::abs(z); });
  return symmetric_tridiagonal_eigenvalues(std::move(d), std::move(e));
}

Eigen::VectorXd symmetric_tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e) {
  const std::size_t n = d.size();
  if (n == 0) return {};
  if (e.size() + 1 != n) throw ValidationError("tridiagonal QL: need n-1 off-diagonal entries");
  e.push_back(0.0);

  for (std::size_t l = 0; l < n; ++l) {
    int sweeps = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m == l) break;
      if (++sweeps > kMaxQlSweepsPerEigenvalue) {
        throw NumericalError("tridiagonal QL did not converge");
      }
      // Wilkinson-style shift from the leading 2x2 block.
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool deflated = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return Eigen::Map<const Eigen::VectorXd>(d.data(), static_cast<Eigen::Index>(n));
}

}  // namespace breather
