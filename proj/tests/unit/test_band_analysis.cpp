#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "breather/band_analysis.hpp"
#include "breather/errors.hpp"
#include "breather/perturbation.hpp"

using namespace breather;
using cplx = std::complex<double>;

namespace {

ModelParams params(int f, int n, double g1, double g2, double eps) {
  ModelParams p;
  p.f = f;
  p.n = n;
  p.gamma1 = g1;
  p.gamma2 = g2;
  p.epsilon = eps;
  return p;
}

std::vector<DispersionSample> sample(int f, auto&& energy) {
  std::vector<DispersionSample> out;
  for (const auto& k : momentum_grid(f)) out.push_back({k.k(), energy(k.k())});
  return out;
}

}  // namespace

TEST_SUITE("band_analysis") {

TEST_CASE("classification of basis states") {
  const std::vector<FockState> separated{FockState{2, 0, 0, 2, 0, 0, 0}};
  const auto a = classify_state(separated, Eigen::VectorXcd::Ones(1));
  REQUIRE(a.classified());
  CHECK(*a.pattern == Pattern{2, 2});
  CHECK(a.weight == doctest::Approx(1.0));
  CHECK(a.adjacency == Adjacency::separated);

  const auto basis = momentum_basis(5, 6, MomentumIndex(2, 5));
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.dim()));
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    if (basis.orbit(i).rep == FockState{3, 3, 0, 0, 0}) v(static_cast<Eigen::Index>(i)) = 1.0;
  }
  REQUIRE(v.norm() == doctest::Approx(1.0));
  const auto b = classify_state(basis, v);
  REQUIRE(b.classified());
  CHECK(*b.pattern == Pattern{3, 3});
  CHECK(b.weight == doctest::Approx(1.0));
  CHECK(b.adjacency == Adjacency::adjacent);

  const std::vector<FockState> tie{FockState{4, 0, 0}, FockState{3, 1, 0}};
  const auto c = classify_state(tie, Eigen::VectorXcd::Constant(2, 1.0 / std::sqrt(2.0)));
  CHECK_FALSE(c.classified());
  CHECK(c.weight == doctest::Approx(0.5));

  CHECK_THROWS_AS(classify_state(tie, Eigen::VectorXcd::Ones(2), 1.5), ValidationError);
}

TEST_CASE("threshold monotonicity") {
  std::mt19937 rng(9);
  std::normal_distribution<double> g;
  const auto basis = momentum_basis(7, 4, MomentumIndex(1, 7));
  const auto dim = static_cast<Eigen::Index>(basis.dim());
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = cplx(g(rng), g(rng)) * std::exp(-0.3 * i);
    v.normalize();
    bool was_classified = true;
    for (double t : {0.05, 0.2, 0.4, 0.5, 0.7, 0.9}) {
      const bool now = classify_state(basis, v, t).classified();
      CHECK((was_classified || !now));
      was_classified = now;
    }
  }
}

TEST_CASE("projection completeness") {
  const auto p = params(7, 4, 10, 0, 0.8);
  SolveOptions options;
  options.want_vectors = true;
  const auto sector = solve_sector(p, options);
  for (const auto& block : sector.blocks) {
    std::size_t expected = 0;
    for (std::size_t i = 0; i < block.basis.dim(); ++i) {
      if (pattern_of(block.basis.orbit(i).rep) == Pattern{2, 2}) ++expected;
    }
    double total = 0.0;
    const auto& vectors = *block.spectrum.eigenvectors;
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
      total += pattern_weight(block.basis, vectors.col(j), Pattern{2, 2});
    }
    CHECK(std::abs(total - static_cast<double>(expected)) <= 1e-8);
  }
}

TEST_CASE("{2,2} band structure at f=19") {
  const auto p = params(19, 4, 10, 0, 0.5);
  SolveOptions options;
  options.want_vectors = true;
  auto band = extract_band(solve_sector(p, options), Pattern{2, 2});
  CHECK_FALSE(band.overlap);
  CHECK_NOTHROW(band.require_complete());
  REQUIRE(band.per_k.size() == 19);
  for (const auto& m : band.per_k) {
    CHECK(m.states.size() == 9);
    const auto lines = m.energies(BandTag::line);
    const auto continuum = m.energies(BandTag::continuum);
    REQUIRE(lines.size() == 1);
    CHECK(continuum.size() == 8);
    CHECK(lines[0] > *std::max_element(continuum.begin(), continuum.end()));
  }
  attach_pt(band, p);
  CHECK(band.pt_applied);
  REQUIRE(band.pt_max_residual());
  CHECK(*band.pt_max_residual() < 5e-3);
}

TEST_CASE("zero hopping merges the whole band") {
  const auto p = params(7, 4, 10, 0, 0.0);
  SolveOptions options;
  options.want_vectors = true;
  const auto band = extract_band(solve_sector(p, options), Pattern{2, 2});
  for (const auto& m : band.per_k) {
    CHECK(m.states.size() == m.expected);
    for (const auto& s : m.states) {
      CHECK(s.tag == BandTag::merged);
      CHECK(s.energy == doctest::Approx(-40));
    }
  }
}

TEST_CASE("band extraction needs vectors and a matching pattern") {
  const auto p = params(5, 4, 10, 0, 0.3);
  CHECK_THROWS_AS(extract_band(solve_sector(p), Pattern{2, 2}), ValidationError);
  SolveOptions options;
  options.want_vectors = true;
  CHECK_THROWS_AS(extract_band(solve_sector(p, options), Pattern{5, 1}), ValidationError);
}

TEST_CASE("effective mass of the analytic line band") {
  const double g1 = 10.0;
  const double eps = 0.1;
  for (double gamma : {-4.0, 1.4}) {
    const double a = 4 * eps * eps / (-2 * g1);
    const auto samples = sample(19, [&](double k) {
      return -40.0 + a * std::pow(std::cos(k / 2), 2) / gamma;
    });
    const auto fit = effective_mass(samples);
    CHECK(fit.mass == doctest::Approx(g1 * gamma / (eps * eps)).epsilon(1e-3));
    CHECK(fit.mass_fd == doctest::Approx(fit.mass).epsilon(0.02));
    CHECK((fit.mass > 0) == (gamma > 0));
  }
}

TEST_CASE("effective mass preconditions") {
  CHECK_THROWS_AS(effective_mass(sample(9, [](double k) { return k * k; })), ValidationError);
  CHECK_THROWS_AS(effective_mass(sample(19, [](double k) { return k + 0.1 * k * k; })),
                  NumericalError);
  std::vector<DispersionSample> few{{0.0, 1.0}, {0.1, 1.1}};
  CHECK_THROWS_AS(effective_mass(few), ValidationError);
  CHECK_THROWS_AS(effective_mass_report(params(11, 4, 10, 0, 0.1)), ValidationError);
}

}
