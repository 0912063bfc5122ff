#include <doctest.h>

#include <cmath>
#include <random>

#include "breather/errors.hpp"
#include "breather/hamiltonian.hpp"
#include "breather/sector_solver.hpp"
#include "support.hpp"

using namespace breather;
using breather::testing::max_abs_diff;

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

}  // namespace

TEST_SUITE("hamiltonian") {

TEST_CASE("diagonal energy") {
  CHECK(diagonal_energy(FockState{2}, params(1, 2, 10, 0, 0)) == doctest::Approx(-20));
  CHECK(diagonal_energy(FockState{4}, params(1, 4, 10, 7.5, 0)) == doctest::Approx(60));
  CHECK(diagonal_energy(FockState{2, 2}, params(2, 4, 10, 0, 0)) == doctest::Approx(-40));
}

TEST_CASE("h1 ignores and rejects the cubic term") {
  auto p = params(3, 3, 10, 0, 0.5);
  p.model = Model::H1;
  CHECK_NOTHROW(p.validate());
  p.gamma2 = 1.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  CHECK(model_from_string("h1") == Model::H1);
  CHECK_THROWS_AS(model_from_string("h3"), ValidationError);
}

TEST_CASE("hop elements") {
  const auto a = hop_element(FockState{2, 0}, 0, +1);
  REQUIRE(a);
  CHECK(a->dst == FockState{1, 1});
  CHECK(a->amp == doctest::Approx(std::sqrt(2.0)));

  const auto b = hop_element(FockState{3, 1}, 0, +1);
  REQUIRE(b);
  CHECK(b->dst == FockState{2, 2});
  CHECK(b->amp == doctest::Approx(std::sqrt(6.0)));

  const auto c = hop_element(FockState{1, 1}, 0, +1);
  REQUIRE(c);
  CHECK(c->dst == FockState{0, 2});
  CHECK(c->amp == doctest::Approx(std::sqrt(2.0)));

  CHECK_FALSE(hop_element(FockState{0, 3}, 0, +1));
  const auto wrap = hop_element(FockState{0, 0, 1}, 2, +1);
  REQUIRE(wrap);
  CHECK(wrap->dst == FockState{1, 0, 0});
}

TEST_CASE("two-site ring doubles the bond") {
  const auto full = full_matrix(params(2, 2, 0, 0, 1));
  const auto values = full_spectrum(params(2, 2, 0, 0, 1), kDefaultDenseCap);
  REQUIRE(values.size() == 3);
  CHECK(values[0] == doctest::Approx(-4));
  CHECK(values[1] == doctest::Approx(0).epsilon(1e-12));
  CHECK(values[2] == doctest::Approx(4));
  CHECK(full(0, 1) == doctest::Approx(-2 * std::sqrt(2.0)));
}

TEST_CASE("zero hopping is diagonal") {
  const auto p = params(5, 3, 3.0, 1.0, 0.0);
  const auto full = full_matrix(p);
  const auto states = enumerate_sector(5, 3);
  for (Eigen::Index i = 0; i < full.rows(); ++i) {
    for (Eigen::Index j = 0; j < full.cols(); ++j) {
      if (i == j) CHECK(full(i, i) == doctest::Approx(diagonal_energy(states[i], p)));
      else CHECK(full(i, j) == 0.0);
    }
  }
  for (const auto& k : momentum_grid(5)) {
    const auto block = assemble_block(p, momentum_basis(5, 3, k));
    for (Eigen::Index i = 0; i < block.matrix.rows(); ++i) {
      CHECK(block.matrix(i, i).real() ==
            doctest::Approx(diagonal_energy(block.basis.orbit(i).rep, p)));
      for (Eigen::Index j = 0; j < block.matrix.cols(); ++j) {
        if (i != j) CHECK(std::abs(block.matrix(i, j)) == 0.0);
      }
    }
  }
}

TEST_CASE("full trace equals sum of diagonal energies") {
  const auto p = params(6, 4, 2.0, 0.7, 0.9);
  double expected = 0.0;
  for (const auto& s : enumerate_sector(6, 4)) expected += diagonal_energy(s, p);
  CHECK(full_matrix(p).trace() == doctest::Approx(expected));
}

TEST_CASE("blocks are exactly Hermitian") {
  const auto p = params(7, 4, 3.0, 1.0, 0.8);
  for (const auto& k : momentum_grid(7)) {
    const auto block = assemble_block(p, momentum_basis(7, 4, k));
    CHECK(block.matrix == block.matrix.adjoint());
  }
}

TEST_CASE("block dimension at f=19 n=4") {
  const auto p = params(19, 4, 10, 0, 0.5);
  CHECK(assemble_block(p, momentum_basis(19, 4, MomentumIndex(3, 19))).matrix.rows() == 385);
}

TEST_CASE("capacity limits") {
  CHECK_THROWS_AS(full_matrix(params(19, 4, 10, 0, 0.5)), CapacityError);
  CHECK_THROWS_AS(assemble_block(params(19, 4, 10, 0, 0.5),
                                 momentum_basis(19, 4, MomentumIndex(0, 19)), 100),
                  CapacityError);
}

TEST_CASE("spectrum union and trace identity") {
  std::mt19937 rng(20261019);
  for (int f = 2; f <= 6; ++f) {
    for (int n = 1; n <= 4; ++n) {
      for (int trial = 0; trial < 3; ++trial) {
        const auto p = breather::testing::random_params(rng, f, n);
        const auto full = full_matrix(p);
        const auto sector = solve_sector_serial(p);
        const double scale = std::max(1.0, full.cwiseAbs().maxCoeff());
        CHECK(max_abs_diff(sector.all_eigenvalues(), full_spectrum(p, kDefaultDenseCap)) <=
              1e-9 * scale);
        double trace = 0.0;
        for (const auto& b : sector.blocks) trace += b.trace;
        CHECK(std::abs(trace - full.trace()) <= 1e-10 * std::max(1.0, std::abs(full.trace())));
      }
    }
  }
}

TEST_CASE("k and -k share a spectrum") {
  const auto p = params(9, 4, 4.0, 1.5, 0.7);
  auto sector = std::make_shared<const Sector>(9, 4);
  for (const auto& k : momentum_grid(9)) {
    const auto a = eigh(assemble_block(p, momentum_basis(sector, k)).matrix).eigenvalues;
    const auto b = eigh(assemble_block(p, momentum_basis(sector, k.negated())).matrix).eigenvalues;
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, a.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("gamma2 monotonicity at zero hopping") {
  const auto low = params(5, 4, 3.0, 0.5, 0.0);
  auto high = low;
  high.gamma2 = 2.0;
  for (const auto& s : enumerate_sector(5, 4)) {
    const bool has_triple = *std::max_element(s.occ.begin(), s.occ.end()) >= 3;
    if (has_triple) CHECK(diagonal_energy(s, high) > diagonal_energy(s, low));
    else CHECK(diagonal_energy(s, high) == diagonal_energy(s, low));
  }
}

}
