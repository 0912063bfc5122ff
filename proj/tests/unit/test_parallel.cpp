#include <doctest.h>

#include "breather/sector_solver.hpp"

using namespace breather;

TEST_SUITE("parallel") {

TEST_CASE("parallel sweep matches the serial reference exactly") {
  ModelParams p;
  p.f = 9;
  p.n = 4;
  p.gamma1 = 6.0;
  p.gamma2 = 1.0;
  p.epsilon = 0.7;
  SolveOptions options;
  options.want_vectors = true;
  const auto serial = solve_sector_serial(p, options);
  for (int threads : {1, 2, 4}) {
    options.threads = threads;
    const auto parallel = solve_sector(p, options);
    REQUIRE(parallel.blocks.size() == serial.blocks.size());
    for (std::size_t i = 0; i < serial.blocks.size(); ++i) {
      CHECK(parallel.blocks[i].basis.k == serial.blocks[i].basis.k);
      CHECK(parallel.blocks[i].spectrum.eigenvalues == serial.blocks[i].spectrum.eigenvalues);
      CHECK(parallel.blocks[i].trace == serial.blocks[i].trace);
    }
  }
}

TEST_CASE("errors inside the parallel region propagate") {
  ModelParams p;
  p.f = 19;
  p.n = 4;
  p.gamma1 = 10.0;
  SolveOptions options;
  options.max_block_dim = 100;
  CHECK_THROWS(solve_sector(p, options));
}

}
