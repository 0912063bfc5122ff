#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <iostream>

#include "breather/sector_solver.hpp"

namespace {

template <class F>
double seconds(F&& body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double max_difference(const breather::SectorSpectrum& a, const breather::SectorSpectrum& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    const auto& x = a.blocks[i].spectrum.eigenvalues;
    const auto& y = b.blocks[i].spectrum.eigenvalues;
    worst = std::max(worst, (x - y).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial versus OpenMP momentum-block sweep"};
  breather::ModelParams params{.f = 19, .n = 4, .gamma1 = 10.0, .gamma2 = 0.0, .epsilon = 0.5};
  int threads = 0;
  int repeats = 3;
  bool vectors = false;
  app.add_option("--f", params.f);
  app.add_option("--n", params.n);
  app.add_option("--gamma1", params.gamma1);
  app.add_option("--gamma2", params.gamma2);
  app.add_option("--eps", params.epsilon);
  app.add_option("--threads", threads, "0: runtime default");
  app.add_option("--repeats", repeats)->check(CLI::PositiveNumber);
  app.add_flag("--vectors", vectors, "also compute eigenvectors");
  CLI11_PARSE(app, argc, argv);

  breather::SolveOptions options;
  options.want_vectors = vectors;
  options.threads = threads;

  double serial_best = INFINITY;
  double parallel_best = INFINITY;
  breather::SectorSpectrum serial;
  breather::SectorSpectrum parallel;
  for (int r = 0; r < repeats; ++r) {
    serial_best = std::min(serial_best, seconds([&] { serial = solve_sector_serial(params, options); }));
    parallel_best = std::min(parallel_best, seconds([&] { parallel = solve_sector(params, options); }));
  }

  std::cout << "f=" << params.f << " n=" << params.n << " blocks=" << serial.blocks.size()
            << " dim=" << serial.sector->size() << '\n'
            << "threads=" << (threads > 0 ? threads : breather::max_threads()) << '\n'
            << "serial_s=" << serial_best << '\n'
            << "parallel_s=" << parallel_best << '\n'
            << "speedup=" << serial_best / parallel_best << '\n'
            << "max_abs_diff=" << max_difference(serial, parallel) << '\n';
  return max_difference(serial, parallel) == 0.0 ? 0 : 1;
}
