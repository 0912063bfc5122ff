#include "breather/sector_solver.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace breather {

namespace {

MomentumSpectrum solve_block(const ModelParams& params, std::shared_ptr<const Sector> sector,
                             MomentumIndex k, const SolveOptions& options) {
  MomentumBasis basis = momentum_basis(std::move(sector), k);
  MomentumBlock block = assemble_block(params, basis, options.max_block_dim);
  MomentumSpectrum out{std::move(block.basis), eigh(block.matrix, options.want_vectors),
                       block.matrix.trace().real()};
  return out;
}

SectorSpectrum prepare(const ModelParams& params) {
  params.validate();
  return SectorSpectrum{params, std::make_shared<const Sector>(params.f, params.n), {}};
}

}  // namespace

double SectorSpectrum::ground_energy() const {
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& block : blocks) {
    if (block.spectrum.eigenvalues.size() > 0) {
      lowest = std::min(lowest, block.spectrum.eigenvalues.minCoeff());
    }
  }
  return lowest;
}

std::vector<double> SectorSpectrum::all_eigenvalues() const {
  std::vector<double> values;
  for (const auto& block : blocks) {
    const auto& ev = block.spectrum.eigenvalues;
    values.insert(values.end(), ev.data(), ev.data() + ev.size());
  }
  std::sort(values.begin(), values.end());
  return values;
}

SectorSpectrum solve_sector(const ModelParams& params, const SolveOptions& options) {
  SectorSpectrum result = prepare(params);
  const std::vector<MomentumIndex> grid = momentum_grid(params.f);
  std::vector<std::optional<MomentumSpectrum>> slots(grid.size());
  std::exception_ptr failure;
  const int count = static_cast<int>(grid.size());

#ifdef _OPENMP
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
  for (int i = 0; i < count; ++i) {
    try {
      slots[static_cast<std::size_t>(i)] =
          solve_block(params, result.sector, grid[static_cast<std::size_t>(i)], options);
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical(breather_solve_failure)
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  result.blocks.reserve(grid.size());
  for (auto& slot : slots) result.blocks.push_back(std::move(*slot));
  return result;
}

SectorSpectrum solve_sector_serial(const ModelParams& params, const SolveOptions& options) {
  SectorSpectrum result = prepare(params);
  for (const MomentumIndex& k : momentum_grid(params.f)) {
    result.blocks.push_back(solve_block(params, result.sector, k, options));
  }
  return result;
}

std::vector<double> full_spectrum(const ModelParams& params, std::uint64_t dense_cap) {
  params.validate();
  const Eigen::VectorXd ev = eigh(full_matrix(params, dense_cap)).eigenvalues;
  return {ev.data(), ev.data() + ev.size()};
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace breather
