#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "breather/eigensolve.hpp"
#include "breather/fock_basis.hpp"
#include "breather/hamiltonian.hpp"

namespace breather {

struct SolveOptions {
  bool want_vectors = false;
  int threads = 0;  // 0: OpenMP default
  std::uint64_t max_block_dim = kDefaultDenseCap;
};

struct MomentumSpectrum {
  MomentumBasis basis;
  Spectrum spectrum;
  double trace = 0.0;  // real trace of the block
};

/// Exact spectrum of every momentum block, ordered like momentum_grid(f).
struct SectorSpectrum {
  ModelParams params;
  std::shared_ptr<const Sector> sector;
  std::vector<MomentumSpectrum> blocks;

  double ground_energy() const;
  /// All eigenvalues of all blocks, ascending.
  std::vector<double> all_eigenvalues() const;
};

/// OpenMP-parallel over momenta. Output does not depend on the thread count.
SectorSpectrum solve_sector(const ModelParams& params, const SolveOptions& options = {});

/// Single-threaded reference of solve_sector.
SectorSpectrum solve_sector_serial(const ModelParams& params, const SolveOptions& options = {});

/// Sorted spectrum of the unsymmetrized dense matrix (brute-force oracle).
std::vector<double> full_spectrum(const ModelParams& params, std::uint64_t dense_cap);

/// Number of OpenMP threads available (1 without OpenMP).
int max_threads();

}  // namespace breather
