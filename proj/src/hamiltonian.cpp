#include "breather/hamiltonian.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "breather/errors.hpp"

namespace breather {

std::string to_string(Model model) { return model == Model::H1 ? "h1" : "h2"; }

Model model_from_string(const std::string& name) {
  if (name == "h1" || name == "H1") return Model::H1;
  if (name == "h2" || name == "H2") return Model::H2;
  throw ValidationError("unknown model '" + name + "' (expected h1 or h2)");
}

void ModelParams::validate() const {
  if (f < 2) throw ValidationError("f must be >= 2, got " + std::to_string(f));
  if (n < 0) throw ValidationError("n must be >= 0, got " + std::to_string(n));
  auto check = [](const char* name, double value) {
    if (!std::isfinite(value)) throw ValidationError(std::string(name) + " must be finite");
    if (value < 0.0) throw ValidationError(std::string(name) + " must be >= 0");
  };
  check("gamma1", gamma1);
  check("gamma2", gamma2);
  check("epsilon", epsilon);
  if (model == Model::H1 && gamma2 != 0.0) {
    throw ValidationError("model h1 has no three-body term; use model h2 for gamma2 != 0");
  }
}

double diagonal_energy(const FockState& state, const ModelParams& params) {
  const double g2 = params.effective_gamma2();
  double energy = 0.0;
  for (int o : state.occ) {
    const double m = o;
    energy += -params.gamma1 * m * (m - 1.0) + g2 * m * (m - 1.0) * (m - 2.0);
  }
  return energy;
}

std::optional<Hop> hop_element(const FockState& src, int s, int dir) {
  const int f = src.sites();
  const int from = ((s % f) + f) % f;
  const int to = ((from + dir) % f + f) % f;
  const int n_from = src[from];
  if (n_from == 0) return std::nullopt;
  Hop hop{src, std::sqrt(static_cast<double>(n_from) * static_cast<double>(src[to] + 1))};
  hop.dst.occ[static_cast<std::size_t>(from)] -= 1;
  hop.dst.occ[static_cast<std::size_t>(to)] += 1;
  return hop;
}

std::uint64_t dense_cap_from_env() {
  if (const char* env = std::getenv("BREATHER_DENSE_CAP")) {
    char* end = nullptr;
    const unsigned long long cap = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      throw ValidationError(std::string("BREATHER_DENSE_CAP is not an integer: ") + env);
    }
    return cap;
  }
  return kDefaultDenseCap;
}

MomentumBlock assemble_block(const ModelParams& params, const MomentumBasis& basis,
                             std::uint64_t max_dim) {
  const Sector& sector = *basis.sector;
  if (sector.f() != params.f || sector.n() != params.n) {
    throw ValidationError("basis sector does not match the model parameters");
  }
  const std::size_t dim = basis.dim();
  if (dim > max_dim) {
    throw CapacityError("momentum block of dimension " + std::to_string(dim) +
                        " exceeds the cap of " + std::to_string(max_dim));
  }
  const double k = basis.k.k();

  HermitianMatrix h = HermitianMatrix::Zero(static_cast<Eigen::Index>(dim),
                                            static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    const TranslationOrbit& orbit = basis.orbit(col);
    h(static_cast<Eigen::Index>(col), static_cast<Eigen::Index>(col)) +=
        diagonal_energy(orbit.rep, params);
    if (params.epsilon == 0.0) continue;
    for (int s = 0; s < params.f; ++s) {
      for (int dir : {+1, -1}) {
        const auto hop = hop_element(orbit.rep, s, dir);
        if (!hop) continue;
        const std::size_t r = sector.rank(hop->dst);
        const int row = basis.local_index[sector.orbit_index(r)];
        if (row < 0) continue;  // image orbit carries no weight at this k
        const int u = sector.shift(r);
        const int d_row = basis.orbit(static_cast<std::size_t>(row)).period;
        const double norm = std::sqrt(static_cast<double>(orbit.period) / d_row);
        h(row, static_cast<Eigen::Index>(col)) +=
            -params.epsilon * hop->amp * norm * std::polar(1.0, k * u);
      }
    }
  }
  // Average with the adjoint.
  HermitianMatrix adj = h.adjoint();
  h = (h + adj) * 0.5;
  return {basis, std::move(h)};
}

RealSymmetricMatrix full_matrix(const ModelParams& params, std::uint64_t dense_cap) {
  const std::uint64_t dim = sector_dimension(params.f, params.n);
  if (dim > dense_cap) {
    throw CapacityError("full sector has " + std::to_string(dim) +
                        " states, above the dense cap of " + std::to_string(dense_cap));
  }
  const Sector sector(params.f, params.n);
  const auto size = static_cast<Eigen::Index>(sector.size());
  RealSymmetricMatrix h = RealSymmetricMatrix::Zero(size, size);
  for (std::size_t col = 0; col < sector.size(); ++col) {
    const FockState& state = sector.state(col);
    const auto c = static_cast<Eigen::Index>(col);
    h(c, c) += diagonal_energy(state, params);
    for (int s = 0; s < params.f; ++s) {
      // a+_{s+1} a_s and its conjugate a+_s a_{s+1}; on f = 2 both bonds land on the same pair
      for (int dir : {+1, -1}) {
        if (const auto hop = hop_element(state, s, dir)) {
          h(static_cast<Eigen::Index>(sector.rank(hop->dst)), c) -= params.epsilon * hop->amp;
        }
      }
    }
  }
  return h;
}

RealSymmetricMatrix full_matrix(const ModelParams& params) {
  return full_matrix(params, dense_cap_from_env());
}

}  // namespace breather
