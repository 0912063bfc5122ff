#include "breather/fock_basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "breather/errors.hpp"

namespace breather {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step
    const std::uint64_t factor = n - k + i;
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t r = result / g;
    const std::uint64_t fac = factor / (i / g);
    if (r != 0 && fac > kMax / r) return kMax;
    result = r * fac;
  }
  return result;
}

std::uint64_t sector_dimension(int f, int n) noexcept {
  if (f < 1 || n < 0) return 0;
  return binomial(static_cast<std::uint64_t>(n + f - 1), static_cast<std::uint64_t>(n));
}

int FockState::bosons() const noexcept { return std::accumulate(occ.begin(), occ.end(), 0); }

std::string FockState::ket() const {
  std::string out = "|";
  for (int o : occ) {
    if (o < 10) {
      out += static_cast<char>('0' + o);
    } else {
      out += '(' + std::to_string(o) + ')';
    }
  }
  out += '>';
  return out;
}

std::size_t FockStateHash::operator()(const FockState& state) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int o : state.occ) {
    h ^= static_cast<std::size_t>(o) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

FockState translate(const FockState& state, int t) {
  const int f = state.sites();
  if (f == 0) return state;
  const int shift = ((t % f) + f) % f;
  FockState out;
  out.occ.resize(state.occ.size());
  for (int s = 0; s < f; ++s) {
    out.occ[static_cast<std::size_t>((s + shift) % f)] = state.occ[static_cast<std::size_t>(s)];
  }
  return out;
}

TranslationOrbit orbit_of(const FockState& state) {
  const int f = state.sites();
  TranslationOrbit orbit{state, f};
  for (int t = 1; t <= f; ++t) {
    FockState rotated = translate(state, t);
    if (rotated == state) {
      orbit.period = t;
      break;
    }
    if (rotated > orbit.rep) orbit.rep = std::move(rotated);
  }
  return orbit;
}

int shift_from_rep(const TranslationOrbit& orbit, const FockState& state) {
  for (int u = 0; u < orbit.period; ++u) {
    if (translate(orbit.rep, u) == state) return u;
  }
  throw ValidationError("state " + state.ket() + " is not in the orbit of " + orbit.rep.ket());
}

namespace {

void check_sector(int f, int n, std::uint64_t max_states) {
  if (f < 2) throw ValidationError("site count f must be >= 2, got " + std::to_string(f));
  if (n < 0) throw ValidationError("boson count n must be >= 0, got " + std::to_string(n));
  const std::uint64_t dim = sector_dimension(f, n);
  if (dim > max_states) {
    throw CapacityError("sector (f=" + std::to_string(f) + ", n=" + std::to_string(n) +
                        ") has " + std::to_string(dim) + " states, above the cap of " +
                        std::to_string(max_states));
  }
}

}  // namespace

std::vector<FockState> enumerate_sector(int f, int n, std::uint64_t max_states) {
  check_sector(f, n, max_states);
  std::vector<FockState> states;
  states.reserve(static_cast<std::size_t>(sector_dimension(f, n)));

  std::vector<int> occ(static_cast<std::size_t>(f), 0);
  // Depth-first with the larger occupation first gives reverse-lexicographic order.
  auto fill = [&](auto&& self, int site, int remaining) -> void {
    if (site == f - 1) {
      occ[static_cast<std::size_t>(site)] = remaining;
      states.emplace_back(occ);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      occ[static_cast<std::size_t>(site)] = v;
      self(self, site + 1, remaining - v);
    }
  };
  fill(fill, 0, n);
  return states;
}

MomentumIndex::MomentumIndex(int l, int f) : l_(0), f_(f) {
  if (f < 1) throw ValidationError("momentum grid needs f >= 1");
  l_ = ((l % f) + f) % f;
}

int MomentumIndex::centered() const noexcept { return 2 * l_ > f_ ? l_ - f_ : l_; }

double MomentumIndex::k() const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(centered()) / static_cast<double>(f_);
}

std::vector<MomentumIndex> momentum_grid(int f) {
  std::vector<MomentumIndex> grid;
  grid.reserve(static_cast<std::size_t>(f));
  const int lo = -((f - 1) / 2);
  for (int l = lo; l < lo + f; ++l) grid.emplace_back(l, f);
  return grid;
}

Sector::Sector(int f, int n, std::uint64_t max_states)
    : f_(f), n_(n), states_(enumerate_sector(f, n, max_states)) {
  constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();
  orbit_of_state_.assign(states_.size(), kUnassigned);
  shift_of_state_.assign(states_.size(), 0);
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (orbit_of_state_[i] != kUnassigned) continue;
    // The first unassigned state in reverse-lexicographic order is its orbit's maximum.
    TranslationOrbit orbit = orbit_of(states_[i]);
    const std::size_t id = orbits_.size();
    for (int u = 0; u < orbit.period; ++u) {
      const std::size_t r = rank(translate(orbit.rep, u));
      orbit_of_state_[r] = id;
      shift_of_state_[r] = u;
    }
    orbits_.push_back(std::move(orbit));
  }
}

std::size_t Sector::rank(const FockState& state) const {
  if (state.sites() != f_ || state.bosons() != n_ ||
      std::any_of(state.occ.begin(), state.occ.end(), [](int o) { return o < 0; })) {
    throw ValidationError("state " + state.ket() + " is not in the sector (f=" +
                          std::to_string(f_) + ", n=" + std::to_string(n_) + ")");
  }
  // Count the states that precede this one: those with a larger occupation at the
  // first differing site.
  std::uint64_t index = 0;
  int remaining = n_;
  for (int i = 0; i + 1 < f_; ++i) {
    const int o = state[i];
    const auto free_sites = static_cast<std::uint64_t>(f_ - i - 2);
    for (int v = o + 1; v <= remaining; ++v) {
      index += binomial(static_cast<std::uint64_t>(remaining - v) + free_sites, free_sites);
    }
    remaining -= o;
  }
  return static_cast<std::size_t>(index);
}

MomentumBasis momentum_basis(std::shared_ptr<const Sector> sector, MomentumIndex k) {
  if (k.f() != sector->f()) {
    throw ValidationError("momentum grid f=" + std::to_string(k.f()) +
                          " does not match sector f=" + std::to_string(sector->f()));
  }
  MomentumBasis basis{k, sector, {}, {}};
  const auto& orbits = sector->orbits();
  basis.local_index.assign(orbits.size(), -1);
  for (std::size_t id = 0; id < orbits.size(); ++id) {
    if ((static_cast<long long>(k.l()) * orbits[id].period) % sector->f() == 0) {
      basis.local_index[id] = static_cast<int>(basis.orbit_ids.size());
      basis.orbit_ids.push_back(id);
    }
  }
  return basis;
}

MomentumBasis momentum_basis(int f, int n, MomentumIndex k) {
  return momentum_basis(std::make_shared<const Sector>(f, n), k);
}

}  // namespace breather
