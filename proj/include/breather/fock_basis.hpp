#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace breather {

inline constexpr std::uint64_t kDefaultMaxSectorStates = 10'000'000;

/// Number of ways to choose k of n; saturates at UINT64_MAX instead of overflowing.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;

/// Dimension of the n-boson sector on f sites, binomial(n+f-1, n).
std::uint64_t sector_dimension(int f, int n) noexcept;

/// Occupation numbers of n bosons on a ring of f sites.
struct FockState {
  std::vector<int> occ;

  FockState() = default;
  explicit FockState(std::vector<int> occupations) : occ(std::move(occupations)) {}
  FockState(std::initializer_list<int> occupations) : occ(occupations) {}

  int sites() const noexcept { return static_cast<int>(occ.size()); }
  int bosons() const noexcept;
  int operator[](int s) const { return occ[static_cast<std::size_t>(s)]; }

  // Lexicographic on the occupation vector.
  auto operator<=>(const FockState&) const = default;
  bool operator==(const FockState&) const = default;

  /// Compact ket notation, e.g. "|2020>" (occupations above 9 are bracketed).
  std::string ket() const;
};

struct FockStateHash {
  std::size_t operator()(const FockState& state) const noexcept;
};

/// Cyclic shift: site s of the result holds site (s - t mod f) of the input.
FockState translate(const FockState& state, int t);

/// Equivalence class of a state under lattice translations.
struct TranslationOrbit {
  FockState rep;  // lexicographically maximal rotation
  int period = 1; // smallest t > 0 with translate(rep, t) == rep; equals the orbit size

  bool operator==(const TranslationOrbit&) const = default;
};

TranslationOrbit orbit_of(const FockState& state);

/// Smallest u >= 0 such that translate(orbit.rep, u) == state.
int shift_from_rep(const TranslationOrbit& orbit, const FockState& state);

/// All states of the sector in reverse-lexicographic order (|n0..0> first, |0..0n> last).
std::vector<FockState> enumerate_sector(int f, int n,
                                        std::uint64_t max_states = kDefaultMaxSectorStates);

/// Crystal momentum k = 2*pi*l/f, stored as the exact pair (l mod f, f).
class MomentumIndex {
 public:
  MomentumIndex(int l, int f);

  int f() const noexcept { return f_; }
  /// Residue in [0, f).
  int l() const noexcept { return l_; }
  /// Representative in (-f/2, f/2]; for odd f = 2*sigma+1 this is {-sigma..sigma}.
  int centered() const noexcept;
  double k() const noexcept;

  MomentumIndex negated() const { return MomentumIndex(-l_, f_); }

  bool operator==(const MomentumIndex&) const = default;

 private:
  int l_;
  int f_;
};

/// Every momentum of an f-site ring, ordered by centered() ascending.
std::vector<MomentumIndex> momentum_grid(int f);

/// Enumerated sector with its translation-orbit table. Immutable once built and
/// safe to share between threads.
class Sector {
 public:
  Sector(int f, int n, std::uint64_t max_states = kDefaultMaxSectorStates);

  int f() const noexcept { return f_; }
  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return states_.size(); }

  const std::vector<FockState>& states() const noexcept { return states_; }
  const FockState& state(std::size_t i) const { return states_[i]; }
  const std::vector<TranslationOrbit>& orbits() const noexcept { return orbits_; }

  /// Index of a state in enumeration order; throws ValidationError outside the sector.
  std::size_t rank(const FockState& state) const;

  /// Orbit index and shift u (translate(rep, u) == state) of the state at a given rank.
  std::size_t orbit_index(std::size_t rank) const { return orbit_of_state_[rank]; }
  int shift(std::size_t rank) const { return shift_of_state_[rank]; }

 private:
  int f_;
  int n_;
  std::vector<FockState> states_;
  std::vector<TranslationOrbit> orbits_;
  std::vector<std::size_t> orbit_of_state_;
  std::vector<int> shift_of_state_;
};

/// Orbits compatible with one crystal momentum (l*d == 0 mod f), ordered as in the sector.
struct MomentumBasis {
  MomentumIndex k;
  std::shared_ptr<const Sector> sector;
  std::vector<std::size_t> orbit_ids;  // indices into sector->orbits()
  std::vector<int> local_index;        // sector orbit id -> position here, or -1

  std::size_t dim() const noexcept { return orbit_ids.size(); }
  const TranslationOrbit& orbit(std::size_t i) const { return sector->orbits()[orbit_ids[i]]; }
};

MomentumBasis momentum_basis(std::shared_ptr<const Sector> sector, MomentumIndex k);
MomentumBasis momentum_basis(int f, int n, MomentumIndex k);

}  // namespace breather
