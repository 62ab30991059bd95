#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qlskit/rational.hpp"
#include "qlskit/util.hpp"

namespace qlskit {

namespace detail {
struct RootTag;
struct CorootTag;
struct WeightTag;
}  // namespace detail

// Integer coordinate vector in a fixed basis. The tag pins the basis:
// simple roots for RootVec, simple coroots for CorootVec, fundamental
// weights for WeightVec. Mixing bases is a type error.
template <typename Tag>
struct Coords {
  std::vector<Int> c;

  Coords() = default;
  explicit Coords(std::vector<Int> v) : c(std::move(v)) {}

  static Coords zero(int rank) { return Coords(std::vector<Int>(rank, 0)); }
  static Coords unit(int rank, int i) {
    std::vector<Int> v(static_cast<std::size_t>(rank), 0);
    v[static_cast<std::size_t>(i)] = 1;
    return Coords(std::move(v));
  }

  int rank() const { return static_cast<int>(c.size()); }
  Int operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  Int& operator[](int i) { return c[static_cast<std::size_t>(i)]; }

  bool is_zero() const {
    for (Int x : c)
      if (x != 0) return false;
    return true;
  }

  friend Coords operator+(const Coords& a, const Coords& b) {
    Coords r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
  }
  friend Coords operator-(const Coords& a, const Coords& b) {
    Coords r = a;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
  }
  friend Coords operator-(const Coords& a) {
    Coords r = a;
    for (auto& x : r.c) x = -x;
    return r;
  }
  friend Coords operator*(Int k, const Coords& a) {
    Coords r = a;
    for (auto& x : r.c) x *= k;
    return r;
  }

  auto operator<=>(const Coords&) const = default;
};

using RootVec = Coords<detail::RootTag>;
using CorootVec = Coords<detail::CorootTag>;
using WeightVec = Coords<detail::WeightTag>;

template <typename Tag>
struct CoordsHasher {
  std::size_t operator()(const Coords<Tag>& v) const {
    std::size_t seed = v.c.size();
    for (Int x : v.c) hash_combine(seed, std::hash<Int>{}(x));
    return seed;
  }
};

template <typename Tag>
std::string coords_str(const Coords<Tag>& v) {
  return "[" + join(v.c, ",", [](Int x) { return std::to_string(x); }) + "]";
}

// Level-zero affine weight: classical part in fundamental-weight
// coordinates plus a delta coefficient.
struct AffineWeight {
  std::vector<Rat> finite;
  Rat delta{0};

  AffineWeight() = default;
  AffineWeight(std::vector<Rat> f, Rat d) : finite(std::move(f)), delta(d) {}
  explicit AffineWeight(const WeightVec& w);

  int rank() const { return static_cast<int>(finite.size()); }
  WeightVec classical() const;  // asserts integral coordinates
  Int delta_int() const;        // asserts integral delta coefficient

  bool operator==(const AffineWeight&) const = default;
  std::string str() const;
};

AffineWeight operator+(const AffineWeight& a, const AffineWeight& b);
AffineWeight operator-(const AffineWeight& a, const AffineWeight& b);
AffineWeight operator*(const Rat& k, const AffineWeight& a);

// Finite irreducible root system with a fixed simple-root numbering.
// cartan[i][j] = <alpha_j, alpha_i^vee>; symmetrizer d_i satisfies
// (alpha_i, alpha_j) = d_i * cartan[i][j].
struct RootDatum {
  char letter = '?';
  int rank = 0;
  std::vector<std::vector<Int>> cartan;
  std::vector<Int> symmetrizer;
  std::vector<RootVec> pos_roots;  // sorted by (height, coordinates)
  std::vector<CorootVec> pos_coroots;
  RootVec theta;  // highest root
  CorootVec theta_dual;

  static RootDatum build(char letter, int rank);
  static RootDatum build(const std::string& type_label);  // "A2", "G2", ...

  std::string type_label() const;
  int num_pos_roots() const { return static_cast<int>(pos_roots.size()); }

  // <beta, xi> for beta in simple-root and xi in simple-coroot coordinates.
  Int pair(const RootVec& beta, const CorootVec& xi) const;
  // <mu, xi> for mu in fundamental-weight coordinates.
  static Int pair(const WeightVec& mu, const CorootVec& xi);
  static Rat pair(const std::vector<Rat>& mu, const CorootVec& xi);

  static Int height(const RootVec& beta);

  CorootVec dual_root(const RootVec& beta) const;
  WeightVec root_as_weight(const RootVec& beta) const;

  // Index into pos_roots, or -1 when beta is not a positive root.
  int pos_root_index(const RootVec& beta) const;
  bool is_pos_root(const RootVec& beta) const { return pos_root_index(beta) >= 0; }

  // J holds 0-based simple indices. Membership in the standard parabolic
  // subsystem means every nonzero coordinate of beta sits in J.
  bool root_in_span(const RootVec& beta, const std::vector<int>& J) const;
  std::vector<int> positive_roots_of(const std::vector<int>& J) const;

  // Half sum of the positive roots of the J-subsystem, weight coordinates.
  std::vector<Rat> rho_of(const std::vector<int>& J) const;
  // <2 rho - 2 rho_J, xi>, exact integer arithmetic.
  Int two_rho_rhoJ_pair(const std::vector<int>& J, const CorootVec& xi) const;

  std::string root_str(const RootVec& beta) const;
  std::string coroot_str(const CorootVec& xi) const;

 private:
  std::map<RootVec, int> pos_index_;
  void finish_build();
};

// Stabilizer index set of a dominant weight: { i : <lambda, alpha_i^vee> = 0 }.
// Throws std::invalid_argument when lambda is not dominant.
std::vector<int> derive_J(const WeightVec& lambda);

bool contains(const std::vector<int>& J, int i);
std::string index_set_str(const std::vector<int>& J);  // {1,3} rendered 1-based

}  // namespace qlskit
