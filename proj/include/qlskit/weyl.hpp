#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qlskit/root_system.hpp"

namespace qlskit {

class WeylGroup;

// Element of a fixed finite Weyl group, interned by its action matrix.
// Two elements compare equal iff they are the same group element; the
// index order is (length, shortlex reduced word).
struct WeylElt {
  const WeylGroup* group = nullptr;
  int idx = -1;

  int length() const;
  const std::vector<int>& word() const;  // shortlex-minimal reduced word
  WeylElt inv() const;

  RootVec act(const RootVec& beta) const;
  CorootVec act(const CorootVec& xi) const;
  WeightVec act(const WeightVec& mu) const;
  std::vector<Rat> act(const std::vector<Rat>& mu) const;

  bool is_identity() const { return idx == 0; }
  std::string str() const;

  auto operator<=>(const WeylElt&) const = default;
};

WeylElt operator*(const WeylElt& a, const WeylElt& b);

struct WeylEltHasher {
  std::size_t operator()(const WeylElt& w) const { return static_cast<std::size_t>(w.idx); }
};

// Finite Weyl group of a root datum with every element enumerated up front.
// The canonical form of an element is its matrix on simple-root coordinates;
// multiplication, inversion, lengths and shortlex words are precomputed.
class WeylGroup {
 public:
  explicit WeylGroup(const RootDatum& datum);
  WeylGroup(const WeylGroup&) = delete;
  WeylGroup& operator=(const WeylGroup&) = delete;

  const RootDatum& datum() const { return datum_; }
  int rank() const { return rank_; }
  int size() const { return n_; }

  WeylElt identity() const { return at(0); }
  WeylElt simple(int i) const;
  WeylElt at(int idx) const;
  WeylElt longest() const { return at(n_ - 1); }
  WeylElt from_word(const std::vector<int>& word) const;
  WeylElt reflection(const RootVec& beta) const;  // beta any root
  WeylElt parse(const std::string& text) const;   // "e" or "s1s2..."

  std::vector<WeylElt> elements() const;
  std::vector<WeylElt> parabolic_elements(const std::vector<int>& J) const;

  int rmul(int idx, int i) const { return rmul_[static_cast<std::size_t>(idx) * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(i)]; }
  int lmul(int i, int idx) const { return lmul_[static_cast<std::size_t>(idx) * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(i)]; }
  int inverse(int idx) const { return inv_[static_cast<std::size_t>(idx)]; }
  int length(int idx) const { return lengths_[static_cast<std::size_t>(idx)]; }
  const std::vector<int>& word(int idx) const { return words_[static_cast<std::size_t>(idx)]; }
  int product(int a, int b) const;

  const Int* root_mat(int idx) const { return root_mats_.data() + static_cast<std::size_t>(idx) * mat_stride_; }
  const Int* coroot_mat(int idx) const { return coroot_mats_.data() + static_cast<std::size_t>(idx) * mat_stride_; }

 private:
  RootDatum datum_;
  int rank_ = 0;
  int n_ = 0;
  std::size_t mat_stride_ = 0;
  std::vector<Int> root_mats_;
  std::vector<Int> coroot_mats_;
  std::vector<int> lengths_;
  std::vector<std::vector<int>> words_;
  std::vector<int> rmul_;
  std::vector<int> lmul_;
  std::vector<int> inv_;
  std::map<std::vector<Int>, int> index_of_;

  int lookup(const std::vector<Int>& root_mat) const;
};

bool root_is_positive(const RootVec& beta);

// Minimal representative of the coset w W_J.
WeylElt min_coset_rep(const WeylElt& w, const std::vector<int>& J);
bool in_parabolic(const WeylElt& w, const std::vector<int>& J);

// ---- Affine layer -------------------------------------------------------

// Real affine root alpha + n*delta.
struct AffRoot {
  RootVec alpha;
  Int n = 0;
  bool operator==(const AffRoot&) const = default;
  std::string str(const RootDatum& datum) const;
};

// Element w * t_xi of the affine Weyl group, xi in simple-coroot coordinates.
struct AffWeylElt {
  WeylElt w;
  CorootVec xi;

  std::string str() const;
  auto operator<=>(const AffWeylElt&) const = default;
};

struct AffWeylEltHasher {
  std::size_t operator()(const AffWeylElt& x) const {
    std::size_t seed = static_cast<std::size_t>(x.w.idx);
    hash_combine(seed, CoordsHasher<detail::CorootTag>{}(x.xi));
    return seed;
  }
};

AffWeylElt aff_identity(const WeylGroup& W);
AffWeylElt aff_translation(const WeylGroup& W, const CorootVec& xi);
AffWeylElt operator*(const AffWeylElt& a, const AffWeylElt& b);
AffWeylElt aff_inverse(const AffWeylElt& x);

// x acting on a level-zero weight: w*mu - <mu, xi> delta on the classical part.
AffineWeight aff_act(const AffWeylElt& x, const AffineWeight& mu);
// x acting on a real affine root.
AffRoot aff_act(const AffWeylElt& x, const AffRoot& beta);

Int semi_infinite_length(const AffWeylElt& x);

// Affine simple root indexed by a in [0..rank]; a = 0 is the affine node
// delta - theta, a >= 1 is the finite simple root a-1.
AffRoot affine_simple_root(const RootDatum& datum, int a);
// Reflection in that root, as an affine group element (a = 0 gives s_theta * t_{-theta^vee}).
AffWeylElt affine_simple_reflection(const WeylGroup& W, int a);
// Classical part only (a = 0 gives s_theta).
WeylElt classical_affine_reflection(const WeylGroup& W, int a);

// Left descent of x at affine index a, for the affine length function.
bool affine_left_descent(const AffWeylElt& x, int a);
// Word [a_1..a_k] with x = s_{a_1} s_{a_2} ... s_{a_k}, obtained by greedily
// stripping the smallest left descent; reduced for the affine length.
std::vector<int> affine_word(const AffWeylElt& x);

// Membership in the set of semi-infinitely minimal representatives of the
// cosets x (W_J)_af: for every positive root alpha of the J-subsystem,
// either <alpha, xi> = 0 and w(alpha) > 0, or <alpha, xi> = -1 and w(alpha) < 0.
bool is_semi_infinite_coset_rep(const AffWeylElt& x, const std::vector<int>& J);

// Canonical representative of t_xi (W_J)_af, found by a bounded search over
// factorizations t_xi = x1 * x2 with x2 in (W_J)_af. Any hit is the unique
// answer; throws SearchExhausted if the expanding box never meets one.
AffWeylElt project_translation(const WeylGroup& W, const CorootVec& xi, const std::vector<int>& J);

// Canonical representative of x (W_J)_af.
AffWeylElt semi_infinite_projection(const WeylGroup& W, const AffWeylElt& x, const std::vector<int>& J);

}  // namespace qlskit
