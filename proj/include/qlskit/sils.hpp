#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlskit/qls.hpp"

namespace qlskit {

// Piecewise-linear path whose directions are semi-infinitely minimal coset
// representatives; times run from 0 to 1.
struct SILSPath {
  std::vector<AffWeylElt> dirs;
  std::vector<Rat> times;

  int segments() const { return static_cast<int>(dirs.size()); }
  const AffWeylElt& iota() const { return dirs.front(); }
  const AffWeylElt& kappa() const { return dirs.back(); }
  std::string str() const;
  auto operator<=>(const SILSPath&) const = default;
};

// Semi-infinite Lakshmibai-Seshadri paths of a dominant shape lambda. The
// crystal is infinite, so there is no global enumeration; the model supplies
// membership, projections, root operators, the right translation action,
// and the lift from the finite path model over the same parabolic graph.
class SILSModel {
 public:
  SILSModel(const WeylGroup& W, WeightVec lambda, const QBGraph& graph);
  SILSModel(const SILSModel&) = delete;
  SILSModel& operator=(const SILSModel&) = delete;

  const WeylGroup& group() const { return *W_; }
  const WeightVec& lambda() const { return lambda_; }
  const std::vector<int>& J() const { return J_; }
  const QBGraph& graph() const { return *graph_; }

  bool is_member(const AffWeylElt& x) const;
  // Canonical representative of x modulo the parabolic affine subgroup;
  // translation projections are memoized.
  AffWeylElt proj(const AffWeylElt& x) const;
  WeylElt cl_dir(const AffWeylElt& x) const;
  SILSPath straight(const AffWeylElt& x) const;

  // Covers of x in the semi-infinite order whose reflection label gamma
  // pairs sigma-integrally with the shape; each entry is (cover, gamma).
  std::vector<std::pair<AffWeylElt, RootVec>> neighbors_up(const AffWeylElt& x,
                                                           const Rat& sigma) const;
  bool is_valid(const SILSPath& p) const;

  AffineWeight wt(const SILSPath& p) const;
  // <wt(p), alpha_a^vee> with the level-zero affine pairing.
  Int wt_pair(const SILSPath& p, int a) const;
  Int eps(const SILSPath& p, int a) const;
  Int phi(const SILSPath& p, int a) const;
  std::optional<SILSPath> f(const SILSPath& p, int a) const;
  std::optional<SILSPath> e(const SILSPath& p, int a) const;

  // Right action of t_xi: every direction is re-projected.
  SILSPath translate(const SILSPath& p, const CorootVec& xi) const;
  // Action of x through its reflection word; s_a acts along the a-string.
  SILSPath weyl_act(const AffWeylElt& x, const SILSPath& p) const;

  // Classical projection onto the finite path model (adjacent equal
  // projected directions merge).
  QLSPath cl(const SILSPath& p) const;
  // The unique preimage of eta under cl whose final translation part
  // vanishes. Memoized.
  SILSPath lift(const QLSPath& eta) const;
  // Degree of eta at the twist w, read off as the delta-coefficient of the
  // lifted path translated by the shortest-path coweight from w's
  // representative down to the final direction of eta.
  Int deg_via_lift(const QLSPath& eta, const WeylElt& w) const;

 private:
  const WeylGroup* W_;
  WeightVec lambda_;
  std::vector<int> J_;
  const QBGraph* graph_;

  mutable std::mutex mu_;
  mutable std::map<CorootVec, AffWeylElt> proj_t_;  // key: xi with J coordinates zeroed
  mutable std::map<QLSPath, SILSPath> lifts_;

  std::vector<Int> slopes(const SILSPath& p, int a) const;
};

}  // namespace qlskit
