#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qlskit/graded_character.hpp"
#include "qlskit/qbg.hpp"

namespace qlskit {

// Piecewise-linear path: direction dirs[u] (a minimal coset representative)
// on the time interval (times[u], times[u+1]); times run from 0 to 1.
struct QLSPath {
  std::vector<WeylElt> dirs;
  std::vector<Rat> times;

  int segments() const { return static_cast<int>(dirs.size()); }
  const WeylElt& iota() const { return dirs.front(); }   // initial direction
  const WeylElt& kappa() const { return dirs.back(); }   // final direction
  std::string str() const;
  auto operator<=>(const QLSPath&) const = default;
};

struct QLSPathHasher {
  std::size_t operator()(const QLSPath& p) const;
};

// Quantum Lakshmibai-Seshadri paths of a dominant shape lambda, with the
// crystal operators indexed by a in [0..rank] (a = 0 is the affine index).
class QLSModel {
 public:
  QLSModel(const WeylGroup& W, WeightVec lambda, const QBGraph& graph, Int cap = 1000000);
  QLSModel(const QLSModel&) = delete;
  QLSModel& operator=(const QLSModel&) = delete;

  const WeylGroup& group() const { return *W_; }
  const WeightVec& lambda() const { return lambda_; }
  const std::vector<int>& J() const { return J_; }
  const QBGraph& graph() const { return *graph_; }

  // Interior times a/b with 0 < a < b = <lambda, beta^vee>, beta outside the J-span.
  const std::set<Rat>& turning_points() const { return turns_; }

  QLSPath straight(const WeylElt& v) const;
  bool is_valid(const QLSPath& p) const;
  // Admissible directed path exists in the graph, every label beta on it
  // satisfying sigma <lambda, beta^vee> integral.
  bool reachable(const WeylElt& src, const WeylElt& dst, const Rat& sigma) const;

  // All paths, sorted by (segments, times, dirs). Memoized; throws
  // EnumerationCapExceeded past the cap.
  const std::vector<QLSPath>& paths() const;

  WeightVec wt(const QLSPath& p) const;
  // <wt(p), alpha_a^vee> with the level-zero affine pairing.
  Int wt_pair(const QLSPath& p, int a) const;
  Int eps(const QLSPath& p, int a) const;
  Int phi(const QLSPath& p, int a) const;
  std::optional<QLSPath> f(const QLSPath& p, int a) const;
  std::optional<QLSPath> e(const QLSPath& p, int a) const;
  QLSPath f_max(const QLSPath& p, int a) const;

  // Degree of p at the twist w: minus the sum of sigma_u-weighted pairings
  // of lambda against the shortest-path weights down the direction chain.
  Int deg_at(const QLSPath& p, const WeylElt& w) const;
  // Sum of e^{wt(p)} q^{deg_at(p, w)} over all paths.
  GradedCharacter gch(const WeylElt& w) const;

  std::string export_crystal_dot() const;

 private:
  const WeylGroup* W_;
  WeightVec lambda_;
  std::vector<int> J_;
  const QBGraph* graph_;
  Int cap_;
  std::set<Rat> turns_;

  mutable std::mutex mu_;
  mutable std::vector<QLSPath> paths_;
  mutable bool paths_done_ = false;
  mutable std::map<std::pair<Rat, int>, std::vector<char>> reach_;  // (sigma, src vertex) -> bitmap

  std::vector<Int> slopes(const QLSPath& p, int a) const;
  const std::vector<char>& reach_set(const Rat& sigma, int src) const;
};

}  // namespace qlskit
