#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlskit/errors.hpp"
#include "qlskit/qls.hpp"
#include "qlskit/sils.hpp"

namespace qlskit {

// ---------------------------------------------------------------------------
// Tensor products.
//
// A tensor element is a tuple of paths, one per factor model; the factors are
// shapes lambda_1, ..., lambda_n over a single group. Conventions:
//   phi(b (x) c) = max(phi(c), phi(b) + <wt c, alpha_a^vee>)
//   eps(b (x) c) = max(eps(b), eps(c) - <wt b, alpha_a^vee>)
//   f acts on the left factor iff phi(b) > eps(c); e does iff phi(b) >= eps(c).
// n-fold products associate as (b_1 (x) ... (x) b_{n-1}) (x) b_n.
// ---------------------------------------------------------------------------

namespace detail {

template <class Model, class Path>
Int fold_phi(const std::vector<const Model*>& ms, const std::vector<Path>& ps,
             int a, std::size_t count) {
  Int p = ms[0]->phi(ps[0], a);
  for (std::size_t k = 1; k < count; ++k)
    p = std::max(ms[k]->phi(ps[k], a), p + ms[k]->wt_pair(ps[k], a));
  return p;
}

template <class Model, class Path>
void check_tensor_args(const std::vector<const Model*>& ms, const std::vector<Path>& ps) {
  check_arg(!ps.empty(), "tensor element has no factors");
  check_arg(ms.size() == ps.size(), "tensor factor count does not match the model count");
}

}  // namespace detail

template <class Model, class Path>
Int tensor_wt_pair(const std::vector<const Model*>& ms, const std::vector<Path>& ps, int a) {
  detail::check_tensor_args(ms, ps);
  Int s = 0;
  for (std::size_t k = 0; k < ps.size(); ++k) s += ms[k]->wt_pair(ps[k], a);
  return s;
}

template <class Model, class Path>
Int tensor_phi(const std::vector<const Model*>& ms, const std::vector<Path>& ps, int a) {
  detail::check_tensor_args(ms, ps);
  return detail::fold_phi(ms, ps, a, ps.size());
}

template <class Model, class Path>
Int tensor_eps(const std::vector<const Model*>& ms, const std::vector<Path>& ps, int a) {
  detail::check_tensor_args(ms, ps);
  std::size_t n = ps.size();
  Int e = ms[n - 1]->eps(ps[n - 1], a);
  for (std::size_t k = n - 1; k-- > 0;)
    e = std::max(ms[k]->eps(ps[k], a), e - ms[k]->wt_pair(ps[k], a));
  return e;
}

template <class Model, class Path>
std::optional<std::vector<Path>> tensor_f(const std::vector<const Model*>& ms,
                                          std::vector<Path> ps, int a) {
  detail::check_tensor_args(ms, ps);
  std::size_t m = ps.size();
  while (m > 1 && detail::fold_phi(ms, ps, a, m - 1) > ms[m - 1]->eps(ps[m - 1], a)) --m;
  auto img = ms[m - 1]->f(ps[m - 1], a);
  if (!img) return std::nullopt;
  ps[m - 1] = std::move(*img);
  return std::optional(std::move(ps));
}

template <class Model, class Path>
std::optional<std::vector<Path>> tensor_e(const std::vector<const Model*>& ms,
                                          std::vector<Path> ps, int a) {
  detail::check_tensor_args(ms, ps);
  std::size_t m = ps.size();
  while (m > 1 && detail::fold_phi(ms, ps, a, m - 1) >= ms[m - 1]->eps(ps[m - 1], a)) --m;
  auto img = ms[m - 1]->e(ps[m - 1], a);
  if (!img) return std::nullopt;
  ps[m - 1] = std::move(*img);
  return std::optional(std::move(ps));
}

// ---------------------------------------------------------------------------
// Isomorphism from the whole-shape crystal onto the tensor product of its
// factor crystals, built by a synchronized closure from the straight seeds.
// Arrow or structure disagreement raises IsomorphismMismatch; the closure must
// cover the whole crystal and hit every tensor tuple exactly once.
// ---------------------------------------------------------------------------

class ThetaIso {
 public:
  ThetaIso(const QLSModel& whole, std::vector<const QLSModel*> parts);
  ThetaIso(const ThetaIso&) = delete;
  ThetaIso& operator=(const ThetaIso&) = delete;

  const QLSModel& whole() const { return *whole_; }
  const std::vector<const QLSModel*>& parts() const { return parts_; }
  std::size_t num_factors() const { return parts_.size(); }

  const std::vector<QLSPath>& apply(const QLSPath& eta) const;
  const QLSPath& invert(const std::vector<QLSPath>& tuple) const;

 private:
  const QLSModel* whole_;
  std::vector<const QLSModel*> parts_;
  std::map<QLSPath, std::vector<QLSPath>> fwd_;
  std::map<std::vector<QLSPath>, QLSPath> bwd_;
};

// ---------------------------------------------------------------------------
// Embedding of the semi-infinite crystal generated by the whole-shape straight
// seed into the tensor product of the factor crystals. An input is first
// normalized by the translation killing its final direction's coroot part;
// the operator word from the seed to the normalized path is found by a
// bidirectional search (word length capped by max_depth, DepthExceeded past
// it), transported through the tensor product, and the translation is
// restored factor by factor.
// ---------------------------------------------------------------------------

class XiEmbedder {
 public:
  XiEmbedder(const SILSModel& whole, std::vector<const SILSModel*> parts, int max_depth = 64);
  XiEmbedder(const XiEmbedder&) = delete;
  XiEmbedder& operator=(const XiEmbedder&) = delete;

  const SILSModel& whole() const { return *whole_; }
  const std::vector<const SILSModel*>& parts() const { return parts_; }
  int max_depth() const { return max_depth_; }

  std::vector<SILSPath> apply(const SILSPath& pi) const;

 private:
  // Operator word mapping the straight seed to target; +(a+1) applies f_a,
  // -(a+1) applies e_a, in listed order.
  std::vector<int> word_to(const SILSPath& target) const;

  const SILSModel* whole_;
  std::vector<const SILSModel*> parts_;
  int max_depth_;

  mutable std::mutex mu_;
  mutable std::map<SILSPath, std::vector<int>> words_;
};

// ---------------------------------------------------------------------------
// Chain of tilted-order lifts of a path's direction cosets, seeded at w, with
// full-graph shortest weights accumulated down the chain. reps holds the
// lifted directions followed by the seed; accum[u] is the weight collected
// from the seed down to reps[u].
// ---------------------------------------------------------------------------

struct TiltedChain {
  std::vector<WeylElt> reps;
  std::vector<CorootVec> accum;

  const WeylElt& initial() const { return reps.front(); }
  const CorootVec& shift() const { return accum.front(); }
};

TiltedChain tilted_chain(const QLSModel& M, const QBGraph& full, const QLSPath& eta,
                         const WeylElt& w);

// ---------------------------------------------------------------------------
// Similarity maps. repeat_power sends a path to the N-fold tensor tuple that
// repeats each segment's straight path N * (time span) times; stretch_path
// reinterprets the same direction/time data in the shape scaled by N.
// ---------------------------------------------------------------------------

// Least N making every turning point of the shape an integer multiple of 1/N.
Int stretch_factor(const QLSModel& M);

std::vector<QLSPath> repeat_power(const QLSModel& M, const QLSPath& p, Int N);
std::vector<SILSPath> repeat_power(const SILSModel& M, const SILSPath& p, Int N);

QLSPath stretch_path(const QLSModel& src, const QLSModel& dst, const QLSPath& p, Int N);
SILSPath stretch_path(const SILSModel& src, const SILSModel& dst, const SILSPath& p, Int N);

}  // namespace qlskit
