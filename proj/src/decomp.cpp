#include "qlskit/decomp.hpp"

#include <cstdlib>
#include <deque>
#include <numeric>

#include "qlskit/errors.hpp"

namespace qlskit {

namespace {

constexpr std::size_t kSearchNodeBudget = std::size_t{1} << 20;

std::optional<SILSPath> apply_sils_op(const SILSModel& M, const SILSPath& p, int op) {
  int a = std::abs(op) - 1;
  return op > 0 ? M.f(p, a) : M.e(p, a);
}

}  // namespace

ThetaIso::ThetaIso(const QLSModel& whole, std::vector<const QLSModel*> parts)
    : whole_(&whole), parts_(std::move(parts)) {
  check_arg(!parts_.empty(), "tensor decomposition needs at least one factor");
  int rank = whole.group().rank();
  WeightVec sum = WeightVec::zero(rank);
  for (const QLSModel* m : parts_) {
    check_arg(m != nullptr, "tensor factor model is null");
    check_arg(&m->group() == &whole.group(), "tensor factor built over a different group");
    sum = sum + m->lambda();
  }
  check_arg(sum == whole.lambda(), "tensor factor shapes do not sum to the whole shape");

  QLSPath seed = whole.straight(whole.group().identity());
  std::vector<QLSPath> seed_tuple;
  seed_tuple.reserve(parts_.size());
  for (const QLSModel* m : parts_) seed_tuple.push_back(m->straight(m->group().identity()));

  std::deque<QLSPath> queue;
  fwd_.emplace(seed, seed_tuple);
  bwd_.emplace(std::move(seed_tuple), seed);
  queue.push_back(std::move(seed));

  while (!queue.empty()) {
    QLSPath eta = std::move(queue.front());
    queue.pop_front();
    const std::vector<QLSPath>& tuple = fwd_.at(eta);

    WeightVec wsum = WeightVec::zero(rank);
    for (std::size_t k = 0; k < parts_.size(); ++k) wsum = wsum + parts_[k]->wt(tuple[k]);
    if (wsum != whole.wt(eta))
      throw IsomorphismMismatch("tensor weight disagrees at " + eta.str());

    for (int a = 0; a <= rank; ++a) {
      if (whole.eps(eta, a) != tensor_eps(parts_, tuple, a) ||
          whole.phi(eta, a) != tensor_phi(parts_, tuple, a))
        throw IsomorphismMismatch("string lengths disagree at " + eta.str());
      for (int dir = 0; dir < 2; ++dir) {
        auto wi = dir == 0 ? whole.f(eta, a) : whole.e(eta, a);
        auto ti = dir == 0 ? tensor_f(parts_, tuple, a) : tensor_e(parts_, tuple, a);
        if (wi.has_value() != ti.has_value())
          throw IsomorphismMismatch("arrow definedness disagrees at " + eta.str());
        if (!wi) continue;
        auto it = fwd_.find(*wi);
        if (it != fwd_.end()) {
          if (it->second != *ti)
            throw IsomorphismMismatch("arrow targets disagree at " + eta.str());
          continue;
        }
        fwd_.emplace(*wi, *ti);
        bwd_.emplace(std::move(*ti), *wi);
        queue.push_back(std::move(*wi));
      }
    }
  }

  std::size_t expect = whole.paths().size();
  if (fwd_.size() != expect)
    throw IsomorphismMismatch("closure covers " + std::to_string(fwd_.size()) + " of " +
                              std::to_string(expect) + " paths");
  std::size_t prod = 1;
  for (const QLSModel* m : parts_) prod *= m->paths().size();
  if (bwd_.size() != fwd_.size() || prod != fwd_.size())
    throw IsomorphismMismatch("tensor tuple count disagrees with the factor crystal sizes");
}

const std::vector<QLSPath>& ThetaIso::apply(const QLSPath& eta) const {
  auto it = fwd_.find(eta);
  require(it != fwd_.end(), "path is not in the decomposition domain: " + eta.str());
  return it->second;
}

const QLSPath& ThetaIso::invert(const std::vector<QLSPath>& tuple) const {
  auto it = bwd_.find(tuple);
  require(it != bwd_.end(), "tuple is not in the decomposition image");
  return it->second;
}

XiEmbedder::XiEmbedder(const SILSModel& whole, std::vector<const SILSModel*> parts, int max_depth)
    : whole_(&whole), parts_(std::move(parts)), max_depth_(max_depth) {
  check_arg(!parts_.empty(), "tensor decomposition needs at least one factor");
  check_arg(max_depth_ >= 1, "search depth must be positive");
  int rank = whole.group().rank();
  WeightVec sum = WeightVec::zero(rank);
  for (const SILSModel* m : parts_) {
    check_arg(m != nullptr, "tensor factor model is null");
    check_arg(&m->group() == &whole.group(), "tensor factor built over a different group");
    sum = sum + m->lambda();
  }
  check_arg(sum == whole.lambda(), "tensor factor shapes do not sum to the whole shape");
}

std::vector<int> XiEmbedder::word_to(const SILSPath& target) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = words_.find(target);
    if (it != words_.end()) return it->second;
  }
  const WeylGroup& W = whole_->group();
  int rank = W.rank();
  SILSPath source = whole_->straight(aff_identity(W));

  std::map<SILSPath, std::vector<int>> from_src, to_tgt;
  from_src.emplace(source, std::vector<int>{});
  to_tgt.emplace(target, std::vector<int>{});
  std::vector<SILSPath> front_src{source}, front_tgt{target};
  std::optional<std::vector<int>> found;
  if (source == target) found = std::vector<int>{};

  int dist = 0;
  while (!found) {
    if (dist >= max_depth_)
      throw DepthExceeded("no operator word within depth " + std::to_string(max_depth_));
    if (front_src.empty() || front_tgt.empty())
      throw DepthExceeded("operator search space exhausted before reaching the target");
    bool expand_src = front_src.size() <= front_tgt.size();
    ++dist;
    std::vector<SILSPath>& frontier = expand_src ? front_src : front_tgt;
    std::vector<SILSPath> next;
    for (const SILSPath& p : frontier) {
      for (int sign = 0; sign < 2 && !found; ++sign) {
        for (int a = 0; a <= rank && !found; ++a) {
          int op = sign == 0 ? a + 1 : -(a + 1);
          auto child = apply_sils_op(*whole_, p, op);
          if (!child) continue;
          if (expand_src) {
            if (from_src.count(*child)) continue;
            std::vector<int> word = from_src.at(p);
            word.push_back(op);
            auto hit = to_tgt.find(*child);
            if (hit != to_tgt.end()) {
              word.insert(word.end(), hit->second.begin(), hit->second.end());
              found = std::move(word);
              break;
            }
            from_src.emplace(*child, std::move(word));
            next.push_back(std::move(*child));
          } else {
            if (to_tgt.count(*child)) continue;
            // the inverse operator leads the child back to p, then onward
            std::vector<int> word{-op};
            const std::vector<int>& rest = to_tgt.at(p);
            word.insert(word.end(), rest.begin(), rest.end());
            auto hit = from_src.find(*child);
            if (hit != from_src.end()) {
              std::vector<int> full = hit->second;
              full.insert(full.end(), word.begin(), word.end());
              found = std::move(full);
              break;
            }
            to_tgt.emplace(*child, std::move(word));
            next.push_back(std::move(*child));
          }
        }
      }
      if (found) break;
    }
    if (!found) {
      frontier = std::move(next);
      if (from_src.size() + to_tgt.size() > kSearchNodeBudget)
        throw DepthExceeded("operator search exceeded the node budget");
    }
  }

  SILSPath probe = source;
  for (int op : *found) {
    auto step = apply_sils_op(*whole_, probe, op);
    require(step.has_value(), "operator word replay hit an undefined arrow");
    probe = std::move(*step);
  }
  require(probe == target, "operator word replay missed the target");

  std::lock_guard<std::mutex> lock(mu_);
  auto res = words_.emplace(target, std::move(*found));
  return res.first->second;
}

std::vector<SILSPath> XiEmbedder::apply(const SILSPath& pi) const {
  const WeylGroup& W = whole_->group();
  require(whole_->is_valid(pi), "embedding input is not a valid path of the whole shape");
  CorootVec zstar = pi.kappa().xi;
  SILSPath normalized = whole_->translate(pi, -zstar);
  require(whole_->translate(normalized, zstar) == pi,
          "translation normalization does not round-trip");
  std::vector<int> word = word_to(normalized);

  std::vector<SILSPath> tuple;
  tuple.reserve(parts_.size());
  for (const SILSModel* m : parts_) tuple.push_back(m->straight(aff_identity(W)));
  for (int op : word) {
    int a = std::abs(op) - 1;
    auto img = op > 0 ? tensor_f(parts_, std::move(tuple), a)
                      : tensor_e(parts_, std::move(tuple), a);
    if (!img) throw IsomorphismMismatch("operator word is not applicable on the tensor side");
    tuple = std::move(*img);
  }
  for (std::size_t k = 0; k < tuple.size(); ++k)
    tuple[k] = parts_[k]->translate(tuple[k], zstar);
  return tuple;
}

TiltedChain tilted_chain(const QLSModel& M, const QBGraph& full, const QLSPath& eta,
                         const WeylElt& w) {
  check_arg(full.J().empty(), "tilted chain lifts through the full graph");
  check_arg(&full.group() == &M.group(), "graph built over a different group");
  int rank = M.group().rank();
  int s = eta.segments();
  TiltedChain c;
  c.reps.assign(static_cast<std::size_t>(s) + 1, w);
  c.accum.assign(static_cast<std::size_t>(s), CorootVec::zero(rank));
  for (int u = s - 1; u >= 0; --u)
    c.reps[static_cast<std::size_t>(u)] =
        full.deodhar_lift(eta.dirs[static_cast<std::size_t>(u)], M.J(),
                          c.reps[static_cast<std::size_t>(u) + 1]);
  for (int u = s - 1; u >= 0; --u) {
    CorootVec step = full.shortest_weight(c.reps[static_cast<std::size_t>(u) + 1],
                                          c.reps[static_cast<std::size_t>(u)]);
    c.accum[static_cast<std::size_t>(u)] =
        u == s - 1 ? step : c.accum[static_cast<std::size_t>(u) + 1] + step;
  }

  // Outside the J coordinates the accumulated weights must agree with the
  // path's own lift chain shifted by the parabolic weight floor(w) => kappa.
  const std::vector<int>& J = M.J();
  CorootVec shift = M.graph().shortest_weight(min_coset_rep(w, J), eta.kappa());
  CorootVec xi = CorootVec::zero(rank);
  for (int u = s - 1; u >= 0; --u) {
    if (u < s - 1)
      xi = xi + M.graph().shortest_weight(eta.dirs[static_cast<std::size_t>(u) + 1],
                                          eta.dirs[static_cast<std::size_t>(u)]);
    CorootVec diff = c.accum[static_cast<std::size_t>(u)] - (xi + shift);
    for (int i = 0; i < rank; ++i)
      require(contains(J, i) || diff[i] == 0,
              "tilted chain weight drifts from the parabolic lift chain");
  }
  return c;
}

Int stretch_factor(const QLSModel& M) {
  Int n = 1;
  for (const Rat& t : M.turning_points()) n = std::lcm(n, t.denominator());
  return n;
}

namespace {

template <class Model, class Path>
std::vector<Path> repeat_power_impl(const Model& M, const Path& p, Int N) {
  check_arg(N >= 1, "tensor power must be positive");
  std::vector<Path> out;
  out.reserve(static_cast<std::size_t>(N));
  for (int u = 0; u < p.segments(); ++u) {
    Rat span = (p.times[static_cast<std::size_t>(u) + 1] -
                p.times[static_cast<std::size_t>(u)]) * N;
    check_arg(span.denominator() == 1, "power does not clear the segment time denominators");
    for (Int c = 0; c < span.numerator(); ++c)
      out.push_back(M.straight(p.dirs[static_cast<std::size_t>(u)]));
  }
  require(out.size() == static_cast<std::size_t>(N), "tensor power factor count is off");
  return out;
}

template <class Model, class Path>
Path stretch_impl(const Model& src, const Model& dst, const Path& p, Int N) {
  check_arg(N >= 1, "stretch factor must be positive");
  check_arg(&src.group() == &dst.group(), "stretch models built over different groups");
  check_arg(dst.lambda() == N * src.lambda(), "target shape is not the scaled source shape");
  Path q{p.dirs, p.times};
  require(dst.is_valid(q), "path data is not valid in the stretched shape");
  return q;
}

}  // namespace

std::vector<QLSPath> repeat_power(const QLSModel& M, const QLSPath& p, Int N) {
  return repeat_power_impl<QLSModel, QLSPath>(M, p, N);
}

std::vector<SILSPath> repeat_power(const SILSModel& M, const SILSPath& p, Int N) {
  return repeat_power_impl<SILSModel, SILSPath>(M, p, N);
}

QLSPath stretch_path(const QLSModel& src, const QLSModel& dst, const QLSPath& p, Int N) {
  return stretch_impl<QLSModel, QLSPath>(src, dst, p, N);
}

SILSPath stretch_path(const SILSModel& src, const SILSModel& dst, const SILSPath& p, Int N) {
  return stretch_impl<SILSModel, SILSPath>(src, dst, p, N);
}

}  // namespace qlskit
