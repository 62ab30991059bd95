#include "qlskit/sils.hpp"

#include <algorithm>
#include <set>

#include "qlskit/errors.hpp"
#include "qlskit/path_detail.hpp"

namespace qlskit {

std::string SILSPath::str() const {
  std::string s = "(";
  s += join(dirs, ",", [](const AffWeylElt& x) { return x.str(); });
  s += ";";
  s += join(times, ",", [](const Rat& t) { return qlskit::str(t); });
  s += ")";
  return s;
}

SILSModel::SILSModel(const WeylGroup& W, WeightVec lambda, const QBGraph& graph)
    : W_(&W), lambda_(std::move(lambda)), J_(derive_J(lambda_)), graph_(&graph) {
  check_arg(lambda_.rank() == W.rank(), "weight of the wrong rank");
  std::vector<int> gJ = graph.J();
  std::sort(gJ.begin(), gJ.end());
  check_arg(gJ == J_, "graph parabolic does not match the shape stabilizer");
}

bool SILSModel::is_member(const AffWeylElt& x) const {
  return is_semi_infinite_coset_rep(x, J_);
}

AffWeylElt SILSModel::proj(const AffWeylElt& x) const {
  WeylElt v = min_coset_rep(x.w, J_);
  WeylElt u = v.inv() * x.w;
  CorootVec key = u.act(x.xi);
  for (int i : J_) key[i] = 0;
  AffWeylElt p = [&] {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = proj_t_.find(key);
    if (it == proj_t_.end()) it = proj_t_.emplace(key, project_translation(*W_, key, J_)).first;
    return it->second;
  }();
  AffWeylElt r{v * p.w, p.xi};
  require(is_member(r), "projection left the representative set");
  return r;
}

WeylElt SILSModel::cl_dir(const AffWeylElt& x) const { return min_coset_rep(x.w, J_); }

SILSPath SILSModel::straight(const AffWeylElt& x) const {
  return SILSPath{{proj(x)}, {Rat(0), Rat(1)}};
}

std::vector<std::pair<AffWeylElt, RootVec>> SILSModel::neighbors_up(const AffWeylElt& x,
                                                                    const Rat& sigma) const {
  const RootDatum& datum = W_->datum();
  Int base = semi_infinite_length(x);
  WeightVec xlam = x.w.act(lambda_);
  std::vector<std::pair<AffWeylElt, RootVec>> out;
  for (int k = 0; k < datum.num_pos_roots(); ++k) {
    const RootVec& gamma = datum.pos_roots[static_cast<std::size_t>(k)];
    if (!is_integer(sigma * Rat(RootDatum::pair(xlam, datum.pos_coroots[static_cast<std::size_t>(k)]))))
      continue;
    WeylElt r = W_->reflection(gamma);
    CorootVec zero = CorootVec::zero(W_->rank());
    for (const AffWeylElt& refl :
         {AffWeylElt{r, zero}, AffWeylElt{r, zero - datum.pos_coroots[static_cast<std::size_t>(k)]}}) {
      AffWeylElt y = refl * x;
      if (semi_infinite_length(y) == base + 1 && is_member(y)) out.emplace_back(y, gamma);
    }
  }
  return out;
}

bool SILSModel::is_valid(const SILSPath& p) const {
  if (p.dirs.empty() || p.times.size() != p.dirs.size() + 1) return false;
  if (p.times.front() != Rat(0) || p.times.back() != Rat(1)) return false;
  for (std::size_t u = 0; u + 1 < p.times.size(); ++u)
    if (!(p.times[u] < p.times[u + 1])) return false;
  for (const AffWeylElt& x : p.dirs)
    if (!is_member(x)) return false;
  for (std::size_t u = 0; u + 1 < p.dirs.size(); ++u) {
    if (p.dirs[u] == p.dirs[u + 1]) return false;
    // chain upward from the later direction to the earlier one
    Int d = semi_infinite_length(p.dirs[u]) - semi_infinite_length(p.dirs[u + 1]);
    if (d <= 0) return false;
    std::set<AffWeylElt> frontier{p.dirs[u + 1]};
    for (Int step = 0; step < d; ++step) {
      std::set<AffWeylElt> next;
      for (const AffWeylElt& x : frontier)
        for (const auto& [y, gamma] : neighbors_up(x, p.times[u + 1])) next.insert(y);
      frontier = std::move(next);
      if (frontier.empty()) return false;
    }
    if (!frontier.count(p.dirs[u])) return false;
  }
  return true;
}

AffineWeight SILSModel::wt(const SILSPath& p) const {
  int rank = W_->rank();
  AffineWeight acc(WeightVec::zero(rank));
  for (std::size_t u = 0; u < p.dirs.size(); ++u) {
    Rat dt = p.times[u + 1] - p.times[u];
    WeightVec wl = p.dirs[u].w.act(lambda_);
    for (int i = 0; i < rank; ++i) acc.finite[static_cast<std::size_t>(i)] += dt * Rat(wl[i]);
    acc.delta -= dt * Rat(RootDatum::pair(lambda_, p.dirs[u].xi));
  }
  return acc;
}

Int SILSModel::wt_pair(const SILSPath& p, int a) const {
  AffineWeight w = wt(p);
  if (a == 0) return as_integer(-RootDatum::pair(w.finite, W_->datum().theta_dual));
  return as_integer(w.finite[static_cast<std::size_t>(a - 1)]);
}

std::vector<Int> SILSModel::slopes(const SILSPath& p, int a) const {
  check_arg(a >= 0 && a <= W_->rank(), "operator index out of range");
  std::vector<Int> out;
  out.reserve(p.dirs.size());
  for (const AffWeylElt& x : p.dirs) {
    WeightVec wl = x.w.act(lambda_);
    out.push_back(a == 0 ? -RootDatum::pair(wl, W_->datum().theta_dual) : wl[a - 1]);
  }
  return out;
}

Int SILSModel::eps(const SILSPath& p, int a) const {
  return path_detail::eps_of(path_detail::profile(slopes(p, a), p.times));
}

Int SILSModel::phi(const SILSPath& p, int a) const {
  return path_detail::phi_of(path_detail::profile(slopes(p, a), p.times));
}

std::optional<SILSPath> SILSModel::e(const SILSPath& p, int a) const {
  std::vector<Int> sl = slopes(p, a);
  path_detail::Profile pr = path_detail::profile(sl, p.times);
  auto cut = path_detail::raising_cut(sl, p.times, pr);
  if (!cut) return std::nullopt;
  AffWeylElt r = affine_simple_reflection(*W_, a);
  auto raw = path_detail::apply_raising(p.dirs, p.times, *cut,
                                        [&](const AffWeylElt& x) { return r * x; });
  path_detail::normalize(raw.dirs, raw.times);
  SILSPath q{std::move(raw.dirs), std::move(raw.times)};
  for (const AffWeylElt& x : q.dirs) require(is_member(x), "raising operator left the representative set");
  return q;
}

std::optional<SILSPath> SILSModel::f(const SILSPath& p, int a) const {
  std::vector<Int> sl = slopes(p, a);
  path_detail::Profile pr = path_detail::profile(sl, p.times);
  auto cut = path_detail::lowering_cut(sl, p.times, pr);
  if (!cut) return std::nullopt;
  AffWeylElt r = affine_simple_reflection(*W_, a);
  auto raw = path_detail::apply_lowering(p.dirs, p.times, *cut,
                                         [&](const AffWeylElt& x) { return r * x; });
  path_detail::normalize(raw.dirs, raw.times);
  SILSPath q{std::move(raw.dirs), std::move(raw.times)};
  for (const AffWeylElt& x : q.dirs) require(is_member(x), "lowering operator left the representative set");
  return q;
}

SILSPath SILSModel::translate(const SILSPath& p, const CorootVec& xi) const {
  SILSPath q;
  q.times = p.times;
  for (const AffWeylElt& x : p.dirs) q.dirs.push_back(proj(AffWeylElt{x.w, x.xi + xi}));
  for (std::size_t u = 0; u + 1 < q.dirs.size(); ++u)
    require(!(q.dirs[u] == q.dirs[u + 1]), "translation collapsed adjacent directions");
  return q;
}

SILSPath SILSModel::weyl_act(const AffWeylElt& x, const SILSPath& p) const {
  std::vector<int> word = affine_word(x);
  SILSPath cur = p;
  for (std::size_t k = word.size(); k-- > 0;) {
    int a = word[k];
    Int n = wt_pair(cur, a);
    for (Int i = 0; i < n; ++i) {
      auto nx = f(cur, a);
      require(nx.has_value(), "string too short for the reflection action");
      cur = *nx;
    }
    for (Int i = 0; i < -n; ++i) {
      auto nx = e(cur, a);
      require(nx.has_value(), "string too short for the reflection action");
      cur = *nx;
    }
  }
  return cur;
}

QLSPath SILSModel::cl(const SILSPath& p) const {
  std::vector<WeylElt> dirs;
  for (const AffWeylElt& x : p.dirs) dirs.push_back(cl_dir(x));
  std::vector<Rat> times = p.times;
  path_detail::normalize(dirs, times);
  return QLSPath{std::move(dirs), std::move(times)};
}

SILSPath SILSModel::lift(const QLSPath& eta) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = lifts_.find(eta);
    if (it != lifts_.end()) return it->second;
  }
  int s = eta.segments();
  std::vector<CorootVec> xi(static_cast<std::size_t>(s), CorootVec::zero(W_->rank()));
  for (int u = s - 2; u >= 0; --u)
    xi[static_cast<std::size_t>(u)] =
        xi[static_cast<std::size_t>(u + 1)] +
        graph_->shortest_weight(eta.dirs[static_cast<std::size_t>(u + 1)],
                                eta.dirs[static_cast<std::size_t>(u)]);
  SILSPath out;
  out.times = eta.times;
  for (int u = 0; u < s; ++u)
    out.dirs.push_back(
        proj(AffWeylElt{eta.dirs[static_cast<std::size_t>(u)], xi[static_cast<std::size_t>(u)]}));
  require(is_valid(out), "lift produced an invalid path");
  require(cl(out) == eta, "lift does not project back");
  std::lock_guard<std::mutex> lock(mu_);
  return lifts_.emplace(eta, std::move(out)).first->second;
}

Int SILSModel::deg_via_lift(const QLSPath& eta, const WeylElt& w) const {
  CorootVec shift = graph_->shortest_weight(min_coset_rep(w, J_), eta.kappa());
  SILSPath moved = translate(lift(eta), shift);
  AffineWeight omega = wt(moved);
  std::vector<Rat> expect(static_cast<std::size_t>(W_->rank()), Rat(0));
  for (std::size_t u = 0; u < eta.dirs.size(); ++u) {
    Rat dt = eta.times[u + 1] - eta.times[u];
    WeightVec vl = eta.dirs[u].act(lambda_);
    for (int i = 0; i < W_->rank(); ++i) expect[static_cast<std::size_t>(i)] += dt * Rat(vl[i]);
  }
  require(omega.finite == expect, "twisted lift changed the classical weight");
  return omega.delta_int();
}

}  // namespace qlskit
