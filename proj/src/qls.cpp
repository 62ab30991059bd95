#include "qlskit/qls.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "qlskit/errors.hpp"
#include "qlskit/path_detail.hpp"

namespace qlskit {

std::string QLSPath::str() const {
  std::string s = "(";
  s += join(dirs, ",", [](const WeylElt& w) { return w.str(); });
  s += ";";
  s += join(times, ",", [](const Rat& t) { return qlskit::str(t); });
  s += ")";
  return s;
}

std::size_t QLSPathHasher::operator()(const QLSPath& p) const {
  std::size_t seed = p.dirs.size();
  for (const WeylElt& w : p.dirs) hash_combine(seed, static_cast<std::size_t>(w.idx));
  for (const Rat& t : p.times) {
    hash_combine(seed, std::hash<Int>{}(t.numerator()));
    hash_combine(seed, std::hash<Int>{}(t.denominator()));
  }
  return seed;
}

QLSModel::QLSModel(const WeylGroup& W, WeightVec lambda, const QBGraph& graph, Int cap)
    : W_(&W), lambda_(std::move(lambda)), J_(derive_J(lambda_)), graph_(&graph), cap_(cap) {
  check_arg(lambda_.rank() == W.rank(), "weight of the wrong rank");
  std::vector<int> gJ = graph.J();
  std::sort(gJ.begin(), gJ.end());
  check_arg(gJ == J_, "graph parabolic does not match the shape stabilizer");
  const RootDatum& datum = W.datum();
  for (int k = 0; k < datum.num_pos_roots(); ++k) {
    if (datum.root_in_span(datum.pos_roots[static_cast<std::size_t>(k)], J_)) continue;
    Int b = RootDatum::pair(lambda_, datum.pos_coroots[static_cast<std::size_t>(k)]);
    require(b > 0, "shape pairs nonpositively with a coroot outside the stabilizer");
    for (Int a = 1; a < b; ++a) turns_.insert(Rat(a, b));
  }
}

QLSPath QLSModel::straight(const WeylElt& v) const {
  return QLSPath{{min_coset_rep(v, J_)}, {Rat(0), Rat(1)}};
}

const std::vector<char>& QLSModel::reach_set(const Rat& sigma, int src) const {
  auto key = std::make_pair(sigma, src);
  auto it = reach_.find(key);
  if (it != reach_.end()) return it->second;
  std::vector<char> seen(static_cast<std::size_t>(graph_->num_vertices()), 0);
  seen[static_cast<std::size_t>(src)] = 1;
  std::deque<int> q{src};
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int e : graph_->out_edges(x)) {
      const QBGEdge& ed = graph_->edges()[static_cast<std::size_t>(e)];
      if (!is_integer(sigma * Rat(RootDatum::pair(lambda_, ed.label_dual)))) continue;
      if (!seen[static_cast<std::size_t>(ed.dst)]) {
        seen[static_cast<std::size_t>(ed.dst)] = 1;
        q.push_back(ed.dst);
      }
    }
  }
  return reach_.emplace(std::move(key), std::move(seen)).first->second;
}

bool QLSModel::reachable(const WeylElt& src, const WeylElt& dst, const Rat& sigma) const {
  std::lock_guard<std::mutex> lock(mu_);
  return reach_set(sigma, graph_->vertex_index(src))[static_cast<std::size_t>(graph_->vertex_index(dst))] != 0;
}

bool QLSModel::is_valid(const QLSPath& p) const {
  if (p.dirs.empty() || p.times.size() != p.dirs.size() + 1) return false;
  if (p.times.front() != Rat(0) || p.times.back() != Rat(1)) return false;
  for (std::size_t u = 0; u + 1 < p.times.size(); ++u)
    if (!(p.times[u] < p.times[u + 1])) return false;
  for (const WeylElt& v : p.dirs)
    if (!(min_coset_rep(v, J_) == v)) return false;
  for (std::size_t u = 0; u + 1 < p.dirs.size(); ++u) {
    if (p.dirs[u] == p.dirs[u + 1]) return false;
    if (!reachable(p.dirs[u + 1], p.dirs[u], p.times[u + 1])) return false;
  }
  return true;
}

const std::vector<QLSPath>& QLSModel::paths() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (paths_done_) return paths_;

  std::vector<Rat> turn_list(turns_.begin(), turns_.end());
  int nt = static_cast<int>(turn_list.size());
  check_arg(nt < 62, "turning-point set too large to enumerate subsets");

  int nv = graph_->num_vertices();
  std::vector<QLSPath> out;

  for (unsigned long long mask = 0; mask < (1ULL << nt); ++mask) {
    std::vector<Rat> interior;
    for (int b = 0; b < nt; ++b)
      if (mask & (1ULL << b)) interior.push_back(turn_list[static_cast<std::size_t>(b)]);
    int s = static_cast<int>(interior.size()) + 1;

    std::vector<Rat> times(static_cast<std::size_t>(s) + 1);
    times[0] = Rat(0);
    for (int u = 1; u < s; ++u) times[static_cast<std::size_t>(u)] = interior[static_cast<std::size_t>(u - 1)];
    times[static_cast<std::size_t>(s)] = Rat(1);

    // chains built right to left: dirs[u] must be sigma_{u+1}-reachable
    // from dirs[u+1]
    std::vector<int> chain(static_cast<std::size_t>(s), -1);
    auto emit = [&](auto&& self, int u) -> void {
      if (u < 0) {
        QLSPath p;
        p.times = times;
        for (int t = 0; t < s; ++t)
          p.dirs.push_back(graph_->vertices()[static_cast<std::size_t>(chain[static_cast<std::size_t>(t)])]);
        if (static_cast<Int>(out.size()) >= cap_)
          throw EnumerationCapExceeded("path enumeration exceeds the cap");
        out.push_back(std::move(p));
        return;
      }
      if (u == s - 1) {
        for (int v = 0; v < nv; ++v) {
          chain[static_cast<std::size_t>(u)] = v;
          self(self, u - 1);
        }
        return;
      }
      const Rat& sigma = times[static_cast<std::size_t>(u + 1)];
      const std::vector<char>& ok = reach_set(sigma, chain[static_cast<std::size_t>(u + 1)]);
      for (int v = 0; v < nv; ++v) {
        if (v == chain[static_cast<std::size_t>(u + 1)] || !ok[static_cast<std::size_t>(v)]) continue;
        chain[static_cast<std::size_t>(u)] = v;
        self(self, u - 1);
      }
    };
    emit(emit, s - 1);
  }

  std::sort(out.begin(), out.end(), [](const QLSPath& a, const QLSPath& b) {
    if (a.segments() != b.segments()) return a.segments() < b.segments();
    if (a.times != b.times) return a.times < b.times;
    std::vector<int> ia, ib;
    for (const WeylElt& w : a.dirs) ia.push_back(w.idx);
    for (const WeylElt& w : b.dirs) ib.push_back(w.idx);
    return ia < ib;
  });
  paths_ = std::move(out);
  paths_done_ = true;
  return paths_;
}

WeightVec QLSModel::wt(const QLSPath& p) const {
  std::vector<Rat> acc(static_cast<std::size_t>(W_->rank()), Rat(0));
  for (std::size_t u = 0; u < p.dirs.size(); ++u) {
    WeightVec vl = p.dirs[u].act(lambda_);
    Rat dt = p.times[u + 1] - p.times[u];
    for (int i = 0; i < W_->rank(); ++i) acc[static_cast<std::size_t>(i)] += dt * Rat(vl[i]);
  }
  WeightVec w = WeightVec::zero(W_->rank());
  for (int i = 0; i < W_->rank(); ++i) w[i] = as_integer(acc[static_cast<std::size_t>(i)]);
  return w;
}

Int QLSModel::wt_pair(const QLSPath& p, int a) const {
  WeightVec w = wt(p);
  if (a == 0) return -RootDatum::pair(w, W_->datum().theta_dual);
  return w[a - 1];
}

std::vector<Int> QLSModel::slopes(const QLSPath& p, int a) const {
  check_arg(a >= 0 && a <= W_->rank(), "operator index out of range");
  std::vector<Int> out;
  out.reserve(p.dirs.size());
  for (const WeylElt& v : p.dirs) {
    WeightVec vl = v.act(lambda_);
    out.push_back(a == 0 ? -RootDatum::pair(vl, W_->datum().theta_dual) : vl[a - 1]);
  }
  return out;
}

Int QLSModel::eps(const QLSPath& p, int a) const {
  return path_detail::eps_of(path_detail::profile(slopes(p, a), p.times));
}

Int QLSModel::phi(const QLSPath& p, int a) const {
  return path_detail::phi_of(path_detail::profile(slopes(p, a), p.times));
}

std::optional<QLSPath> QLSModel::e(const QLSPath& p, int a) const {
  std::vector<Int> sl = slopes(p, a);
  path_detail::Profile pr = path_detail::profile(sl, p.times);
  auto cut = path_detail::raising_cut(sl, p.times, pr);
  if (!cut) return std::nullopt;
  WeylElt r = classical_affine_reflection(*W_, a);
  auto raw = path_detail::apply_raising(p.dirs, p.times, *cut,
                                        [&](const WeylElt& v) { return min_coset_rep(r * v, J_); });
  path_detail::normalize(raw.dirs, raw.times);
  QLSPath q{std::move(raw.dirs), std::move(raw.times)};
  require(is_valid(q), "raising operator produced an invalid path");
  return q;
}

std::optional<QLSPath> QLSModel::f(const QLSPath& p, int a) const {
  std::vector<Int> sl = slopes(p, a);
  path_detail::Profile pr = path_detail::profile(sl, p.times);
  auto cut = path_detail::lowering_cut(sl, p.times, pr);
  if (!cut) return std::nullopt;
  WeylElt r = classical_affine_reflection(*W_, a);
  auto raw = path_detail::apply_lowering(p.dirs, p.times, *cut,
                                         [&](const WeylElt& v) { return min_coset_rep(r * v, J_); });
  path_detail::normalize(raw.dirs, raw.times);
  QLSPath q{std::move(raw.dirs), std::move(raw.times)};
  require(is_valid(q), "lowering operator produced an invalid path");
  return q;
}

QLSPath QLSModel::f_max(const QLSPath& p, int a) const {
  QLSPath cur = p;
  while (auto nxt = f(cur, a)) cur = *nxt;
  return cur;
}

Int QLSModel::deg_at(const QLSPath& p, const WeylElt& w) const {
  Rat acc(0);
  WeylElt next = min_coset_rep(w, J_);
  for (std::size_t u = p.dirs.size(); u-- > 0;) {
    // sigma_u <lambda, wt(dirs[u+1] => dirs[u])>, with dirs[s] read as w
    CorootVec step = graph_->shortest_weight(next, p.dirs[u]);
    acc += p.times[u + 1] * Rat(RootDatum::pair(lambda_, step));
    next = p.dirs[u];
  }
  Int deg = as_integer(-acc);
  require(deg <= 0, "degree must be nonpositive");
  return deg;
}

GradedCharacter QLSModel::gch(const WeylElt& w) const {
  GradedCharacter out;
  for (const QLSPath& p : paths()) out.add(wt(p), deg_at(p, w));
  return out;
}

std::string QLSModel::export_crystal_dot() const {
  const std::vector<QLSPath>& ps = paths();
  std::map<QLSPath, int> index;
  for (std::size_t k = 0; k < ps.size(); ++k) index[ps[k]] = static_cast<int>(k);
  std::ostringstream os;
  os << "digraph crystal {\n";
  for (std::size_t k = 0; k < ps.size(); ++k)
    os << "  n" << k << " [label=\"" << ps[k].str() << "\"];\n";
  for (std::size_t k = 0; k < ps.size(); ++k)
    for (int a = 0; a <= W_->rank(); ++a)
      if (auto q = f(ps[k], a)) {
        auto it = index.find(*q);
        require(it != index.end(), "lowering operator left the enumerated crystal");
        os << "  n" << k << " -> n" << it->second << " [label=\"" << a << "\"];\n";
      }
  os << "}\n";
  return os.str();
}

}  // namespace qlskit
