#include "qlskit/qbg.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <sstream>

#include "qlskit/errors.hpp"

namespace qlskit {

QBGraph::QBGraph(const WeylGroup& W, std::vector<int> J) : W_(&W), J_(std::move(J)) {
  std::sort(J_.begin(), J_.end());
  for (int i : J_) check_arg(i >= 0 && i < W.rank(), "parabolic index out of range");

  for (const WeylElt& w : W.elements())
    if (min_coset_rep(w, J_) == w) {
      vidx_[w.idx] = static_cast<int>(vertices_.size());
      vertices_.push_back(w);
    }

  const RootDatum& datum = W.datum();
  out_.resize(vertices_.size());
  for (int a = 0; a < num_vertices(); ++a) {
    const WeylElt& w = vertices_[static_cast<std::size_t>(a)];
    for (int k = 0; k < datum.num_pos_roots(); ++k) {
      const RootVec& beta = datum.pos_roots[static_cast<std::size_t>(k)];
      if (datum.root_in_span(beta, J_)) continue;
      const CorootVec& dual = datum.pos_coroots[static_cast<std::size_t>(k)];
      WeylElt v = min_coset_rep(w * W.reflection(beta), J_);
      Int dl = v.length() - w.length();
      bool bruhat = dl == 1;
      bool quantum = dl == 1 - datum.two_rho_rhoJ_pair(J_, dual);
      require(!(bruhat && quantum), "edge cannot be both a cover and quantum");
      if (!bruhat && !quantum) continue;
      out_[static_cast<std::size_t>(a)].push_back(static_cast<int>(edges_.size()));
      edges_.push_back(QBGEdge{a, vidx_.at(v.idx), beta, dual, quantum});
    }
  }

  // strong connectivity: vertex 0 reaches everything forwards and backwards
  std::vector<std::vector<int>> in(vertices_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e)
    in[static_cast<std::size_t>(edges_[e].dst)].push_back(static_cast<int>(e));
  for (int dir = 0; dir < 2; ++dir) {
    std::vector<char> seen(vertices_.size(), 0);
    std::deque<int> q{0};
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      const auto& adj = dir == 0 ? out_[static_cast<std::size_t>(x)] : in[static_cast<std::size_t>(x)];
      for (int e : adj) {
        int y = dir == 0 ? edges_[static_cast<std::size_t>(e)].dst : edges_[static_cast<std::size_t>(e)].src;
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = 1;
          ++count;
          q.push_back(y);
        }
      }
    }
    require(count == num_vertices(), "graph is not strongly connected");
  }
}

int QBGraph::vertex_index(const WeylElt& w) const {
  WeylElt rep = min_coset_rep(w, J_);
  auto it = vidx_.find(rep.idx);
  require(it != vidx_.end(), "coset representative not among the vertices");
  return it->second;
}

const std::pair<std::vector<int>, std::vector<CorootVec>>& QBGraph::from(int src) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = sssp_.find(src);
  if (it != sssp_.end()) return it->second;

  int n = num_vertices();
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  dist[static_cast<std::size_t>(src)] = 0;
  std::deque<int> q{src};
  std::vector<int> order;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    order.push_back(x);
    for (int e : out_[static_cast<std::size_t>(x)]) {
      int y = edges_[static_cast<std::size_t>(e)].dst;
      if (dist[static_cast<std::size_t>(y)] < 0) {
        dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
        q.push_back(y);
      }
    }
  }

  // weight DP along the shortest-path DAG; every shortest path must agree
  std::vector<std::optional<CorootVec>> wt(static_cast<std::size_t>(n));
  wt[static_cast<std::size_t>(src)] = CorootVec::zero(W_->rank());
  for (int x : order) {
    const CorootVec& wx = *wt[static_cast<std::size_t>(x)];
    for (int e : out_[static_cast<std::size_t>(x)]) {
      const QBGEdge& ed = edges_[static_cast<std::size_t>(e)];
      if (dist[static_cast<std::size_t>(ed.dst)] != dist[static_cast<std::size_t>(x)] + 1) continue;
      CorootVec cand = wx;
      if (ed.quantum) {
        CorootVec add = ed.label_dual;
        for (int i : J_) add[i] = 0;
        cand = cand + add;
      }
      auto& slot = wt[static_cast<std::size_t>(ed.dst)];
      if (!slot.has_value())
        slot = cand;
      else if (!(*slot == cand))
        throw UniquenessViolation("shortest paths with different projected weights");
    }
  }

  std::vector<CorootVec> wts(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    require(dist[static_cast<std::size_t>(x)] >= 0, "unreachable vertex in a strongly connected graph");
    wts[static_cast<std::size_t>(x)] = *wt[static_cast<std::size_t>(x)];
  }
  return sssp_.emplace(src, std::make_pair(std::move(dist), std::move(wts))).first->second;
}

int QBGraph::distance(int src, int dst) const {
  return from(src).first[static_cast<std::size_t>(dst)];
}

CorootVec QBGraph::shortest_weight(int src, int dst) const {
  return from(src).second[static_cast<std::size_t>(dst)];
}

CorootVec QBGraph::shortest_weight(const WeylElt& src, const WeylElt& dst) const {
  return shortest_weight(vertex_index(src), vertex_index(dst));
}

bool QBGraph::tilted_leq(const WeylElt& u, const WeylElt& v, const WeylElt& w) const {
  require(J_.empty(), "tilted order lives on the full graph");
  int iu = vertex_index(u), iv = vertex_index(v), iw = vertex_index(w);
  return distance(iw, iu) + distance(iu, iv) == distance(iw, iv);
}

WeylElt QBGraph::deodhar_lift(const WeylElt& v, const std::vector<int>& coset_J, const WeylElt& w) const {
  require(J_.empty(), "lift lives on the full graph");
  std::vector<WeylElt> coset;
  for (const WeylElt& u : W_->parabolic_elements(coset_J)) coset.push_back(v * u);
  std::sort(coset.begin(), coset.end());
  std::vector<WeylElt> minima;
  for (const WeylElt& c : coset) {
    bool min = true;
    for (const WeylElt& other : coset)
      if (!tilted_leq(c, other, w)) {
        min = false;
        break;
      }
    if (min) minima.push_back(c);
  }
  if (minima.size() != 1)
    throw UniquenessViolation("tilted order has " + std::to_string(minima.size()) +
                              " minima on the coset");
  return minima.front();
}

void QBGraph::verify_all_weights() const {
  for (int src = 0; src < num_vertices(); ++src) from(src);
}

std::string QBGraph::export_dot() const {
  const RootDatum& datum = W_->datum();
  std::ostringstream os;
  os << "digraph qbg {\n";
  for (int a = 0; a < num_vertices(); ++a)
    os << "  n" << a << " [label=\"" << vertices_[static_cast<std::size_t>(a)].str() << "\"];\n";
  for (const QBGEdge& e : edges_) {
    os << "  n" << e.src << " -> n" << e.dst << " [label=\"" << datum.root_str(e.label) << "\"";
    if (e.quantum) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace qlskit
