#pragma once

#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qlskit/weyl.hpp"

namespace qlskit {

struct QBGEdge {
  int src = -1;
  int dst = -1;
  RootVec label;         // positive root outside the J-span
  CorootVec label_dual;  // its dual, J coordinates intact
  bool quantum = false;
};

// Parabolic quantum Bruhat graph on the minimal coset representatives W^J.
// Vertices are listed in group-index order; edges w -> floor(w s_beta)^J
// are either covers (length +1) or quantum (length 1 - <2rho - 2rho_J, beta^vee>).
class QBGraph {
 public:
  QBGraph(const WeylGroup& W, std::vector<int> J);
  QBGraph(const QBGraph&) = delete;
  QBGraph& operator=(const QBGraph&) = delete;

  const WeylGroup& group() const { return *W_; }
  const std::vector<int>& J() const { return J_; }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  const std::vector<WeylElt>& vertices() const { return vertices_; }
  int vertex_index(const WeylElt& w) const;  // w is reduced to its coset representative
  const std::vector<QBGEdge>& edges() const { return edges_; }
  const std::vector<int>& out_edges(int v) const { return out_[static_cast<std::size_t>(v)]; }

  // Directed distance; every pair is reachable (checked at build time).
  int distance(int src, int dst) const;
  // Common J-projected coroot weight of every shortest directed path;
  // uniqueness across shortest paths is asserted when first computed.
  CorootVec shortest_weight(int src, int dst) const;
  CorootVec shortest_weight(const WeylElt& src, const WeylElt& dst) const;

  // u <= v in the w-tilted order (distance additivity through u). Full graph only.
  bool tilted_leq(const WeylElt& u, const WeylElt& v, const WeylElt& w) const;
  // Unique minimum of the coset v W_coset_J in the w-tilted order. Full graph only.
  WeylElt deodhar_lift(const WeylElt& v, const std::vector<int>& coset_J, const WeylElt& w) const;

  // Forces the shortest-weight computation (and its uniqueness assert)
  // from every source vertex.
  void verify_all_weights() const;

  std::string export_dot() const;

 private:
  const WeylGroup* W_;
  std::vector<int> J_;
  std::vector<WeylElt> vertices_;
  std::unordered_map<int, int> vidx_;
  std::vector<QBGEdge> edges_;
  std::vector<std::vector<int>> out_;

  mutable std::mutex mu_;
  mutable std::map<int, std::pair<std::vector<int>, std::vector<CorootVec>>> sssp_;

  const std::pair<std::vector<int>, std::vector<CorootVec>>& from(int src) const;
};

}  // namespace qlskit
