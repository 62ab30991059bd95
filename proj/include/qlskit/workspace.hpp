#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "qlskit/decomp.hpp"

namespace qlskit {

// Lazily built, cached objects for one root system: graphs per parabolic set,
// path models per shape, and decomposition maps per factor list (the whole
// shape is always the sum of the factors). References stay valid for the
// lifetime of the workspace; builds are serialized behind one lock.
class Workspace {
 public:
  explicit Workspace(const std::string& type_label);
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  const RootDatum& datum() const { return datum_; }
  const WeylGroup& group() const { return W_; }

  const QBGraph& full_graph() const { return graph({}); }
  const QBGraph& graph(std::vector<int> J) const;
  const QLSModel& qls(const WeightVec& lambda) const;
  const SILSModel& sils(const WeightVec& lambda) const;
  const ThetaIso& theta(const std::vector<WeightVec>& parts) const;
  const XiEmbedder& xi(const std::vector<WeightVec>& parts, int depth) const;

  WeightVec weight(std::vector<Int> coords) const;

 private:
  void check_shape(const WeightVec& lambda) const;

  RootDatum datum_;
  WeylGroup W_;

  mutable std::recursive_mutex mu_;
  mutable std::map<std::vector<int>, std::unique_ptr<QBGraph>> graphs_;
  mutable std::map<WeightVec, std::unique_ptr<QLSModel>> qls_;
  mutable std::map<WeightVec, std::unique_ptr<SILSModel>> sils_;
  mutable std::map<std::vector<WeightVec>, std::unique_ptr<ThetaIso>> thetas_;
  mutable std::map<std::pair<std::vector<WeightVec>, int>, std::unique_ptr<XiEmbedder>> xis_;
};

}  // namespace qlskit
