#include "qlskit/workspace.hpp"

#include <algorithm>

#include "qlskit/errors.hpp"

namespace qlskit {

Workspace::Workspace(const std::string& type_label)
    : datum_(RootDatum::build(type_label)), W_(datum_) {}

WeightVec Workspace::weight(std::vector<Int> coords) const {
  check_arg(static_cast<int>(coords.size()) == W_.rank(),
            "weight coordinate count does not match the rank");
  return WeightVec(std::move(coords));
}

void Workspace::check_shape(const WeightVec& lambda) const {
  check_arg(lambda.rank() == W_.rank(), "shape rank does not match the group");
  for (int i = 0; i < lambda.rank(); ++i)
    check_arg(lambda[i] >= 0, "shape must be dominant");
}

const QBGraph& Workspace::graph(std::vector<int> J) const {
  std::sort(J.begin(), J.end());
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = graphs_.find(J);
  if (it == graphs_.end())
    it = graphs_.emplace(J, std::make_unique<QBGraph>(W_, J)).first;
  return *it->second;
}

const QLSModel& Workspace::qls(const WeightVec& lambda) const {
  check_shape(lambda);
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = qls_.find(lambda);
  if (it == qls_.end()) {
    const QBGraph& g = graph(derive_J(lambda));
    it = qls_.emplace(lambda, std::make_unique<QLSModel>(W_, lambda, g)).first;
  }
  return *it->second;
}

const SILSModel& Workspace::sils(const WeightVec& lambda) const {
  check_shape(lambda);
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = sils_.find(lambda);
  if (it == sils_.end()) {
    const QBGraph& g = graph(derive_J(lambda));
    it = sils_.emplace(lambda, std::make_unique<SILSModel>(W_, lambda, g)).first;
  }
  return *it->second;
}

const ThetaIso& Workspace::theta(const std::vector<WeightVec>& parts) const {
  check_arg(!parts.empty(), "tensor decomposition needs at least one factor");
  WeightVec sum = WeightVec::zero(W_.rank());
  for (const WeightVec& p : parts) sum = sum + p;
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = thetas_.find(parts);
  if (it == thetas_.end()) {
    const QLSModel& whole = qls(sum);
    std::vector<const QLSModel*> ms;
    ms.reserve(parts.size());
    for (const WeightVec& p : parts) ms.push_back(&qls(p));
    it = thetas_.emplace(parts, std::make_unique<ThetaIso>(whole, std::move(ms))).first;
  }
  return *it->second;
}

const XiEmbedder& Workspace::xi(const std::vector<WeightVec>& parts, int depth) const {
  check_arg(!parts.empty(), "tensor decomposition needs at least one factor");
  WeightVec sum = WeightVec::zero(W_.rank());
  for (const WeightVec& p : parts) sum = sum + p;
  auto key = std::make_pair(parts, depth);
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = xis_.find(key);
  if (it == xis_.end()) {
    const SILSModel& whole = sils(sum);
    std::vector<const SILSModel*> ms;
    ms.reserve(parts.size());
    for (const WeightVec& p : parts) ms.push_back(&sils(p));
    it = xis_.emplace(key, std::make_unique<XiEmbedder>(whole, std::move(ms), depth)).first;
  }
  return *it->second;
}

}  // namespace qlskit
