#pragma once

#include <map>
#include <string>
#include <utility>

#include "qlskit/root_system.hpp"

namespace qlskit {

// Finite sum of terms c * q^d * e^mu with integer coefficients,
// keyed by (mu, d) in a deterministic order.
class GradedCharacter {
 public:
  using Key = std::pair<WeightVec, Int>;

  void add(const WeightVec& mu, Int deg, Int coef = 1);
  GradedCharacter& operator+=(const GradedCharacter& other);

  // Every term multiplied by q^deg_shift * e^mu_shift.
  GradedCharacter shifted(const WeightVec& mu_shift, Int deg_shift) const;

  // Coefficients summed over the q-grading.
  std::map<WeightVec, Int> at_q1() const;

  const std::map<Key, Int>& terms() const { return terms_; }
  bool operator==(const GradedCharacter&) const = default;
  std::string str() const;

 private:
  std::map<Key, Int> terms_;  // zero coefficients are erased
};

}  // namespace qlskit
