#include "qlskit/graded_character.hpp"

#include "qlskit/util.hpp"

namespace qlskit {

void GradedCharacter::add(const WeightVec& mu, Int deg, Int coef) {
  if (coef == 0) return;
  Key k{mu, deg};
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(std::move(k), coef);
    return;
  }
  it->second += coef;
  if (it->second == 0) terms_.erase(it);
}

GradedCharacter& GradedCharacter::operator+=(const GradedCharacter& other) {
  for (const auto& [k, c] : other.terms_) add(k.first, k.second, c);
  return *this;
}

GradedCharacter GradedCharacter::shifted(const WeightVec& mu_shift, Int deg_shift) const {
  GradedCharacter out;
  for (const auto& [k, c] : terms_) out.add(k.first + mu_shift, k.second + deg_shift, c);
  return out;
}

std::map<WeightVec, Int> GradedCharacter::at_q1() const {
  std::map<WeightVec, Int> out;
  for (const auto& [k, c] : terms_) {
    out[k.first] += c;
    if (out[k.first] == 0) out.erase(k.first);
  }
  return out;
}

std::string GradedCharacter::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : terms_) {
    if (!s.empty()) s += " + ";
    std::string term;
    if (c != 1) term += std::to_string(c) + "*";
    if (k.second != 0) term += "q^" + std::to_string(k.second) + "*";
    term += "e" + coords_str(k.first);
    s += term;
  }
  return s;
}

}  // namespace qlskit
