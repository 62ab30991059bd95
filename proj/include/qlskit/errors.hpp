#pragma once

#include <stdexcept>
#include <string>

namespace qlskit {

// A bounded search ran out of candidates without finding a witness
// that theory guarantees to exist.
struct SearchExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An iterative-deepening search hit its depth or node budget.
struct DepthExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A quantity that theory pins down uniquely turned out not to be unique.
struct UniquenessViolation : std::logic_error {
  using std::logic_error::logic_error;
};

// Two crystals that should be isomorphic disagreed during a synchronized walk.
struct IsomorphismMismatch : std::logic_error {
  using std::logic_error::logic_error;
};

// An enumeration would exceed its configured cap.
struct EnumerationCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::logic_error(msg);
}

inline void check_arg(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace qlskit
