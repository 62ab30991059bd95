#pragma once

#include <cstddef>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace qlskit {

inline void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

template <typename It, typename Fn>
std::string join(It first, It last, const std::string& sep, Fn render) {
  std::ostringstream os;
  bool head = true;
  for (; first != last; ++first) {
    if (!head) os << sep;
    head = false;
    os << render(*first);
  }
  return os.str();
}

template <typename Container, typename Fn>
std::string join(const Container& c, const std::string& sep, Fn render) {
  return join(c.begin(), c.end(), sep, render);
}

// Runs fn(i) for i in [0, n). With jobs <= 1 runs inline; otherwise splits the
// index range over `jobs` threads. fn must be safe to call concurrently.
// The first exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

// Resolves a worker count: explicit argument wins, then the QLSKIT_JOBS
// environment variable, then 1.
int resolve_jobs(int requested);

}  // namespace qlskit
