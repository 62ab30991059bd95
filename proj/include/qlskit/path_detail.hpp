#pragma once

// Piecewise-linear bookkeeping shared by the path models: breakpoint
// profiles of the pairing function H(t), cut positions for the raising
// and lowering operators, and the raw rebuild + normalization step.

#include <optional>
#include <vector>

#include "qlskit/errors.hpp"
#include "qlskit/rational.hpp"

namespace qlskit::path_detail {

struct Profile {
  std::vector<Rat> h;  // H at the breakpoints, size times.size()
  Rat m;               // minimum of H; attained at a breakpoint
};

inline Profile profile(const std::vector<Int>& slopes, const std::vector<Rat>& times) {
  Profile pr;
  pr.h.resize(times.size());
  pr.h[0] = Rat(0);
  for (std::size_t u = 1; u < times.size(); ++u)
    pr.h[u] = pr.h[u - 1] + Rat(slopes[u - 1]) * (times[u] - times[u - 1]);
  pr.m = pr.h[0];
  for (const Rat& v : pr.h)
    if (v < pr.m) pr.m = v;
  return pr;
}

inline Int eps_of(const Profile& pr) { return -as_integer(pr.m); }
inline Int phi_of(const Profile& pr) { return as_integer(pr.h.back() - pr.m); }

struct RaisingCut {
  int p;  // smallest index with times[p] > t0
  int q;  // first breakpoint index attaining the minimum; t1 = times[q]
  Rat t0, t1;
};

struct LoweringCut {
  int p;  // last breakpoint index attaining the minimum; t0 = times[p]
  int q;  // largest index with times[q] < t1
  Rat t0, t1;
};

inline std::optional<RaisingCut> raising_cut(const std::vector<Int>& slopes,
                                             const std::vector<Rat>& times, const Profile& pr) {
  Int m = as_integer(pr.m);
  if (m == 0) return std::nullopt;
  int s = static_cast<int>(slopes.size());
  RaisingCut cut;
  cut.q = -1;
  for (int u = 0; u <= s; ++u)
    if (pr.h[static_cast<std::size_t>(u)] == pr.m) {
      cut.q = u;
      break;
    }
  cut.t1 = times[static_cast<std::size_t>(cut.q)];
  Rat target(m + 1);
  bool found = false;
  // last time <= t1 with H = m+1: walk segments right to left
  for (int u = cut.q; u >= 1 && !found; --u) {
    if (pr.h[static_cast<std::size_t>(u)] == target) {
      cut.t0 = times[static_cast<std::size_t>(u)];
      found = true;
      break;
    }
    Int c = slopes[static_cast<std::size_t>(u - 1)];
    if (c != 0) {
      Rat tstar = times[static_cast<std::size_t>(u - 1)] +
                  (target - pr.h[static_cast<std::size_t>(u - 1)]) / Rat(c);
      if (times[static_cast<std::size_t>(u - 1)] < tstar && tstar < times[static_cast<std::size_t>(u)]) {
        cut.t0 = tstar;
        found = true;
        break;
      }
    }
  }
  if (!found && pr.h[0] == target) {
    cut.t0 = times[0];
    found = true;
  }
  require(found, "raising cut: no crossing of m+1 left of the minimum");
  cut.p = -1;
  for (int u = 0; u <= s; ++u)
    if (times[static_cast<std::size_t>(u)] > cut.t0) {
      cut.p = u;
      break;
    }
  require(cut.p >= 1 && cut.p <= cut.q, "raising cut: split index out of range");
  return cut;
}

inline std::optional<LoweringCut> lowering_cut(const std::vector<Int>& slopes,
                                               const std::vector<Rat>& times, const Profile& pr) {
  Int m = as_integer(pr.m);
  if (pr.h.back() - pr.m < Rat(1)) return std::nullopt;
  int s = static_cast<int>(slopes.size());
  LoweringCut cut;
  cut.p = -1;
  for (int u = s; u >= 0; --u)
    if (pr.h[static_cast<std::size_t>(u)] == pr.m) {
      cut.p = u;
      break;
    }
  cut.t0 = times[static_cast<std::size_t>(cut.p)];
  Rat target(m + 1);
  bool found = false;
  // first time >= t0 with H = m+1: walk segments left to right
  for (int u = cut.p + 1; u <= s && !found; ++u) {
    if (pr.h[static_cast<std::size_t>(u - 1)] == target) {
      cut.t1 = times[static_cast<std::size_t>(u - 1)];
      found = true;
      break;
    }
    Int c = slopes[static_cast<std::size_t>(u - 1)];
    if (c != 0) {
      Rat tstar = times[static_cast<std::size_t>(u - 1)] +
                  (target - pr.h[static_cast<std::size_t>(u - 1)]) / Rat(c);
      if (times[static_cast<std::size_t>(u - 1)] < tstar && tstar < times[static_cast<std::size_t>(u)]) {
        cut.t1 = tstar;
        found = true;
        break;
      }
    }
  }
  if (!found && pr.h.back() == target) {
    cut.t1 = times.back();
    found = true;
  }
  require(found, "lowering cut: no crossing of m+1 right of the minimum");
  cut.q = -1;
  for (int u = s; u >= 0; --u)
    if (times[static_cast<std::size_t>(u)] < cut.t1) {
      cut.q = u;
      break;
    }
  require(cut.q >= cut.p && cut.q <= s, "lowering cut: split index out of range");
  return cut;
}

template <typename Dir>
struct Raw {
  std::vector<Dir> dirs;
  std::vector<Rat> times;
};

// Directions p-1..q-1 reflected, segment p-1 split at t0 (empty pieces are
// dropped by normalize).
template <typename Dir, typename Refl>
Raw<Dir> apply_raising(const std::vector<Dir>& d, const std::vector<Rat>& t, const RaisingCut& cut,
                       Refl refl) {
  Raw<Dir> r;
  int s = static_cast<int>(d.size());
  for (int u = 0; u < cut.p; ++u) r.dirs.push_back(d[static_cast<std::size_t>(u)]);
  for (int u = cut.p - 1; u <= cut.q - 1; ++u) r.dirs.push_back(refl(d[static_cast<std::size_t>(u)]));
  for (int u = cut.q; u < s; ++u) r.dirs.push_back(d[static_cast<std::size_t>(u)]);
  for (int u = 0; u < cut.p; ++u) r.times.push_back(t[static_cast<std::size_t>(u)]);
  r.times.push_back(cut.t0);
  for (int u = cut.p; u <= s; ++u) r.times.push_back(t[static_cast<std::size_t>(u)]);
  return r;
}

// Directions p..q reflected, segment q split at t1.
template <typename Dir, typename Refl>
Raw<Dir> apply_lowering(const std::vector<Dir>& d, const std::vector<Rat>& t, const LoweringCut& cut,
                        Refl refl) {
  Raw<Dir> r;
  int s = static_cast<int>(d.size());
  for (int u = 0; u < cut.p; ++u) r.dirs.push_back(d[static_cast<std::size_t>(u)]);
  for (int u = cut.p; u <= cut.q; ++u) r.dirs.push_back(refl(d[static_cast<std::size_t>(u)]));
  for (int u = cut.q; u < s; ++u) r.dirs.push_back(d[static_cast<std::size_t>(u)]);
  for (int u = 0; u <= cut.q; ++u) r.times.push_back(t[static_cast<std::size_t>(u)]);
  r.times.push_back(cut.t1);
  for (int u = cut.q + 1; u <= s; ++u) r.times.push_back(t[static_cast<std::size_t>(u)]);
  return r;
}

// Drops empty segments and merges adjacent equal directions.
template <typename Dir>
void normalize(std::vector<Dir>& dirs, std::vector<Rat>& times) {
  std::vector<Dir> nd;
  std::vector<Rat> nt{times[0]};
  for (std::size_t u = 0; u < dirs.size(); ++u) {
    if (times[u + 1] == times[u]) continue;
    require(times[u + 1] > times[u], "times must be nondecreasing");
    if (!nd.empty() && nd.back() == dirs[u])
      nt.back() = times[u + 1];
    else {
      nd.push_back(dirs[u]);
      nt.push_back(times[u + 1]);
    }
  }
  dirs = std::move(nd);
  times = std::move(nt);
}

}  // namespace qlskit::path_detail
