#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qlskit/workspace.hpp"

namespace qlskit {

struct CaseResult {
  std::string name;
  bool pass = false;
  std::string detail;  // witness on failure, counts on success
};

struct Report {
  std::string suite;
  std::string config;
  std::vector<CaseResult> cases;

  int num_passed() const;
  bool all_pass() const;
  std::string str() const;   // header, failing cases, summary
  std::string json() const;  // full structured record
};

// Runs fn(i) for i in [0, n) over at most jobs threads; the first exception
// is rethrown after all workers join. Results must be written to disjoint
// slots so the output order is independent of the schedule.
void parallel_cases(int n, int jobs, const std::function<void(int)>& fn);

// Splits a path of the combined shape, translated to the twist w, and checks
// the two factors against the tilted-lift route. Cases run per (w, path).
Report verify_main_theorem(const Workspace& ws, const WeightVec& lambda, const WeightVec& mu,
                           const std::vector<WeylElt>& twists, int depth, int jobs);

// Degree additivity across the split, per (w, path).
Report verify_degree_identity(const Workspace& ws, const WeightVec& lambda, const WeightVec& mu,
                              const std::vector<WeylElt>& twists, int jobs);

// Graded character recursion: the combined character as a sum of twisted
// factor characters, one case per twist.
Report verify_character_identity(const Workspace& ws, const WeightVec& lambda,
                                 const WeightVec& mu, const std::vector<WeylElt>& twists,
                                 int jobs);

// Diamond, edge, and tilted-lift laws of the graph, exhaustive over the group.
Report verify_graph_lemmas(const Workspace& ws, int jobs);

// Final directions under maximal lowering, the last tensor component's final
// direction, and the lowering recursion through lifts.
Report verify_final_directions(const Workspace& ws, const WeightVec& lambda,
                               const WeightVec& mu);

// Operator axioms and connectivity of one shape's crystal.
Report verify_crystal_axioms(const Workspace& ws, const WeightVec& lambda);

// Randomized classical-projection and translation-equivariance checks.
Report verify_level_zero_samples(const Workspace& ws, const WeightVec& lambda, int samples,
                                 unsigned seed);

// Tensor-power squares: repeating segments versus stretching the shape by N,
// on the whole crystal and on generated level-zero elements.
Report verify_similarity(const Workspace& ws, const WeightVec& lambda, Int N, int samples,
                         unsigned seed, int depth, int jobs);

// Both degree routes (direct chain sum versus lifted delta-coefficient).
Report verify_degree_routes(const Workspace& ws, const WeightVec& lambda, int jobs);

// Multi-factor split of straight-path tensors against the lift-chain route.
Report verify_composition(const Workspace& ws, const std::vector<WeightVec>& shapes,
                          const std::vector<WeylElt>& twists, int depth, int jobs);

}  // namespace qlskit
