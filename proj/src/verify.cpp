#include "qlskit/verify.hpp"

#include <atomic>
#include <deque>
#include <mutex>
#include <random>
#include <set>
#include <thread>
#include <utility>

#include "json.hpp"
#include "qlskit/errors.hpp"
#include "qlskit/util.hpp"

namespace qlskit {

int Report::num_passed() const {
  int n = 0;
  for (const CaseResult& c : cases) n += c.pass ? 1 : 0;
  return n;
}

bool Report::all_pass() const { return num_passed() == static_cast<int>(cases.size()); }

std::string Report::str() const {
  std::string out = "suite=" + suite + (config.empty() ? "" : " " + config) + "\n";
  for (const CaseResult& c : cases)
    if (!c.pass) out += "FAIL " + c.name + (c.detail.empty() ? "" : ": " + c.detail) + "\n";
  out += "cases=" + std::to_string(cases.size()) + " passed=" + std::to_string(num_passed()) +
         " failed=" + std::to_string(static_cast<int>(cases.size()) - num_passed()) + "\n";
  out += all_pass() ? "PASS\n" : "FAIL\n";
  return out;
}

std::string Report::json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["config"] = config;
  j["cases"] = static_cast<int>(cases.size());
  j["passed"] = num_passed();
  j["failed"] = static_cast<int>(cases.size()) - num_passed();
  nlohmann::ordered_json fails = nlohmann::ordered_json::array();
  for (const CaseResult& c : cases) {
    if (c.pass) continue;
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["detail"] = c.detail;
    fails.push_back(std::move(jc));
  }
  j["failures"] = std::move(fails);
  j["pass"] = all_pass();
  return j.dump();
}

void parallel_cases(int n, int jobs, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  if (jobs > n) jobs = n;
  if (jobs <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::mutex emu;
  std::exception_ptr err;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(jobs));
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      while (true) {
        int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(emu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

namespace {

struct CaseSpec {
  std::string name;
  std::function<std::pair<bool, std::string>()> run;
};

Report run_suite(std::string suite, std::string config, std::vector<CaseSpec> specs, int jobs) {
  Report r;
  r.suite = std::move(suite);
  r.config = std::move(config);
  r.cases.resize(specs.size());
  parallel_cases(static_cast<int>(specs.size()), jobs, [&](int i) {
    std::size_t k = static_cast<std::size_t>(i);
    r.cases[k].name = specs[k].name;
    try {
      auto res = specs[k].run();
      r.cases[k].pass = res.first;
      r.cases[k].detail = std::move(res.second);
    } catch (const std::exception& ex) {
      r.cases[k].pass = false;
      r.cases[k].detail = std::string("exception: ") + ex.what();
    }
  });
  return r;
}

std::string shape_cfg(const Workspace& ws, const WeightVec& lambda, const WeightVec& mu) {
  return "type=" + ws.datum().type_label() + " lambda=" + coords_str(lambda) +
         " mu=" + coords_str(mu);
}

// level-zero pairing <kappa lambda, alpha_a^vee>
Int twisted_pair(const RootDatum& d, const WeylElt& kappa, const WeightVec& lam, int a) {
  WeightVec kl = kappa.act(lam);
  return a == 0 ? -RootDatum::pair(kl, d.theta_dual) : kl[a - 1];
}

RootVec classical_root(const RootDatum& d, int a) {
  return a == 0 ? -d.theta : RootVec::unit(d.rank, a - 1);
}

std::string sils_tuple_str(const std::vector<SILSPath>& t) {
  return join(t, " (x) ", [](const SILSPath& p) { return p.str(); });
}

}  // namespace

Report verify_main_theorem(const Workspace& ws, const WeightVec& lambda, const WeightVec& mu,
                           const std::vector<WeylElt>& twists, int depth, int jobs) {
  WeightVec lm = lambda + mu;
  const QBGraph& full = ws.full_graph();
  const QLSModel& Mlm = ws.qls(lm);
  const QLSModel& Mmu = ws.qls(mu);
  const SILSModel& Slm = ws.sils(lm);
  const SILSModel& Sl = ws.sils(lambda);
  const SILSModel& Sm = ws.sils(mu);
  const ThetaIso& th = ws.theta({lambda, mu});
  const XiEmbedder& Xi = ws.xi({lambda, mu}, depth);

  std::vector<CaseSpec> specs;
  for (const WeylElt& w : twists) {
    for (const QLSPath& eta : Mlm.paths()) {
      specs.push_back(
          {"w=" + w.str() + " eta=" + eta.str(),
           [&, w, eta]() -> std::pair<bool, std::string> {
             const std::vector<QLSPath>& parts = th.apply(eta);
             const QLSPath& eta1 = parts[0];
             const QLSPath& eta2 = parts[1];
             SILSPath pi = Slm.lift(eta);
             CorootVec zw = full.shortest_weight(w, eta.kappa());
             SILSPath lhs_in = Slm.translate(pi, zw);
             std::vector<SILSPath> lhs = Xi.apply(lhs_in);
             TiltedChain chain = tilted_chain(Mmu, full, eta2, w);
             SILSPath rhs0 = Sl.translate(
                 Sl.lift(eta1),
                 full.shortest_weight(chain.initial(), eta1.kappa()) + chain.shift());
             SILSPath rhs1 =
                 Sm.translate(Sm.lift(eta2), full.shortest_weight(w, eta2.kappa()));
             if (lhs.size() != 2 || lhs[0] != rhs0 || lhs[1] != rhs1)
               return {false, "lhs=" + sils_tuple_str(lhs) + " rhs=" + rhs0.str() + " (x) " +
                                  rhs1.str()};
             const std::vector<QLSPath>& cparts = th.apply(Slm.cl(lhs_in));
             if (Sl.cl(lhs[0]) != cparts[0] || Sm.cl(lhs[1]) != cparts[1])
               return {false, "classical projections do not recover the tensor components"};
             return {true, ""};
           }});
    }
  }
  return run_suite("theorem", shape_cfg(ws, lambda, mu), std::move(specs), jobs);
}

Report verify_degree_identity(const Workspace& ws, const WeightVec& lambda, const WeightVec& mu,
                              const std::vector<WeylElt>& twists, int jobs) {
  WeightVec lm = lambda + mu;
  const QBGraph& full = ws.full_graph();
  const QLSModel& Mlm = ws.qls(lm);
  const QLSModel& Ml = ws.qls(lambda);
  const QLSModel& Mmu = ws.qls(mu);
  const ThetaIso& th = ws.theta({lambda, mu});

  std::vector<CaseSpec> specs;
  for (const WeylElt& w : twists) {
    for (const QLSPath& eta : Mlm.paths()) {
      specs.push_back({"w=" + w.str() + " eta=" + eta.str(),
                       [&, w, eta]() -> std::pair<bool, std::string> {
                         const std::vector<QLSPath>& parts = th.apply(eta);
                         TiltedChain chain = tilted_chain(Mmu, full, parts[1], w);
                         Int lhs = Mlm.deg_at(eta, w);
                         Int rhs = Ml.deg_at(parts[0], chain.initial()) +
                                   Mmu.deg_at(parts[1], w) -
                                   RootDatum::pair(lambda, chain.shift());
                         if (lhs != rhs)
                           return {false, "lhs=" + std::to_string(lhs) +
                                              " rhs=" + std::to_string(rhs)};
                         return {true, ""};
                       }});
    }
  }
  return run_suite("degree", shape_cfg(ws, lambda, mu), std::move(specs), jobs);
}

Report verify_character_identity(const Workspace& ws, const WeightVec& lambda,
                                 const WeightVec& mu, const std::vector<WeylElt>& twists,
                                 int jobs) {
  WeightVec lm = lambda + mu;
  const QBGraph& full = ws.full_graph();
  const QLSModel& Mlm = ws.qls(lm);
  const QLSModel& Ml = ws.qls(lambda);
  const QLSModel& Mmu = ws.qls(mu);

  std::vector<CaseSpec> specs;
  for (const WeylElt& w : twists) {
    specs.push_back({"w=" + w.str(), [&, w]() -> std::pair<bool, std::string> {
                       GradedCharacter lhs = Mlm.gch(w);
                       GradedCharacter rhs;
                       for (const QLSPath& eta2 : Mmu.paths()) {
                         TiltedChain chain = tilted_chain(Mmu, full, eta2, w);
                         Int dshift =
                             Mmu.deg_at(eta2, w) - RootDatum::pair(lambda, chain.shift());
                         rhs += Ml.gch(chain.initial()).shifted(Mmu.wt(eta2), dshift);
                       }
                       if (lhs != rhs)
                         return {false, "lhs=" + lhs.str() + " rhs=" + rhs.str()};
                       return {true, ""};
                     }});
  }
  return run_suite("corollary", shape_cfg(ws, lambda, mu), std::move(specs), jobs);
}

Report verify_graph_lemmas(const Workspace& ws, int jobs) {
  const WeylGroup& W = ws.group();
  const RootDatum& d = ws.datum();
  const QBGraph& G = ws.full_graph();
  int rank = W.rank();
  std::vector<WeylElt> els = W.elements();

  std::vector<std::vector<int>> subsets;
  for (int mask = 0; mask < (1 << rank); ++mask) {
    std::vector<int> J;
    for (int i = 0; i < rank; ++i)
      if (mask & (1 << i)) J.push_back(i);
    subsets.push_back(std::move(J));
  }

  std::vector<CaseSpec> specs;
  for (int a = 0; a <= rank; ++a) {
    specs.push_back({"diamond i=" + std::to_string(a),
                     [&, a]() -> std::pair<bool, std::string> {
                       RootVec abar = classical_root(d, a);
                       WeylElt si = classical_affine_reflection(W, a);
                       auto dist = [&](const WeylElt& x, const WeylElt& y) {
                         return G.distance(G.vertex_index(x), G.vertex_index(y));
                       };
                       int checked = 0;
                       for (const WeylElt& w : els) {
                         bool wpos = root_is_positive(w.inv().act(abar));
                         CorootVec cw = a == 0 ? -(w.inv().act(d.theta_dual))
                                               : CorootVec::zero(rank);
                         for (const WeylElt& v : els) {
                           bool vpos = root_is_positive(v.inv().act(abar));
                           CorootVec cv = a == 0 ? -(v.inv().act(d.theta_dual))
                                                 : CorootVec::zero(rank);
                           std::string at = " at w=" + w.str() + " v=" + v.str();
                           if (wpos && !vpos) {
                             ++checked;
                             if (dist(w, v) != dist(si * w, v) + 1 ||
                                 dist(w, v) != dist(w, si * v) + 1)
                               return {false, "length drop fails" + at};
                             if (G.shortest_weight(w, v) != G.shortest_weight(si * w, v) + cw ||
                                 G.shortest_weight(w, v) != G.shortest_weight(w, si * v) - cv)
                               return {false, "weight relation fails" + at};
                           } else if (wpos == vpos) {
                             ++checked;
                             if (dist(w, v) != dist(si * w, si * v))
                               return {false, "length invariance fails" + at};
                             if (G.shortest_weight(w, v) !=
                                 G.shortest_weight(si * w, si * v) + cw - cv)
                               return {false, "weight invariance fails" + at};
                           }
                         }
                       }
                       return {true, "checked " + std::to_string(checked) + " pairs"};
                     }});
  }
  for (int a = 0; a <= rank; ++a) {
    specs.push_back({"edge i=" + std::to_string(a),
                     [&, a]() -> std::pair<bool, std::string> {
                       RootVec abar = classical_root(d, a);
                       WeylElt si = classical_affine_reflection(W, a);
                       int checked = 0;
                       for (const WeylElt& w : els) {
                         RootVec wa = w.inv().act(abar);
                         if (!root_is_positive(wa)) continue;
                         ++checked;
                         int src = G.vertex_index(w);
                         int dst = G.vertex_index(si * w);
                         bool found = false;
                         for (int ei : G.out_edges(src)) {
                           const QBGEdge& ed = G.edges()[static_cast<std::size_t>(ei)];
                           if (ed.dst != dst || ed.label != wa) continue;
                           if (ed.quantum != (a == 0))
                             return {false, "edge kind is off at w=" + w.str()};
                           found = true;
                         }
                         if (!found) return {false, "edge missing at w=" + w.str()};
                       }
                       return {true, "checked " + std::to_string(checked) + " starts"};
                     }});
  }
  for (int a = 0; a <= rank; ++a) {
    for (const std::vector<int>& J : subsets) {
      specs.push_back(
          {"tilted-lift i=" + std::to_string(a) + " J=" + index_set_str(J),
           [&, a, J]() -> std::pair<bool, std::string> {
             RootVec abar = classical_root(d, a);
             WeylElt si = classical_affine_reflection(W, a);
             int checked = 0;
             for (const WeylElt& w : els) {
               if (!root_is_positive(w.inv().act(abar))) continue;
               for (const WeylElt& v : els) {
                 ++checked;
                 std::string at = " at w=" + w.str() + " v=" + v.str();
                 WeylElt tv = G.deodhar_lift(v, J, w);
                 RootVec va = v.inv().act(abar);
                 bool in_span = d.root_in_span(va, J);
                 if (!in_span && root_is_positive(va)) {
                   if (G.deodhar_lift(si * v, J, si * w) != si * tv)
                     return {false, "raising case fails" + at};
                 } else if (!in_span) {
                   if (G.deodhar_lift(v, J, si * w) != tv)
                     return {false, "lowering case fails" + at};
                 } else {
                   if (!root_is_positive(tv.inv().act(abar)))
                     return {false, "lift sign fails" + at};
                   WeylElt tv2 = G.deodhar_lift(v, J, si * w);
                   WeylElt expect = root_is_positive(tv2.inv().act(abar)) ? tv : si * tv;
                   if (tv2 != expect) return {false, "span case fails" + at};
                 }
               }
             }
             return {true, "checked " + std::to_string(checked) + " pairs"};
           }});
    }
  }
  return run_suite("lemmas", "type=" + d.type_label(), std::move(specs), jobs);
}

Report verify_final_directions(const Workspace& ws, const WeightVec& lambda,
                               const WeightVec& mu) {
  WeightVec lm = lambda + mu;
  const RootDatum& d = ws.datum();
  const WeylGroup& W = ws.group();
  const QLSModel& Mlm = ws.qls(lm);
  const SILSModel& Slm = ws.sils(lm);
  const ThetaIso& th = ws.theta({lambda, mu});
  const std::vector<int>& J = Mlm.J();
  std::vector<int> Jmu = derive_J(mu);
  int rank = W.rank();

  std::vector<CaseSpec> specs;
  for (const QLSPath& eta : Mlm.paths()) {
    specs.push_back({"eta=" + eta.str(), [&, eta]() -> std::pair<bool, std::string> {
      const std::vector<QLSPath>& parts = th.apply(eta);
      if (min_coset_rep(eta.kappa(), Jmu) != parts[1].kappa())
        return {false, "last tensor component final direction is off"};
      SILSPath pi = Slm.lift(eta);
      for (int a = 0; a <= rank; ++a) {
        std::string at = " at a=" + std::to_string(a);
        Int phi = Mlm.phi(eta, a);
        QLSPath cur = eta;
        SILSPath pcur = pi;
        for (Int m = 1; m <= phi; ++m) {
          auto next = Mlm.f(cur, a);
          auto pnext = Slm.f(pcur, a);
          if (!next || !pnext) return {false, "string ends early" + at};
          cur = std::move(*next);
          pcur = std::move(*pnext);
          if (m < phi) {
            if (cur.kappa() != eta.kappa())
              return {false, "final direction moved below the top" + at};
            if (Slm.lift(cur) != pcur)
              return {false, "lift recursion fails below the top" + at};
          }
        }
        if (phi == 0) continue;
        Int kp = twisted_pair(d, eta.kappa(), lm, a);
        WeylElt expect =
            kp > 0 ? min_coset_rep(classical_affine_reflection(W, a) * eta.kappa(), J)
                   : eta.kappa();
        if (cur.kappa() != expect)
          return {false, "final direction after max lowering is off" + at};
        AffWeylElt aexpect =
            kp > 0 ? affine_simple_reflection(W, a) * pi.kappa() : pi.kappa();
        if (pcur.kappa() != aexpect)
          return {false, "affine final direction after max lowering is off" + at};
        SILSPath plift = Slm.lift(cur);
        if (a == 0 && kp > 0) {
          if (plift != Slm.translate(pcur, eta.kappa().inv().act(d.theta_dual)))
            return {false, "lift recursion correction fails" + at};
        } else if (plift != pcur) {
          return {false, "lift recursion fails at the top" + at};
        }
      }
      return {true, ""};
    }});
  }
  return run_suite("final-directions", shape_cfg(ws, lambda, mu), std::move(specs), 1);
}

Report verify_crystal_axioms(const Workspace& ws, const WeightVec& lambda) {
  const QLSModel& M = ws.qls(lambda);
  const RootDatum& d = ws.datum();
  const WeylGroup& W = ws.group();
  int rank = W.rank();

  std::vector<CaseSpec> specs;
  for (const QLSPath& eta : M.paths()) {
    specs.push_back({"eta=" + eta.str(), [&, eta]() -> std::pair<bool, std::string> {
      for (int a = 0; a <= rank; ++a) {
        std::string at = " at a=" + std::to_string(a);
        Int eps = M.eps(eta, a), phi = M.phi(eta, a);
        if (eps < 0 || phi < 0) return {false, "negative string length" + at};
        if (phi - eps != M.wt_pair(eta, a))
          return {false, "string lengths do not match the weight pairing" + at};
        auto fi = M.f(eta, a);
        if (fi.has_value() != (phi > 0)) return {false, "lowering definedness is off" + at};
        if (fi) {
          WeightVec step = d.root_as_weight(a == 0 ? d.theta : RootVec::unit(rank, a - 1));
          WeightVec wexp = a == 0 ? M.wt(eta) + step : M.wt(eta) - step;
          if (M.wt(*fi) != wexp) return {false, "lowered weight is off" + at};
          if (M.eps(*fi, a) != eps + 1 || M.phi(*fi, a) != phi - 1)
            return {false, "string bookkeeping is off after lowering" + at};
          auto back = M.e(*fi, a);
          if (!back || *back != eta) return {false, "raising does not invert lowering" + at};
        }
        auto ei = M.e(eta, a);
        if (ei.has_value() != (eps > 0)) return {false, "raising definedness is off" + at};
        if (ei) {
          auto back = M.f(*ei, a);
          if (!back || *back != eta) return {false, "lowering does not invert raising" + at};
        }
      }
      return {true, ""};
    }});
  }
  specs.push_back({"connectivity", [&]() -> std::pair<bool, std::string> {
    std::set<QLSPath> seen;
    std::deque<QLSPath> q;
    QLSPath seed = M.straight(W.identity());
    seen.insert(seed);
    q.push_back(std::move(seed));
    while (!q.empty()) {
      QLSPath p = std::move(q.front());
      q.pop_front();
      for (int a = 0; a <= rank; ++a) {
        for (int dir = 0; dir < 2; ++dir) {
          auto img = dir == 0 ? M.f(p, a) : M.e(p, a);
          if (img && seen.insert(*img).second) q.push_back(std::move(*img));
        }
      }
    }
    if (seen.size() != M.paths().size())
      return {false, "reached " + std::to_string(seen.size()) + " of " +
                         std::to_string(M.paths().size()) + " paths"};
    return {true, std::to_string(seen.size()) + " paths"};
  }});
  return run_suite("axioms", "type=" + d.type_label() + " lambda=" + coords_str(lambda),
                   std::move(specs), 1);
}

Report verify_level_zero_samples(const Workspace& ws, const WeightVec& lambda, int samples,
                                 unsigned seed) {
  const QLSModel& Mq = ws.qls(lambda);
  const SILSModel& Ms = ws.sils(lambda);
  const WeylGroup& W = ws.group();
  int rank = W.rank();
  const std::vector<QLSPath>& base = Mq.paths();

  std::mt19937 gen(seed);
  struct Sample {
    SILSPath pi;
    CorootVec xi;
  };
  std::vector<Sample> gens;
  gens.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    SILSPath pi = Ms.lift(base[gen() % base.size()]);
    unsigned len = gen() % 9;
    for (unsigned t = 0; t < len; ++t) {
      int a = static_cast<int>(gen() % static_cast<unsigned>(rank + 1));
      auto img = gen() % 2 == 0 ? Ms.f(pi, a) : Ms.e(pi, a);
      if (img) pi = std::move(*img);
    }
    std::vector<Int> xs(static_cast<std::size_t>(rank));
    for (Int& x : xs) x = static_cast<Int>(gen() % 3) - 1;
    gens.push_back({std::move(pi), CorootVec(std::move(xs))});
  }

  std::vector<CaseSpec> specs;
  for (int k = 0; k < samples; ++k) {
    specs.push_back({"sample " + std::to_string(k), [&, k]() -> std::pair<bool, std::string> {
      const SILSPath& pi = gens[static_cast<std::size_t>(k)].pi;
      const CorootVec& xi = gens[static_cast<std::size_t>(k)].xi;
      std::string at = " for " + pi.str() + " xi=" + coords_str(xi);
      SILSPath shifted = Ms.translate(pi, xi);
      AffineWeight wexp = Ms.wt(pi);
      wexp.delta -= Rat(RootDatum::pair(lambda, xi));
      if (Ms.wt(shifted) != wexp) return {false, "translated weight is off" + at};
      QLSPath clp = Ms.cl(shifted);
      for (int a = 0; a <= rank; ++a) {
        std::string loc = " a=" + std::to_string(a) + at;
        if (Ms.eps(shifted, a) != Ms.eps(pi, a) || Ms.phi(shifted, a) != Ms.phi(pi, a))
          return {false, "string lengths move under translation" + loc};
        if (Ms.eps(shifted, a) != Mq.eps(clp, a) || Ms.phi(shifted, a) != Mq.phi(clp, a))
          return {false, "string lengths differ from the classical projection" + loc};
        auto fs = Ms.f(shifted, a);
        auto fp = Ms.f(pi, a);
        auto fc = Mq.f(clp, a);
        if (fs.has_value() != fp.has_value() ||
            (fs && *fs != Ms.translate(*fp, xi)))
          return {false, "lowering does not commute with translation" + loc};
        if (fs.has_value() != fc.has_value() || (fs && Ms.cl(*fs) != *fc))
          return {false, "classical projection does not intertwine lowering" + loc};
        auto es = Ms.e(shifted, a);
        auto ep = Ms.e(pi, a);
        auto ec = Mq.e(clp, a);
        if (es.has_value() != ep.has_value() ||
            (es && *es != Ms.translate(*ep, xi)))
          return {false, "raising does not commute with translation" + loc};
        if (es.has_value() != ec.has_value() || (es && Ms.cl(*es) != *ec))
          return {false, "classical projection does not intertwine raising" + loc};
      }
      return {true, ""};
    }});
  }
  return run_suite("level-zero-samples",
                   "type=" + ws.datum().type_label() + " lambda=" + coords_str(lambda) +
                       " samples=" + std::to_string(samples) + " seed=" + std::to_string(seed),
                   std::move(specs), 1);
}

Report verify_similarity(const Workspace& ws, const WeightVec& lambda, Int N, int samples,
                         unsigned seed, int depth, int jobs) {
  const QLSModel& Mq = ws.qls(lambda);
  check_arg(N >= 1 && N % stretch_factor(Mq) == 0,
            "stretch factor does not clear the turning points");
  WeightVec nl = N * lambda;
  const QLSModel& MqN = ws.qls(nl);
  const SILSModel& Ms = ws.sils(lambda);
  const SILSModel& MsN = ws.sils(nl);
  const WeylGroup& W = ws.group();
  int rank = W.rank();
  std::vector<WeightVec> factors(static_cast<std::size_t>(N), lambda);
  const ThetaIso& thN = ws.theta(factors);
  const XiEmbedder& xiN = ws.xi(factors, depth);

  std::vector<CaseSpec> specs;
  for (const QLSPath& eta : Mq.paths()) {
    specs.push_back({"crystal eta=" + eta.str(), [&, eta]() -> std::pair<bool, std::string> {
      std::vector<QLSPath> lhs = repeat_power(Mq, eta, N);
      QLSPath stretched = stretch_path(Mq, MqN, eta, N);
      if (lhs != thN.apply(stretched))
        return {false, "tensor power disagrees with the stretched split"};
      if (MqN.wt(stretched) != N * Mq.wt(eta)) return {false, "weight scaling is off"};
      for (int a = 0; a <= rank; ++a) {
        std::string at = " at a=" + std::to_string(a);
        if (MqN.eps(stretched, a) != N * Mq.eps(eta, a) ||
            MqN.phi(stretched, a) != N * Mq.phi(eta, a))
          return {false, "string scaling is off" + at};
        auto fe = Mq.f(eta, a);
        if (!fe) continue;
        QLSPath cur = stretched;
        for (Int t = 0; t < N; ++t) {
          auto nx = MqN.f(cur, a);
          if (!nx) return {false, "stretched lowering power ends early" + at};
          cur = std::move(*nx);
        }
        if (cur != stretch_path(Mq, MqN, *fe, N))
          return {false, "stretched lowering power is off" + at};
      }
      return {true, ""};
    }});
  }

  std::mt19937 gen(seed);
  std::vector<SILSPath> sams;
  sams.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    SILSPath pi = Ms.straight(aff_identity(W));
    unsigned len = gen() % 9;
    for (unsigned t = 0; t < len; ++t) {
      int a = static_cast<int>(gen() % static_cast<unsigned>(rank + 1));
      auto img = gen() % 2 == 0 ? Ms.f(pi, a) : Ms.e(pi, a);
      if (img) pi = std::move(*img);
    }
    sams.push_back(std::move(pi));
  }
  for (int k = 0; k < samples; ++k) {
    specs.push_back(
        {"level-zero sample " + std::to_string(k), [&, k]() -> std::pair<bool, std::string> {
          const SILSPath& pi = sams[static_cast<std::size_t>(k)];
          std::vector<SILSPath> lhs = repeat_power(Ms, pi, N);
          SILSPath stretched = stretch_path(Ms, MsN, pi, N);
          std::vector<SILSPath> rhs = xiN.apply(stretched);
          if (lhs != rhs)
            return {false, "tensor power disagrees with the stretched embedding for " +
                               pi.str()};
          if (MsN.wt(stretched) != Rat(N) * Ms.wt(pi))
            return {false, "weight scaling is off for " + pi.str()};
          std::vector<QLSPath> clrep = repeat_power(Mq, Ms.cl(pi), N);
          for (Int t = 0; t < N; ++t)
            if (Ms.cl(lhs[static_cast<std::size_t>(t)]) != clrep[static_cast<std::size_t>(t)])
              return {false, "classical projection square fails for " + pi.str()};
          return {true, ""};
        }});
  }
  return run_suite("similarity",
                   "type=" + ws.datum().type_label() + " lambda=" + coords_str(lambda) +
                       " N=" + std::to_string(N) + " samples=" + std::to_string(samples) +
                       " seed=" + std::to_string(seed),
                   std::move(specs), jobs);
}

Report verify_degree_routes(const Workspace& ws, const WeightVec& lambda, int jobs) {
  const QLSModel& Mq = ws.qls(lambda);
  const SILSModel& Ms = ws.sils(lambda);
  std::vector<CaseSpec> specs;
  for (const WeylElt& w : ws.group().elements()) {
    specs.push_back({"w=" + w.str(), [&, w]() -> std::pair<bool, std::string> {
                       int checked = 0;
                       for (const QLSPath& eta : Mq.paths()) {
                         ++checked;
                         Int direct = Mq.deg_at(eta, w);
                         Int lifted = Ms.deg_via_lift(eta, w);
                         if (direct != lifted)
                           return {false, "routes disagree at eta=" + eta.str() + ": " +
                                              std::to_string(direct) + " vs " +
                                              std::to_string(lifted)};
                       }
                       return {true, "checked " + std::to_string(checked) + " paths"};
                     }});
  }
  return run_suite("degree-routes",
                   "type=" + ws.datum().type_label() + " lambda=" + coords_str(lambda),
                   std::move(specs), jobs);
}

Report verify_composition(const Workspace& ws, const std::vector<WeightVec>& shapes,
                          const std::vector<WeylElt>& twists, int depth, int jobs) {
  check_arg(!shapes.empty(), "composition needs at least one factor shape");
  int n = static_cast<int>(shapes.size());
  int rank = ws.group().rank();
  WeightVec total = WeightVec::zero(rank);
  for (const WeightVec& s : shapes) total = total + s;
  const QBGraph& full = ws.full_graph();
  const ThetaIso& th = ws.theta(shapes);
  const XiEmbedder& Xi = ws.xi(shapes, depth);
  const SILSModel& Swhole = ws.sils(total);

  std::vector<const QLSModel*> qm;
  std::vector<const SILSModel*> sm;
  std::vector<std::vector<int>> Js;
  for (const WeightVec& s : shapes) {
    qm.push_back(&ws.qls(s));
    sm.push_back(&ws.sils(s));
    Js.push_back(derive_J(s));
  }

  std::vector<std::vector<WeylElt>> tuples{{}};
  for (int k = 0; k < n; ++k) {
    const std::vector<WeylElt>& reps = ws.graph(Js[static_cast<std::size_t>(k)]).vertices();
    std::vector<std::vector<WeylElt>> grown;
    for (const std::vector<WeylElt>& t : tuples) {
      for (const WeylElt& v : reps) {
        std::vector<WeylElt> t2 = t;
        t2.push_back(v);
        grown.push_back(std::move(t2));
      }
    }
    tuples = std::move(grown);
  }

  std::vector<CaseSpec> specs;
  for (const std::vector<WeylElt>& vs : tuples) {
    for (const WeylElt& w : twists) {
      std::string name =
          "v=(" + join(vs, ",", [](const WeylElt& v) { return v.str(); }) + ") w=" + w.str();
      specs.push_back({name, [&, vs, w]() -> std::pair<bool, std::string> {
        std::vector<QLSPath> strs;
        strs.reserve(vs.size());
        for (int k = 0; k < n; ++k)
          strs.push_back(qm[static_cast<std::size_t>(k)]->straight(vs[static_cast<std::size_t>(k)]));
        const QLSPath& eta = th.invert(strs);
        SILSPath pi = Swhole.lift(eta);
        std::vector<SILSPath> lhs =
            Xi.apply(Swhole.translate(pi, full.shortest_weight(w, eta.kappa())));
        std::vector<WeylElt> tv(static_cast<std::size_t>(n) + 1, w);
        for (int k = n - 1; k >= 0; --k)
          tv[static_cast<std::size_t>(k)] =
              full.deodhar_lift(vs[static_cast<std::size_t>(k)], Js[static_cast<std::size_t>(k)],
                                tv[static_cast<std::size_t>(k) + 1]);
        std::vector<CorootVec> xs(static_cast<std::size_t>(n), CorootVec::zero(rank));
        for (int k = n - 1; k >= 0; --k) {
          CorootVec step = full.shortest_weight(tv[static_cast<std::size_t>(k) + 1],
                                                tv[static_cast<std::size_t>(k)]);
          xs[static_cast<std::size_t>(k)] =
              k == n - 1 ? step : xs[static_cast<std::size_t>(k) + 1] + step;
        }
        if (static_cast<int>(lhs.size()) != n) return {false, "factor count is off"};
        for (int k = 0; k < n; ++k) {
          SILSPath rhs = sm[static_cast<std::size_t>(k)]->translate(
              sm[static_cast<std::size_t>(k)]->straight(
                  AffWeylElt{vs[static_cast<std::size_t>(k)], CorootVec::zero(rank)}),
              xs[static_cast<std::size_t>(k)]);
          if (lhs[static_cast<std::size_t>(k)] != rhs)
            return {false, "factor " + std::to_string(k + 1) + " disagrees: lhs=" +
                               lhs[static_cast<std::size_t>(k)].str() + " rhs=" + rhs.str()};
        }
        return {true, ""};
      }});
    }
  }
  std::string cfg = "type=" + ws.datum().type_label() + " shapes=" +
                    join(shapes, "+", [](const WeightVec& s) { return coords_str(s); });
  return run_suite("composition", cfg, std::move(specs), jobs);
}

}  // namespace qlskit
