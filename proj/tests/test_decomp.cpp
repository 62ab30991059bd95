#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <set>

#include "qlskit/errors.hpp"
#include "qlskit/verify.hpp"

using namespace qlskit;

namespace {

QLSPath qpath(const WeylGroup& W, const std::vector<std::string>& dirs,
              const std::vector<Rat>& times) {
  QLSPath p;
  for (const std::string& d : dirs) p.dirs.push_back(W.parse(d));
  p.times = times;
  return p;
}

}  // namespace

TEST_CASE("tensor fold on two rank-one factors") {
  Workspace ws("A1");
  const QLSModel& M = ws.qls(ws.weight({1}));
  std::vector<const QLSModel*> ms{&M, &M};
  const WeylGroup& W = ws.group();

  std::vector<QLSPath> ee{M.straight(W.identity()), M.straight(W.identity())};
  CHECK(tensor_wt_pair(ms, ee, 1) == 2);
  CHECK(tensor_phi(ms, ee, 1) == 2);
  CHECK(tensor_eps(ms, ee, 1) == 0);
  CHECK(tensor_phi(ms, ee, 0) == 0);
  CHECK(tensor_eps(ms, ee, 0) == 2);

  std::vector<QLSPath> se{M.straight(W.parse("s1")), M.straight(W.identity())};
  std::vector<QLSPath> ss{M.straight(W.parse("s1")), M.straight(W.parse("s1"))};
  std::vector<QLSPath> es{M.straight(W.identity()), M.straight(W.parse("s1"))};

  auto f1 = tensor_f(ms, ee, 1);
  REQUIRE(f1.has_value());
  CHECK(*f1 == se);
  auto f2 = tensor_f(ms, *f1, 1);
  REQUIRE(f2.has_value());
  CHECK(*f2 == ss);
  CHECK_FALSE(tensor_f(ms, *f2, 1).has_value());

  auto f0 = tensor_f(ms, ss, 0);
  REQUIRE(f0.has_value());
  CHECK(*f0 == es);

  auto e1 = tensor_e(ms, ss, 1);
  REQUIRE(e1.has_value());
  CHECK(*e1 == se);
  auto e2 = tensor_e(ms, *e1, 1);
  REQUIRE(e2.has_value());
  CHECK(*e2 == ee);
  CHECK_FALSE(tensor_e(ms, ee, 1).has_value());

  CHECK_THROWS_AS(tensor_f(ms, std::vector<QLSPath>{ee[0]}, 1), std::invalid_argument);
}

TEST_CASE("three factor fold matches the iterated two factor fold") {
  Workspace ws("A1");
  const QLSModel& M = ws.qls(ws.weight({1}));
  const WeylGroup& W = ws.group();
  std::vector<const QLSModel*> m3{&M, &M, &M};

  std::vector<QLSPath> cur{M.straight(W.identity()), M.straight(W.identity()),
                           M.straight(W.identity())};
  CHECK(tensor_phi(m3, cur, 1) == 3);
  // the lowering string fills factors from the left
  std::vector<std::size_t> expect_moved{0, 1, 2};
  for (std::size_t step = 0; step < 3; ++step) {
    auto nx = tensor_f(m3, cur, 1);
    REQUIRE(nx.has_value());
    std::size_t moved = 3;
    for (std::size_t k = 0; k < 3; ++k)
      if ((*nx)[k] != cur[k]) moved = k;
    CHECK(moved == expect_moved[step]);
    cur = *nx;
  }
  CHECK_FALSE(tensor_f(m3, cur, 1).has_value());

  // exhaustive agreement with grouping the first two factors
  const ThetaIso& th12 = ws.theta({ws.weight({1}), ws.weight({1})});
  const QLSModel& M2 = ws.qls(ws.weight({2}));
  std::vector<const QLSModel*> grouped{&M2, &M};
  for (const QLSPath& b1 : M.paths())
    for (const QLSPath& b2 : M.paths())
      for (const QLSPath& b3 : M.paths()) {
        std::vector<QLSPath> triple{b1, b2, b3};
        std::vector<QLSPath> pair2{th12.invert({b1, b2}), b3};
        for (int a = 0; a <= 1; ++a) {
          CHECK(tensor_phi(m3, triple, a) == tensor_phi(grouped, pair2, a));
          CHECK(tensor_eps(m3, triple, a) == tensor_eps(grouped, pair2, a));
          auto lhs = tensor_f(m3, triple, a);
          auto rhs = tensor_f(grouped, pair2, a);
          REQUIRE(lhs.has_value() == rhs.has_value());
          if (lhs) {
            std::vector<QLSPath> expanded = th12.apply((*rhs)[0]);
            expanded.push_back((*rhs)[1]);
            CHECK(*lhs == expanded);
          }
        }
      }
}

TEST_CASE("tensor decomposition of the doubled rank-one shape") {
  Workspace ws("A1");
  const WeylGroup& W = ws.group();
  const ThetaIso& th = ws.theta({ws.weight({1}), ws.weight({1})});
  const QLSModel& M1 = ws.qls(ws.weight({1}));
  const QLSModel& M2 = ws.qls(ws.weight({2}));
  CHECK(&th.whole() == &M2);
  CHECK(th.num_factors() == 2);

  QLSPath pe = M2.straight(W.identity());
  QLSPath ps = M2.straight(W.parse("s1"));
  QLSPath pse = qpath(W, {"s1", "e"}, {Rat(0), Rat(1, 2), Rat(1)});
  QLSPath pes = qpath(W, {"e", "s1"}, {Rat(0), Rat(1, 2), Rat(1)});

  QLSPath be = M1.straight(W.identity());
  QLSPath bs = M1.straight(W.parse("s1"));

  CHECK(th.apply(pe) == std::vector<QLSPath>{be, be});
  CHECK(th.apply(ps) == std::vector<QLSPath>{bs, bs});
  CHECK(th.apply(pse) == std::vector<QLSPath>{bs, be});
  CHECK(th.apply(pes) == std::vector<QLSPath>{be, bs});

  for (const QLSPath& p : M2.paths()) CHECK(th.invert(th.apply(p)) == p);
  CHECK_THROWS_AS(th.invert(std::vector<QLSPath>{be}), std::logic_error);
}

TEST_CASE("level-zero embedding fixes seeds and commutes with symmetries") {
  Workspace ws("A1");
  const WeylGroup& W = ws.group();
  WeightVec w1 = ws.weight({1});
  const XiEmbedder& Xi = ws.xi({w1, w1}, 64);
  const SILSModel& S2 = ws.sils(ws.weight({2}));
  const SILSModel& S1 = ws.sils(w1);
  const ThetaIso& th = ws.theta({w1, w1});
  const QLSModel& M2 = ws.qls(ws.weight({2}));

  SILSPath seed2 = S2.straight(aff_identity(W));
  SILSPath seed1 = S1.straight(aff_identity(W));
  CHECK(Xi.apply(seed2) == std::vector<SILSPath>{seed1, seed1});

  // a group twist of the seed splits into twisted seeds
  AffWeylElt s0 = affine_simple_reflection(W, 0);
  CHECK(Xi.apply(S2.weyl_act(s0, seed2)) ==
        std::vector<SILSPath>{S1.weyl_act(s0, seed1), S1.weyl_act(s0, seed1)});

  // translating before or after splitting agrees
  CorootVec xi1 = CorootVec::unit(1, 0);
  for (const QLSPath& eta : M2.paths()) {
    SILSPath pi = S2.lift(eta);
    std::vector<SILSPath> split = Xi.apply(pi);
    std::vector<SILSPath> shifted = Xi.apply(S2.translate(pi, xi1));
    REQUIRE(split.size() == 2);
    CHECK(shifted[0] == S1.translate(split[0], xi1));
    CHECK(shifted[1] == S1.translate(split[1], xi1));
    // classical projections recover the tensor split of the projection
    std::vector<QLSPath> cls = th.apply(S2.cl(pi));
    CHECK(S1.cl(split[0]) == cls[0]);
    CHECK(S1.cl(split[1]) == cls[1]);
  }

  const XiEmbedder& shallow = ws.xi({w1, w1}, 1);
  CHECK_THROWS_AS(shallow.apply(S2.lift(M2.straight(W.parse("s1")))), DepthExceeded);
}

TEST_CASE("tilted chain data on the rank-one graph") {
  Workspace ws("A1");
  const WeylGroup& W = ws.group();
  const QBGraph& full = ws.full_graph();
  const QLSModel& M = ws.qls(ws.weight({1}));

  TiltedChain c1 = tilted_chain(M, full, M.straight(W.parse("s1")), W.identity());
  CHECK(c1.initial() == W.parse("s1"));
  CHECK(c1.shift() == CorootVec::zero(1));

  TiltedChain c2 = tilted_chain(M, full, M.straight(W.identity()), W.parse("s1"));
  CHECK(c2.initial() == W.identity());
  CHECK(c2.shift() == CorootVec::unit(1, 0));
}

TEST_CASE("stretching and repetition") {
  Workspace ws("A1");
  const WeylGroup& W = ws.group();
  const QLSModel& M1 = ws.qls(ws.weight({1}));
  const QLSModel& M2 = ws.qls(ws.weight({2}));
  CHECK(stretch_factor(M1) == 1);
  CHECK(stretch_factor(M2) == 2);

  Workspace wsa("A2");
  CHECK(stretch_factor(wsa.qls(wsa.weight({1, 1}))) == 2);
  CHECK(stretch_factor(wsa.qls(wsa.weight({1, 0}))) == 1);

  QLSPath bs = M1.straight(W.parse("s1"));
  CHECK(repeat_power(M1, bs, 3) == std::vector<QLSPath>(3, bs));
  QLSPath half = qpath(W, {"s1", "e"}, {Rat(0), Rat(1, 2), Rat(1)});
  REQUIRE(M2.is_valid(half));
  CHECK(repeat_power(M2, half, 2) ==
        std::vector<QLSPath>{M2.straight(W.parse("s1")), M2.straight(W.identity())});
  CHECK_THROWS_AS(repeat_power(M2, half, 1), std::logic_error);

  CHECK(stretch_path(M1, M2, bs, 2) == M2.straight(W.parse("s1")));
  CHECK_THROWS_AS(stretch_path(M1, M1, bs, 2), std::invalid_argument);
}

TEST_CASE("two-step decomposition equals the three-factor decomposition") {
  Workspace ws("A1");
  WeightVec w1 = ws.weight({1});
  WeightVec w2 = ws.weight({2});
  const QLSModel& M3 = ws.qls(ws.weight({3}));
  const SILSModel& S3 = ws.sils(ws.weight({3}));
  const ThetaIso& th3 = ws.theta({w1, w1, w1});
  const ThetaIso& th12 = ws.theta({w1, w1});
  const ThetaIso& left = ws.theta({w2, w1});
  const ThetaIso& right = ws.theta({w1, w2});

  REQUIRE(static_cast<int>(M3.paths().size()) == 8);
  for (const QLSPath& eta : M3.paths()) {
    std::vector<QLSPath> direct = th3.apply(eta);
    std::vector<QLSPath> lsplit = left.apply(eta);
    std::vector<QLSPath> ltuple = th12.apply(lsplit[0]);
    ltuple.push_back(lsplit[1]);
    CHECK(direct == ltuple);
    std::vector<QLSPath> rsplit = right.apply(eta);
    std::vector<QLSPath> rtuple{rsplit[0]};
    for (const QLSPath& q : th12.apply(rsplit[1])) rtuple.push_back(q);
    CHECK(direct == rtuple);
  }

  const XiEmbedder& xi3 = ws.xi({w1, w1, w1}, 64);
  const XiEmbedder& xiL = ws.xi({w2, w1}, 64);
  const XiEmbedder& xi12 = ws.xi({w1, w1}, 64);
  CorootVec shift = CorootVec::unit(1, 0);
  for (const QLSPath& eta : M3.paths()) {
    SILSPath pi = S3.translate(S3.lift(eta), shift);
    std::vector<SILSPath> direct = xi3.apply(pi);
    std::vector<SILSPath> outer = xiL.apply(pi);
    std::vector<SILSPath> tuple = xi12.apply(outer[0]);
    tuple.push_back(outer[1]);
    CHECK(direct == tuple);
  }
}

TEST_CASE("final direction bookkeeping across the decomposition") {
  Workspace ws("A1");
  Report r = verify_final_directions(ws, ws.weight({1}), ws.weight({1}));
  CHECK(r.all_pass());
  Report r2 = verify_final_directions(ws, ws.weight({2}), ws.weight({1}));
  CHECK(r2.all_pass());

  Workspace wsa("A2");
  Report r3 = verify_final_directions(wsa, wsa.weight({1, 0}), wsa.weight({0, 1}));
  CHECK(r3.all_pass());
}

TEST_CASE("main decomposition identity on small data") {
  Workspace ws("A1");
  std::vector<WeylElt> all = ws.group().elements();
  Report thm = verify_main_theorem(ws, ws.weight({1}), ws.weight({1}), all, 64, 2);
  CHECK(thm.all_pass());
  CHECK(static_cast<int>(thm.cases.size()) == 8);
  CHECK(thm.num_passed() == 8);

  Report deg = verify_degree_identity(ws, ws.weight({1}), ws.weight({1}), all, 2);
  CHECK(deg.all_pass());
  CHECK(static_cast<int>(deg.cases.size()) == 8);

  Report cor = verify_character_identity(ws, ws.weight({1}), ws.weight({1}), all, 2);
  CHECK(cor.all_pass());
  CHECK(static_cast<int>(cor.cases.size()) == 2);
}

TEST_CASE("graph lemma suites on small groups") {
  Workspace ws("A1");
  Report r = verify_graph_lemmas(ws, 1);
  CHECK(r.all_pass());
  // diamond and edge per affine index, tilted lift per index and subset
  CHECK(static_cast<int>(r.cases.size()) == 2 + 2 + 2 * 2);

  Workspace wsa("A2");
  Report ra = verify_graph_lemmas(wsa, 2);
  CHECK(ra.all_pass());
  CHECK(static_cast<int>(ra.cases.size()) == 3 + 3 + 3 * 4);
}

TEST_CASE("axiom, sampling, and degree-route engines") {
  Workspace ws("A1");
  WeightVec w2 = ws.weight({2});
  CHECK(verify_crystal_axioms(ws, w2).all_pass());
  CHECK(verify_level_zero_samples(ws, w2, 25, 11u).all_pass());
  CHECK(verify_degree_routes(ws, w2, 1).all_pass());

  Workspace wsa("A2");
  CHECK(verify_crystal_axioms(wsa, wsa.weight({1, 1})).all_pass());
  CHECK(verify_level_zero_samples(wsa, wsa.weight({1, 0}), 15, 23u).all_pass());
}

TEST_CASE("repetition matches the stretched split") {
  Workspace ws("A1");
  Report r = verify_similarity(ws, ws.weight({2}), 2, 20, 7u, 64, 2);
  CHECK(r.all_pass());
  CHECK_THROWS_AS(verify_similarity(ws, ws.weight({2}), 3, 1, 7u, 64, 1),
                  std::invalid_argument);
}

TEST_CASE("composition engine across factor counts") {
  Workspace ws("A1");
  WeightVec w1 = ws.weight({1});
  std::vector<WeylElt> all = ws.group().elements();
  Report two = verify_composition(ws, {w1, w1}, all, 64, 2);
  CHECK(two.all_pass());
  CHECK(static_cast<int>(two.cases.size()) == 8);

  Report three = verify_composition(ws, {w1, w1, w1}, {ws.group().identity()}, 64, 2);
  CHECK(three.all_pass());
  CHECK(static_cast<int>(three.cases.size()) == 8);

  Workspace wsa("A2");
  Report one = verify_composition(wsa, {wsa.weight({1, 0})}, wsa.group().elements(), 64, 2);
  CHECK(one.all_pass());
  CHECK(static_cast<int>(one.cases.size()) == 18);
}

TEST_CASE("reports and the parallel runner") {
  Workspace ws("A1");
  Report r = verify_character_identity(ws, ws.weight({1}), ws.weight({1}),
                                       ws.group().elements(), 1);
  CHECK(r.suite == "corollary");
  CHECK(r.str().find("PASS") != std::string::npos);
  CHECK(r.json().find("\"pass\":true") != std::string::npos);
  Report r4 = verify_character_identity(ws, ws.weight({1}), ws.weight({1}),
                                        ws.group().elements(), 4);
  CHECK(r.str() == r4.str());
  CHECK(r.json() == r4.json());

  std::atomic<int> hits{0};
  parallel_cases(100, 8, [&](int) { ++hits; });
  CHECK(hits.load() == 100);
  CHECK_THROWS_AS(parallel_cases(10, 4, [](int i) {
                    if (i == 5) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

TEST_CASE("workspace rejects malformed shapes and factor lists") {
  Workspace ws("A2");
  CHECK_THROWS_AS(ws.qls(WeightVec({Int(1)})), std::invalid_argument);
  CHECK_THROWS_AS(ws.qls(ws.weight({-1, 0})), std::invalid_argument);
  CHECK_THROWS_AS(ws.theta({}), std::invalid_argument);
  CHECK(&ws.theta({ws.weight({1, 0}), ws.weight({0, 1})}) ==
        &ws.theta({ws.weight({1, 0}), ws.weight({0, 1})}));
}
