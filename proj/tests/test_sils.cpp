#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "qlskit/errors.hpp"
#include "qlskit/sils.hpp"

using namespace qlskit;

namespace {

struct Ctx {
  RootDatum datum;
  WeylGroup W;
  QBGraph graph;
  SILSModel M;
  Ctx(const std::string& label, const WeightVec& lam)
      : datum(RootDatum::build(label)), W(datum), graph(W, derive_J(lam)), M(W, lam, graph) {}

  AffWeylElt aff(const std::string& w, const CorootVec& xi) const {
    return AffWeylElt{W.parse(w), xi};
  }
  SILSPath path(const std::vector<AffWeylElt>& dirs, const std::vector<Rat>& times) const {
    return SILSPath{dirs, times};
  }
  QLSPath qpath(const std::vector<std::string>& dirs, const std::vector<Rat>& times) const {
    QLSPath p;
    for (const std::string& d : dirs) p.dirs.push_back(W.parse(d));
    p.times = times;
    return p;
  }
};

std::vector<CorootVec> coroot_box(int rank, Int bound) {
  std::vector<CorootVec> out;
  std::vector<Int> v(static_cast<std::size_t>(rank), -bound);
  while (true) {
    out.push_back(CorootVec(v));
    std::size_t t = v.size();
    while (t > 0) {
      --t;
      if (v[t] < bound) {
        ++v[t];
        for (std::size_t r = t + 1; r < v.size(); ++r) v[r] = -bound;
        break;
      }
      if (t == 0) return out;
    }
  }
}

}  // namespace

TEST_CASE("membership and projection in the parabolic case") {
  Ctx c("A2", WeightVec({1, 0}));
  CorootVec zero = CorootVec::zero(2), a1v({1, 0});
  CHECK(c.M.is_member(c.aff("e", zero)));
  CHECK(c.M.is_member(c.aff("s1", zero)));
  CHECK_FALSE(c.M.is_member(c.aff("s2", zero)));
  CHECK(c.M.is_member(c.aff("s2", a1v)));
  CHECK_FALSE(c.M.is_member(c.aff("e", a1v)));

  CHECK(c.M.proj(c.aff("e", a1v)) == c.aff("s2", a1v));
  CHECK(c.M.proj(c.aff("s2", a1v)) == c.aff("s2", a1v));
  CHECK(c.M.proj(c.aff("e", zero)) == c.aff("e", zero));
  CHECK(c.M.cl_dir(c.aff("s2", a1v)) == c.W.identity());
  CHECK(c.M.straight(c.aff("e", a1v)).dirs == std::vector<AffWeylElt>{c.aff("s2", a1v)});

  // projection is constant on cosets: multiply by parabolic affine elements
  AffWeylElt base = c.aff("s1", CorootVec({1, -1}));
  AffWeylElt rep = c.M.proj(base);
  CHECK(c.M.is_member(rep));
  for (const CorootVec& eta : coroot_box(2, 1)) {
    CorootVec inJ = CorootVec::zero(2);
    inJ[1] = eta[1];
    CHECK(c.M.proj(base * AffWeylElt{c.W.identity(), inJ}) == rep);
    CHECK(c.M.proj(base * AffWeylElt{c.W.parse("s2"), inJ}) == rep);
  }
}

TEST_CASE("covers match a brute-force search") {
  for (auto [label, lam] : {std::pair{"A1", WeightVec({2})}, {"A2", WeightVec({1, 1})},
                            {"A2", WeightVec({1, 0})}, {"B2", WeightVec({1, 0})}}) {
    Ctx c(label, lam);
    for (const Rat& sigma : {Rat(1), Rat(1, 2)})
      for (const WeylElt& w : c.W.elements())
        for (const CorootVec& xi : coroot_box(c.W.rank(), 1)) {
          AffWeylElt x{w, xi};
          if (!c.M.is_member(x)) continue;
          std::set<AffWeylElt> got;
          for (const auto& [y, gamma] : c.M.neighbors_up(x, sigma)) {
            CHECK(semi_infinite_length(y) == semi_infinite_length(x) + 1);
            CHECK(c.M.is_member(y));
            got.insert(y);
          }
          std::set<AffWeylElt> brute;
          for (int k = 0; k < c.datum.num_pos_roots(); ++k) {
            const RootVec& gamma = c.datum.pos_roots[static_cast<std::size_t>(k)];
            const CorootVec& gv = c.datum.pos_coroots[static_cast<std::size_t>(k)];
            if (!is_integer(sigma * Rat(RootDatum::pair(w.act(lam), gv)))) continue;
            for (Int n = -3; n <= 3; ++n) {
              AffWeylElt y = AffWeylElt{c.W.reflection(gamma), Int(n) * gv} * x;
              if (semi_infinite_length(y) == semi_infinite_length(x) + 1 && c.M.is_member(y))
                brute.insert(y);
            }
          }
          CHECK(got == brute);
        }
  }
}

TEST_CASE("lifts in rank one") {
  Ctx c("A1", WeightVec({2}));
  CorootVec zero({0}), a1v({1});

  SILSPath l1 = c.M.lift(c.qpath({"e", "s1"}, {0, Rat(1, 2), 1}));
  CHECK(l1 == c.path({c.aff("e", a1v), c.aff("s1", zero)}, {0, Rat(1, 2), 1}));
  CHECK(c.M.wt(l1) == AffineWeight({Rat(0)}, Rat(-1)));

  SILSPath l2 = c.M.lift(c.qpath({"s1", "e"}, {0, Rat(1, 2), 1}));
  CHECK(l2 == c.path({c.aff("s1", zero), c.aff("e", zero)}, {0, Rat(1, 2), 1}));
  CHECK(c.M.wt(l2) == AffineWeight({Rat(0)}, Rat(0)));

  CHECK(c.M.lift(c.qpath({"e"}, {0, 1})) == c.M.straight(c.aff("e", zero)));
  CHECK(c.M.wt(c.M.straight(c.aff("e", zero))) == AffineWeight({Rat(2)}, Rat(0)));

  CHECK(c.M.is_valid(l1));
  CHECK(c.M.is_valid(l2));
  CHECK_FALSE(c.M.is_valid(c.path({c.aff("e", zero), c.aff("s1", a1v)}, {0, Rat(1, 2), 1})));
  CHECK_FALSE(c.M.is_valid(c.path({c.aff("e", a1v), c.aff("s1", zero)}, {0, Rat(1, 3), 1})));
}

TEST_CASE("root operators and the classical projection commute") {
  for (auto [label, lam] : {std::pair{"A1", WeightVec({2})}, {"A2", WeightVec({1, 1})},
                            {"A2", WeightVec({1, 0})}, {"B2", WeightVec({1, 0})}}) {
    Ctx c(label, lam);
    QLSModel qls(c.W, lam, c.graph);
    for (const QLSPath& eta : qls.paths()) {
      SILSPath pi = c.M.lift(eta);
      CHECK(c.M.cl(pi) == eta);
      for (int a = 0; a <= c.W.rank(); ++a) {
        CHECK(c.M.eps(pi, a) == qls.eps(eta, a));
        CHECK(c.M.phi(pi, a) == qls.phi(eta, a));
        CHECK(c.M.wt_pair(pi, a) == qls.wt_pair(eta, a));
        auto fs = c.M.f(pi, a);
        auto fq = qls.f(eta, a);
        REQUIRE(fs.has_value() == fq.has_value());
        if (fs) {
          CHECK(c.M.is_valid(*fs));
          CHECK(c.M.cl(*fs) == *fq);
        }
        auto es = c.M.e(pi, a);
        auto eq = qls.e(eta, a);
        REQUIRE(es.has_value() == eq.has_value());
        if (es) {
          CHECK(c.M.is_valid(*es));
          CHECK(c.M.cl(*es) == *eq);
        }
      }
      CHECK(c.M.wt(pi).classical() == qls.wt(eta));
    }
  }
}

TEST_CASE("raising below the straight path") {
  Ctx c("A1", WeightVec({2}));
  CorootVec zero({0}), a1v({1});
  SILSPath top = c.M.straight(c.aff("e", zero));
  auto down = c.M.e(top, 0);
  REQUIRE(down.has_value());
  CHECK(*down == c.path({c.aff("e", zero), c.aff("s1", CorootVec({-1}))}, {0, Rat(1, 2), 1}));
  CHECK(c.M.is_valid(*down));
  CHECK(c.M.wt(*down) == AffineWeight({Rat(0)}, Rat(1)));
  auto back = c.M.f(*down, 0);
  REQUIRE(back.has_value());
  CHECK(*back == top);
}

TEST_CASE("translation action") {
  Ctx c("A1", WeightVec({2}));
  CorootVec zero({0}), a1v({1});
  SILSPath top = c.M.straight(c.aff("e", zero));
  SILSPath moved = c.M.translate(top, a1v);
  CHECK(moved == c.M.straight(c.aff("e", a1v)));
  CHECK(c.M.wt(moved) == AffineWeight({Rat(2)}, Rat(-2)));

  SILSPath l1 = c.M.lift(c.qpath({"e", "s1"}, {0, Rat(1, 2), 1}));
  SILSPath l1m = c.M.translate(l1, a1v);
  CHECK(c.M.is_valid(l1m));
  CHECK(c.M.wt(l1m) == AffineWeight({Rat(0)}, Rat(-3)));
  CHECK(c.M.translate(l1m, CorootVec({-1})) == l1);

  Ctx p("A2", WeightVec({1, 0}));
  SILSPath ptop = p.M.straight(p.aff("e", CorootVec::zero(2)));
  SILSPath pm = p.M.translate(ptop, CorootVec({1, 0}));
  CHECK(pm.dirs == std::vector<AffWeylElt>{p.aff("s2", CorootVec({1, 0}))});
  CHECK(p.M.wt(pm) == AffineWeight({Rat(1), Rat(0)}, Rat(-1)));
}

TEST_CASE("translation commutes with the root operators") {
  for (auto [label, lam] : {std::pair{"A1", WeightVec({2})}, {"A2", WeightVec({1, 1})},
                            {"A2", WeightVec({1, 0})}, {"B2", WeightVec({1, 0})}}) {
    Ctx c(label, lam);
    QLSModel qls(c.W, lam, c.graph);
    for (const QLSPath& eta : qls.paths()) {
      SILSPath pi = c.M.lift(eta);
      for (const CorootVec& xi : coroot_box(c.W.rank(), 1)) {
        SILSPath moved = c.M.translate(pi, xi);
        CHECK(c.M.is_valid(moved));
        CHECK(c.M.wt(moved) ==
              c.M.wt(pi) + AffineWeight(std::vector<Rat>(static_cast<std::size_t>(c.W.rank()), Rat(0)),
                                        -Rat(RootDatum::pair(lam, xi))));
        for (int a = 0; a <= c.W.rank(); ++a) {
          auto f1 = c.M.f(moved, a);
          auto f2 = c.M.f(pi, a);
          REQUIRE(f1.has_value() == f2.has_value());
          if (f1) CHECK(*f1 == c.M.translate(*f2, xi));
          auto e1 = c.M.e(moved, a);
          auto e2 = c.M.e(pi, a);
          REQUIRE(e1.has_value() == e2.has_value());
          if (e1) CHECK(*e1 == c.M.translate(*e2, xi));
        }
      }
    }
  }
}

TEST_CASE("reflection words act through the strings") {
  Ctx c("A1", WeightVec({2}));
  CorootVec zero({0}), a1v({1});
  SILSPath top = c.M.straight(c.aff("e", zero));
  CHECK(c.M.weyl_act(c.aff("s1", zero), top) == c.M.straight(c.aff("s1", zero)));
  CHECK(c.M.weyl_act(c.aff("e", a1v), top) == c.M.straight(c.aff("e", a1v)));
  CHECK(c.M.weyl_act(affine_simple_reflection(c.W, 0), top) ==
        c.M.straight(c.aff("s1", CorootVec({-1}))));

  // the straight path over the identity is sent to the projected element
  for (auto [label, lam] : {std::pair{"A1", WeightVec({2})}, {"A2", WeightVec({1, 0})},
                            {"A2", WeightVec({1, 1})}, {"B2", WeightVec({1, 0})}}) {
    Ctx p(label, lam);
    SILSPath id_path = p.M.straight(AffWeylElt{p.W.identity(), CorootVec::zero(p.W.rank())});
    for (const WeylElt& w : p.W.elements())
      for (const CorootVec& xi : coroot_box(p.W.rank(), 1)) {
        AffWeylElt x{w, xi};
        CHECK(p.M.weyl_act(x, id_path) == p.M.straight(x));
      }
  }
}

TEST_CASE("degrees through the lifted route") {
  Ctx c2("A1", WeightVec({2}));
  WeylElt e = c2.W.identity(), s1 = c2.W.parse("s1");
  CHECK(c2.M.deg_via_lift(c2.qpath({"e", "s1"}, {0, Rat(1, 2), 1}), e) == -1);
  CHECK(c2.M.deg_via_lift(c2.qpath({"s1", "e"}, {0, Rat(1, 2), 1}), e) == 0);
  CHECK(c2.M.deg_via_lift(c2.qpath({"e"}, {0, 1}), e) == 0);
  CHECK(c2.M.deg_via_lift(c2.qpath({"s1"}, {0, 1}), s1) == 0);

  Ctx c1("A1", WeightVec({1}));
  CHECK(c1.M.deg_via_lift(c1.qpath({"e"}, {0, 1}), c1.W.parse("s1")) == -1);
  CHECK(c1.M.deg_via_lift(c1.qpath({"e"}, {0, 1}), c1.W.identity()) == 0);
  CHECK(c1.M.deg_via_lift(c1.qpath({"s1"}, {0, 1}), c1.W.parse("s1")) == 0);
}

TEST_CASE("rendering") {
  Ctx c("A1", WeightVec({2}));
  SILSPath l1 = c.M.lift(c.qpath({"e", "s1"}, {0, Rat(1, 2), 1}));
  CHECK(l1.str() == "(t[1],s1;0,1/2,1)");
}
