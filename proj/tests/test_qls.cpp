#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <deque>
#include <set>

#include "qlskit/errors.hpp"
#include "qlskit/qls.hpp"

using namespace qlskit;

namespace {

struct Ctx {
  RootDatum datum;
  WeylGroup W;
  QBGraph graph;
  QLSModel M;
  Ctx(const std::string& label, const WeightVec& lam)
      : datum(RootDatum::build(label)), W(datum), graph(W, derive_J(lam)), M(W, lam, graph) {}

  QLSPath path(const std::vector<std::string>& dirs, const std::vector<Rat>& times) const {
    QLSPath p;
    for (const std::string& d : dirs) p.dirs.push_back(W.parse(d));
    p.times = times;
    return p;
  }
};

// f and e are mutually inverse partial bijections, string lengths match
// eps/phi, the weight moves by the level-zero simple root, and everything
// stays inside the enumerated set.
void check_crystal(const Ctx& c) {
  const std::vector<QLSPath>& ps = c.M.paths();
  std::set<QLSPath> all(ps.begin(), ps.end());
  REQUIRE(all.size() == ps.size());
  WeightVec theta_w = c.datum.root_as_weight(c.datum.theta);
  for (const QLSPath& p : ps) {
    CHECK(c.M.is_valid(p));
    for (int a = 0; a <= c.W.rank(); ++a) {
      auto fp = c.M.f(p, a);
      if (fp) {
        CHECK(all.count(*fp) == 1);
        auto back = c.M.e(*fp, a);
        REQUIRE(back.has_value());
        CHECK(*back == p);
        WeightVec drop = a == 0 ? WeightVec::zero(c.W.rank()) - theta_w
                                : c.datum.root_as_weight(RootVec::unit(c.W.rank(), a - 1));
        CHECK(c.M.wt(*fp) == c.M.wt(p) - drop);
      }
      auto ep = c.M.e(p, a);
      if (ep) {
        CHECK(all.count(*ep) == 1);
        auto back = c.M.f(*ep, a);
        REQUIRE(back.has_value());
        CHECK(*back == p);
      }
      Int nf = 0;
      for (QLSPath cur = p; auto nx = c.M.f(cur, a);) {
        cur = *nx;
        if (++nf > 200) break;
      }
      CHECK(nf == c.M.phi(p, a));
      Int ne = 0;
      for (QLSPath cur = p; auto nx = c.M.e(cur, a);) {
        cur = *nx;
        if (++ne > 200) break;
      }
      CHECK(ne == c.M.eps(p, a));
      CHECK(c.M.wt_pair(p, a) == c.M.phi(p, a) - c.M.eps(p, a));
    }
  }
  // connected under raising and lowering
  std::set<QLSPath> seen{ps.front()};
  std::deque<QLSPath> q{ps.front()};
  while (!q.empty()) {
    QLSPath x = q.front();
    q.pop_front();
    for (int a = 0; a <= c.W.rank(); ++a)
      for (auto nx : {c.M.f(x, a), c.M.e(x, a)})
        if (nx && !seen.count(*nx)) {
          seen.insert(*nx);
          q.push_back(*nx);
        }
  }
  CHECK(seen.size() == ps.size());
}

}  // namespace

TEST_CASE("two straight paths for the rank-one minuscule shape") {
  Ctx c("A1", WeightVec({1}));
  CHECK(c.M.turning_points().empty());
  const auto& ps = c.M.paths();
  REQUIRE(ps.size() == 2);
  QLSPath pe = c.path({"e"}, {0, 1});
  QLSPath ps1 = c.path({"s1"}, {0, 1});
  CHECK(ps[0] == pe);
  CHECK(ps[1] == ps1);

  CHECK(c.M.wt(pe) == WeightVec({1}));
  CHECK(c.M.wt(ps1) == WeightVec({-1}));

  CHECK(c.M.f(pe, 1) == ps1);
  CHECK(c.M.f(ps1, 0) == pe);
  CHECK(c.M.e(ps1, 1) == pe);
  CHECK(c.M.e(pe, 0) == ps1);
  CHECK_FALSE(c.M.f(ps1, 1).has_value());
  CHECK_FALSE(c.M.f(pe, 0).has_value());
  CHECK_FALSE(c.M.e(pe, 1).has_value());
  CHECK_FALSE(c.M.e(ps1, 0).has_value());

  CHECK(c.M.eps(pe, 1) == 0);
  CHECK(c.M.phi(pe, 1) == 1);
  CHECK(c.M.eps(pe, 0) == 1);
  CHECK(c.M.phi(pe, 0) == 0);
  check_crystal(c);
}

TEST_CASE("doubled rank-one shape") {
  Ctx c("A1", WeightVec({2}));
  CHECK(c.M.turning_points() == std::set<Rat>{Rat(1, 2)});
  const auto& ps = c.M.paths();
  REQUIRE(ps.size() == 4);
  QLSPath pe = c.path({"e"}, {0, 1});
  QLSPath ps1 = c.path({"s1"}, {0, 1});
  QLSPath pes1 = c.path({"e", "s1"}, {0, Rat(1, 2), 1});
  QLSPath ps1e = c.path({"s1", "e"}, {0, Rat(1, 2), 1});
  CHECK(ps == std::vector<QLSPath>{pe, ps1, pes1, ps1e});

  CHECK(c.M.wt(pes1) == WeightVec({0}));
  CHECK(c.M.wt(ps1e) == WeightVec({0}));

  CHECK(c.M.f(pe, 1) == ps1e);
  CHECK(c.M.f(ps1e, 1) == ps1);
  CHECK_FALSE(c.M.f(ps1, 1).has_value());
  CHECK_FALSE(c.M.f(pes1, 1).has_value());
  CHECK_FALSE(c.M.e(pes1, 1).has_value());
  CHECK(c.M.e(ps1e, 1) == pe);

  CHECK(c.M.f(ps1, 0) == pes1);
  CHECK(c.M.f(pes1, 0) == pe);
  CHECK_FALSE(c.M.f(pe, 0).has_value());
  CHECK_FALSE(c.M.f(ps1e, 0).has_value());
  CHECK(c.M.e(pe, 0) == pes1);
  CHECK(c.M.e(pes1, 0) == ps1);

  CHECK(c.M.f_max(pe, 1) == ps1);
  CHECK(c.M.eps(ps1e, 1) == 1);
  CHECK(c.M.phi(ps1e, 1) == 1);
  CHECK(c.M.eps(pes1, 1) == 0);
  CHECK(c.M.phi(pes1, 1) == 0);
  check_crystal(c);
}

TEST_CASE("degrees and graded characters in rank one") {
  Ctx c1("A1", WeightVec({1}));
  WeylElt e = c1.W.identity(), s1 = c1.W.parse("s1");
  QLSPath pe = c1.path({"e"}, {0, 1});
  QLSPath ps1 = c1.path({"s1"}, {0, 1});
  CHECK(c1.M.deg_at(pe, e) == 0);
  CHECK(c1.M.deg_at(ps1, e) == 0);
  CHECK(c1.M.deg_at(pe, s1) == -1);
  CHECK(c1.M.deg_at(ps1, s1) == 0);

  GradedCharacter g1;
  g1.add(WeightVec({1}), -1);
  g1.add(WeightVec({-1}), 0);
  CHECK(c1.M.gch(s1) == g1);

  GradedCharacter g0;
  g0.add(WeightVec({1}), 0);
  g0.add(WeightVec({-1}), 0);
  CHECK(c1.M.gch(e) == g0);

  Ctx c2("A1", WeightVec({2}));
  QLSPath pes1 = c2.path({"e", "s1"}, {0, Rat(1, 2), 1});
  QLSPath ps1e = c2.path({"s1", "e"}, {0, Rat(1, 2), 1});
  CHECK(c2.M.deg_at(pes1, c2.W.identity()) == -1);
  CHECK(c2.M.deg_at(ps1e, c2.W.identity()) == 0);

  GradedCharacter g2;
  g2.add(WeightVec({2}), 0);
  g2.add(WeightVec({0}), 0);
  g2.add(WeightVec({0}), -1);
  g2.add(WeightVec({-2}), 0);
  CHECK(c2.M.gch(c2.W.identity()) == g2);
  CHECK(g2.at_q1().at(WeightVec({0})) == 2);
}

TEST_CASE("rank-two enumerations") {
  Ctx a2("A2", WeightVec({1, 0}));
  CHECK(a2.M.J() == std::vector<int>{1});
  CHECK(a2.M.turning_points().empty());
  REQUIRE(a2.M.paths().size() == 3);
  CHECK(a2.M.paths()[0] == a2.path({"e"}, {0, 1}));
  CHECK(a2.M.paths()[1] == a2.path({"s1"}, {0, 1}));
  CHECK(a2.M.paths()[2] == a2.path({"s2s1"}, {0, 1}));
  check_crystal(a2);

  Ctx a2r("A2", WeightVec({1, 1}));
  CHECK(a2r.M.turning_points() == std::set<Rat>{Rat(1, 2)});
  REQUIRE(a2r.M.paths().size() == 9);
  std::vector<QLSPath> two_seg;
  for (const QLSPath& p : a2r.M.paths())
    if (p.segments() == 2) two_seg.push_back(p);
  REQUIRE(two_seg.size() == 3);
  CHECK(two_seg[0] == a2r.path({"e", "s1s2s1"}, {0, Rat(1, 2), 1}));
  CHECK(two_seg[1] == a2r.path({"s1s2", "s2"}, {0, Rat(1, 2), 1}));
  CHECK(two_seg[2] == a2r.path({"s2s1", "s1"}, {0, Rat(1, 2), 1}));
  check_crystal(a2r);
}

TEST_CASE("rank-two type B enumerations") {
  Ctx b1("B2", WeightVec({1, 0}));
  CHECK(b1.M.turning_points() == std::set<Rat>{Rat(1, 2)});
  REQUIRE(b1.M.paths().size() == 5);
  int two = 0;
  for (const QLSPath& p : b1.M.paths())
    if (p.segments() == 2) {
      ++two;
      CHECK(p == b1.path({"s2s1", "s1"}, {0, Rat(1, 2), 1}));
    }
  CHECK(two == 1);
  check_crystal(b1);

  Ctx b2("B2", WeightVec({0, 1}));
  CHECK(b2.M.turning_points().empty());
  CHECK(b2.M.paths().size() == 4);
  check_crystal(b2);
}

TEST_CASE("nine turning points for the doubled short-long shape") {
  Ctx g2("G2", WeightVec({1, 1}));
  std::set<Rat> expect{Rat(1, 5), Rat(1, 4), Rat(1, 3), Rat(2, 5), Rat(1, 2),
                       Rat(3, 5), Rat(2, 3), Rat(3, 4), Rat(4, 5)};
  CHECK(g2.M.turning_points() == expect);
}

TEST_CASE("validity") {
  Ctx c("A1", WeightVec({2}));
  CHECK(c.M.is_valid(c.path({"e", "s1"}, {0, Rat(1, 2), 1})));
  CHECK_FALSE(c.M.is_valid(c.path({"e", "s1"}, {0, Rat(1, 3), 1})));  // off-lattice turn
  CHECK_FALSE(c.M.is_valid(c.path({"e", "e"}, {0, Rat(1, 2), 1})));
  CHECK_FALSE(c.M.is_valid(c.path({"e"}, {0, Rat(1, 2)})));
  CHECK_FALSE(c.M.is_valid(c.path({"e", "s1"}, {0, Rat(1, 2), Rat(1, 2)})));
  CHECK_FALSE(c.M.is_valid(QLSPath{}));

  Ctx a2("A2", WeightVec({1, 0}));
  CHECK_FALSE(a2.M.is_valid(a2.path({"s2"}, {0, 1})));  // not a coset representative
  CHECK(a2.M.straight(a2.W.parse("s2")) == a2.path({"e"}, {0, 1}));
}

TEST_CASE("argument checks") {
  RootDatum datum = RootDatum::build("A2");
  WeylGroup W(datum);
  QBGraph full(W, {});
  CHECK_THROWS_AS(QLSModel(W, WeightVec({1}), full), std::invalid_argument);
  CHECK_THROWS_AS(QLSModel(W, WeightVec({1, 0}), full), std::invalid_argument);
  CHECK_THROWS_AS(QLSModel(W, WeightVec({-1, 0}), full), std::invalid_argument);

  QBGraph para(W, {1});
  QLSModel capped(W, WeightVec({1, 1}), full, 4);
  CHECK_THROWS_AS(capped.paths(), EnumerationCapExceeded);
}

TEST_CASE("drawing the crystal") {
  Ctx c("A1", WeightVec({2}));
  std::string dot = c.M.export_crystal_dot();
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("->") != std::string::npos);
}
