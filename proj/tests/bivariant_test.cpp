#include <doctest.h>

#include "bvw/bivariant/axioms.hpp"
#include "bvw/bivariant/derived.hpp"
#include "bvw/error.hpp"
#include "bvw/instances/instances.hpp"
#include "bvw/site/builders.hpp"

#include "support.hpp"

#include <chrono>

using namespace bvw;
using namespace bvw::testing;

TEST_CASE("counting products, push-downs and pull-backs") {
  auto t = counting(2);
  const Site& s = t->site();
  const MorId f = fn(s, "S2", "pt", {0, 0});
  const MorId idpt = s.identity(s.require_object("pt"));
  CHECK(t->product(f, iv({1, 1}), idpt, iv({5})) == iv({5, 5}));
  // Pointwise oracle.
  for (long long a0 = -2; a0 <= 2; ++a0)
    for (long long a1 = -2; a1 <= 2; ++a1)
      for (long long b = -2; b <= 2; ++b) CHECK(t->product(f, iv({a0, a1}), idpt, iv({b})) == iv({a0 * b, a1 * b}));
  CHECK(t->product(f, iv({2, 3}), idpt, iv({4})) == iv({8, 12}));
  CHECK(t->pushdown(f, idpt, iv({1, 1})) == iv({2}));
  const MorId idx = s.identity(s.require_object("S2"));
  CHECK(t->pushdown(idx, f, iv({7, -3})) == iv({7, -3}));

  // Pull-back: (g^* a)(x') = a(top(x')) on every listed square over f.
  for (SqId q : s.squares_with_right(f)) {
    const Square& sq = s.square(q);
    const auto& top = s.model()->table[static_cast<std::size_t>(sq.top)];
    Vec a = iv({2, 3});
    Vec expect;
    for (int x : top) expect.push_back(a[static_cast<std::size_t>(x)]);
    CHECK(t->pullback(q, a) == expect);
  }
  CHECK_THROWS_AS(t->product(f, iv({1, 1}), f, iv({1, 1})), Error);
  try {
    t->product(f, iv({1, 1}), f, iv({1, 1}));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotComposable);
  }
}

TEST_CASE("element-level operations") {
  auto t = counting(2);
  const Site& s = t->site();
  const MorId f = fn(s, "S2", "pt", {0, 0});
  TheoryElement a{f, iv({1, 2}), std::nullopt};
  TheoryElement b{s.identity(s.require_object("pt")), iv({3}), std::nullopt};
  auto ab = t->product(a, b);
  CHECK(ab.morphism == f);
  CHECK(ab.vector == iv({3, 6}));
  auto pushed = t->pushdown(f, a);
  CHECK(pushed.vector == iv({3}));
  CHECK(pushed.morphism == s.identity(s.require_object("pt")));
}

TEST_CASE("counting and euler theories satisfy the axioms on small sites") {
  auto t = counting(2);
  auto r = check_axioms(*t);
  CHECK_MESSAGE(r.passed(), r.to_json().dump());
  for (const char* a : {"A1", "A2", "A3", "A12", "A13", "A23", "A123", "unit_left", "unit_right", "unit_pullback"})
    CHECK_MESSAGE(r.status_of(a) == Status::Pass, a);
  CHECK(check_commutativity(*t).passed());
  CHECK(check_commutativity(*t).status_of("commutativity") == Status::Pass);

  auto g = build_graded_site({{0}, {1}, {0, 0}, {0, 1}, {1, 1}});
  auto e = build_simple_theory(euler_instance(g, ZZ), "euler");
  auto re = check_axioms(*e);
  CHECK_MESSAGE(re.passed(), re.to_json().dump());
  const MorId f = fn(*g, "D11", "pt", {0, 0});
  CHECK(e->pushdown(f, g->identity(g->require_object("pt")), iv({1, 1})) == iv({-2}));
}

TEST_CASE("corrupted push-down breaks A12") {
  auto t = counting(2);
  const Site& s = t->site();
  const MorId f = fn(s, "S2", "pt", {0, 0});
  const MorId idpt = s.identity(s.require_object("pt"));
  BivariantTheory bad = t->unfrozen_copy();
  ModuleMap p = *t->pushdown_table(f, idpt);
  p.matrix(0, 1) = Scalar(2);
  bad.set_pushdown(f, idpt, p);
  bad.freeze();
  auto r = check_axioms(bad);
  CHECK(r.status_of("A12") == Status::Fail);
  const auto& w = r.find("A12")->witness;
  CHECK(w.contains("basis"));
  CHECK(w["f"] == s.morphism_label(f));
}

TEST_CASE("weak flavor skips A123") {
  auto d = counting_instance(build_finset_site(2), ZZ);
  d.two_sided = false;
  auto t = build_simple_theory(d);
  CHECK(t->flavor() == Flavor::Weak);
  auto r = check_axioms(*t);
  CHECK(r.status_of("A123") == Status::Skipped);
  CHECK(r.passed());
}

TEST_CASE("skew commutativity on an exterior algebra") {
  auto skew = exterior(Commutativity::Skew);
  auto r = check_commutativity(*skew);
  CHECK_MESSAGE(r.passed(), r.to_json().dump());
  CHECK(check_axioms(*skew).passed());
  auto naive = exterior(Commutativity::Commutative);
  auto rn = check_commutativity(*naive);
  CHECK(rn.status_of("commutativity") == Status::Fail);
  // x * y == -(y * x): first failing pair is (x, y).
  CHECK(rn.find("commutativity")->witness["basis"] == Json::array({1, 2}));
}

TEST_CASE("commutativity is vacuous without listed transposes") {
  SiteBuilder b;
  ObjId pt = b.add_object("pt");
  b.confine_all();
  b.allow_all();
  b.set_final(pt);
  auto site = b.build();
  auto t = std::make_shared<BivariantTheory>(site, ZZ, Flavor::Full);
  Module m = Module::free(ZZ, 1);
  BilinearMap mul(m, m, m);
  mul.at(0, 0, 0) = Scalar(1);
  t->set_group(0, m);
  t->set_product(0, 0, mul);
  t->set_pushdown(0, 0, ModuleMap(m, m, Matrix::identity(ZZ, 1)));
  t->set_commutativity(Commutativity::Commutative);
  t->freeze();
  auto r = check_commutativity(*t);
  CHECK(r.status_of("commutativity") == Status::Vacuous);
  CHECK(r.find("commutativity")->note.find("vacuous") != std::string::npos);
}

TEST_CASE("derived structures") {
  auto t = counting(2);
  const Site& s = t->site();
  const ObjId x = s.require_object("S2"), pt = s.require_object("pt");
  const MorId f = fn(s, "S2", "pt", {0, 0});
  CHECK(cap(*t, x, iv({1, 1}), iv({4, -2})) == iv({4, -2}));
  CHECK(cap(*t, x, iv({3, 0}), iv({4, -2})) == iv({12, 0}));

  auto cov = covariant_part(*t);
  CHECK(cov.modules[static_cast<std::size_t>(x)].rank() == 2);
  CHECK(check_covariant_part(cov).passed());
  auto con = contravariant_part(*t);
  CHECK(check_contravariant_part(con).passed());
  CHECK(con.cup[static_cast<std::size_t>(x)](iv({2, 3}), iv({5, 7})) == iv({10, 21}));

  // External product over a square with Y' = pt is the scalar action.
  const MorId xpt = map_to_point(s, x), idpt = s.identity(pt);
  for (SqId q : s.squares_with_right(xpt)) {
    if (s.square(q).bottom != idpt) continue;
    Vec alpha = iv({2, 5});
    Vec out = external(*t, q, iv({3}), alpha);
    const auto& top = s.model()->table[static_cast<std::size_t>(s.square(q).top)];
    Vec expect;
    for (int p : top) expect.push_back(Scalar(3 * static_cast<long long>(alpha[static_cast<std::size_t>(p)].num)));
    CHECK(out == expect);
  }
  CHECK(gysin_pull(*t, f, iv({1, 1}), iv({7})) == iv({7, 7}));
  CHECK(gysin_push(*t, f, iv({1, 1}), iv({2, 3})) == iv({5}));
  CHECK(right_action(*t, f, iv({2, 3}), iv({4})) == iv({8, 12}));
  for (SqId q : s.squares_with_bottom(fn(s, "pt", "S2", {1})))
    if (s.square(q).right == s.identity(x)) CHECK(restrict_to_fiber(*t, q, iv({6, 9})) == iv({9}));
  auto rd = check_derived(*t);
  CHECK_MESSAGE(rd.passed(), rd.to_json().dump());
}

TEST_CASE("partial theory without allowable identity refuses the contravariant part") {
  SiteBuilder b;
  ObjId pt = b.add_object("pt");
  ObjId x = b.add_object("X");
  MorId p = b.add_morphism("p", x, pt);
  b.confine_all();
  b.set_final(pt);
  b.set_allowable(p);
  auto site = b.build();
  auto t = std::make_shared<BivariantTheory>(site, ZZ, Flavor::Partial);
  Module m = Module::free(ZZ, 1);
  t->set_group(p, m);
  t->set_pushdown(site->identity(x), p, ModuleMap(m, m, Matrix::identity(ZZ, 1)));
  t->freeze();
  CHECK(t->has_group(p));
  CHECK_FALSE(t->has_group(site->identity(x)));
  try {
    contravariant_part(*t);
    FAIL("expected NotAllowable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAllowable);
  }
}

TEST_CASE("counting axioms on FinSet(3)") {
  auto t0 = std::chrono::steady_clock::now();
  auto t = counting(3);
  auto t1 = std::chrono::steady_clock::now();
  auto r = check_axioms(*t);
  auto t2 = std::chrono::steady_clock::now();
  CHECK_MESSAGE(r.passed(), r.to_json().dump());
  MESSAGE("build " << std::chrono::duration<double>(t1 - t0).count() << " s, axioms "
                   << std::chrono::duration<double>(t2 - t1).count() << " s");
}
