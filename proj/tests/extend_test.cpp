#include <doctest.h>

#include "bvw/error.hpp"
#include "bvw/extend/extend.hpp"
#include "bvw/instances/instances.hpp"
#include "bvw/site/builders.hpp"

#include "support.hpp"

using namespace bvw;
using namespace bvw::testing;

namespace {

const CoeffRing QQ = CoeffRing::rationals();
const CoeffRing F2 = CoeffRing::prime_field(2);

std::size_t at(int i) { return static_cast<std::size_t>(i); }

TheoryPtr theory(const SitePtr& site, CoeffRing ring, const std::string& name = "F") {
  return build_simple_theory(counting_instance(site, ring), name);
}

bool is_full(const Submodule& m) { return m.contains(Submodule::full(m.ring(), m.ambient())); }

// Every vector with coordinates in [lo, hi].
std::vector<Vec> box(std::size_t n, int lo, int hi) {
  std::vector<Vec> out{Vec{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Vec> next;
    for (const Vec& v : out)
      for (int k = lo; k <= hi; ++k) {
        Vec w = v;
        w.push_back(Scalar(k));
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

Matrix identity_like(const ModuleMap& m) { return Matrix::identity(m.matrix.ring(), m.source.rank()); }

}  // namespace

TEST_CASE("strong orientations") {
  auto Z = theory(build_finset_site(2), ZZ);
  auto F3 = theory(build_finset_site(2), CoeffRing::prime_field(3));
  const ObjId s2 = Z->site().require_object("S2");
  auto one = is_strong_orientation(*Z, s2, iv({1, 1}));
  CHECK(one.strong);
  for (const auto& [f, inv] : one.inverses) CHECK(inv.matrix == identity_like(inv));
  CHECK(one.inverses.size() == Z->site().morphisms_into(s2).size());
  auto two = is_strong_orientation(*Z, s2, iv({2, 2}));
  CHECK_FALSE(two.strong);
  CHECK(two.witness.contains("morphism"));
  CHECK(is_strong_orientation(*F3, s2, iv({2, 2})).strong);
  CHECK_FALSE(is_strong_orientation(*F3, s2, iv({1, 0})).strong);
}

TEST_CASE("identity transform extends to the identity") {
  auto F = theory(build_finset_site(2), ZZ);
  auto c = identity_transform(F);
  auto res = run_extension(c, unit_orientation(*F));
  CHECK(res.hypotheses.passed());
  CHECK(res.ledger.passed());
  CHECK(res.external_products);
  CHECK(res.o_allowable.size() == F->site().morphism_count());
  for (MorId f : res.o_allowable) {
    CHECK(is_full(res.Fprime_of(f)));
    CHECK(res.gamma(f).matrix == identity_like(res.gamma(f)));
  }
  CHECK(res.ledger.status_of("Fprime_star_full") == Status::Pass);
  CHECK(check_maximality(res, candidate_from(res)).passed());
  CHECK(res.to_json().dump() == run_extension(c, unit_orientation(*F)).to_json().dump());
}

TEST_CASE("mod 2 reduction extends coordinatewise") {
  auto site = build_finset_site(3);
  auto F = theory(site, ZZ);
  auto H = theory(site, F2, "H");
  auto c = mod2_transform(F, H);
  CHECK(check_naturality(c).passed());
  Extender e(c, unit_orientation(*F));
  CHECK(check_external(e).passed());
  CHECK(check_pushdown_compat(e).passed());
  auto res = run_extension(c, unit_orientation(*F));
  CHECK_MESSAGE(res.ledger.passed(), res.ledger.to_json().dump());
  for (MorId f : res.o_allowable) {
    CHECK(is_full(res.Fprime_of(f)));
    const ModuleMap& g = res.gamma(f);
    for (const Vec& v : box(g.source.rank(), -3, 3)) {
      Vec expect;
      for (const Scalar& x : v) expect.push_back(Scalar(static_cast<long long>(((x.num % 2) + 2) % 2)));
      CHECK(g(v) == expect);
    }
  }
}

TEST_CASE("smith transform over F2 and over Z") {
  auto isite = build_involution_site(3, true);
  auto fsite = build_finset_site(3, true);
  auto bar = fixed_points_functor(isite, fsite);
  auto F = build_simple_theory(invariant_instance(isite, F2), "F");
  auto H = theory(fsite, F2, "H");
  auto c = smith_transform(F, H, bar);
  CHECK(check_naturality(c).passed());
  auto res = run_extension(c, unit_orientation(*F));
  CHECK_MESSAGE(res.ledger.passed(), res.ledger.to_json().dump());
  CHECK(res.external_products);
  const ConcreteModel& m = *isite->model();
  for (MorId f : res.o_allowable) {
    CHECK(is_full(res.Fprime_of(f)));
    const auto& inv = m.involution[at(isite->source(f))];
    std::vector<int> orbit(inv.size());
    int next = 0;
    for (std::size_t p = 0; p < inv.size(); ++p)
      orbit[p] = (static_cast<std::size_t>(inv[p]) < p) ? orbit[at(inv[p])] : next++;
    const ModuleMap& g = res.gamma(f);
    for (const Vec& a : box(g.source.rank(), 0, 1)) {
      Vec expect;
      for (std::size_t p = 0; p < inv.size(); ++p)
        if (inv[p] == static_cast<int>(p)) expect.push_back(a[at(orbit[p])]);
      CHECK(g(a) == expect);
    }
  }

  auto FZ = build_simple_theory(invariant_instance(isite, ZZ), "F");
  auto HZ = theory(fsite, ZZ, "H");
  auto cz = smith_transform(FZ, HZ, bar);
  auto nat = check_naturality(cz);
  REQUIRE_FALSE(nat.passed());
  const Json& w = nat.find("naturality")->witness;
  CHECK(w["source_points"] == 2);
  CHECK(w["lhs"] == "(2)");
  CHECK(w["rhs"] == "(0)");
  CHECK_THROWS_AS(run_extension(cz, unit_orientation(*FZ)), Error);
}

TEST_CASE("maximality") {
  auto site = build_finset_site(2);
  auto F = theory(site, ZZ);
  auto H = theory(site, F2, "H");
  auto res = run_extension(mod2_transform(F, H), unit_orientation(*F));
  CHECK(check_maximality(res, candidate_from(res)).passed());

  const Site& s = F->site();
  const MorId f = fn(s, "S2", "S2", {0, 0});
  auto bad = candidate_from(res);
  Matrix m = bad.gamma[at(f)]->matrix;
  m(0, 0) = Scalar(0);
  bad.gamma[at(f)]->matrix = m;
  auto r = check_maximality(res, bad);
  CHECK_FALSE(r.passed());
  CHECK(r.status_of("defining_equation") == Status::Fail);
  CHECK(r.find("defining_equation")->witness["morphism"] == s.morphism_label(f));
  CHECK(r.status_of("agreement") == Status::Fail);

  // Defined only on maps to the point.
  auto small = candidate_from(res);
  for (MorId g = 0; g < static_cast<MorId>(s.morphism_count()); ++g)
    if (s.target(g) != s.final_object()) {
      small.domain[at(g)].reset();
      small.gamma[at(g)].reset();
    }
  auto rs = check_maximality(res, small);
  CHECK(rs.passed());
  CHECK(rs.status_of("containment") == Status::Pass);
  CHECK(rs.status_of("candidate_domain") == Status::Skipped);
}

TEST_CASE("scaled transform prunes F'") {
  auto F = theory(build_finset_site(2), QQ);
  auto c = scaled_transform(F, Scalar(2));
  Extender e(c, unit_orientation(*F));
  auto ext = check_external(e);
  REQUIRE_FALSE(ext.passed());
  const Json& w = ext.find("external")->witness;
  CHECK(w["points"] == "pt");
  CHECK(w["lhs"] == "(2)");
  CHECK(w["rhs"] == "(4)");

  auto res = run_extension(c, unit_orientation(*F));
  CHECK(res.hypotheses.status_of("unit_condition") == Status::Fail);
  CHECK_FALSE(res.external_products);
  CHECK_MESSAGE(res.ledger.passed(), res.ledger.to_json().dump());
  for (const char* name : {"Fprime_pullback_closed", "Fprime_product_closed", "Fprime_pushdown_closed"})
    CHECK(res.ledger.find(name) != nullptr);
  const Site& s = F->site();
  bool proper = false;
  for (MorId f : res.o_allowable) {
    const Submodule& fp = res.Fprime_of(f);
    proper = proper || !is_full(fp);
    for (const Vec& a : box(fp.ambient(), -2, 2)) CHECK(e.membership(f, a).member == fp.contains(a));
  }
  CHECK(proper);
  const MorId g = fn(s, "S2", "S2", {0, 1});
  auto mem = e.membership(g, iv({1, 1}));
  CHECK_FALSE(mem.member);
  CHECK(mem.witness.contains("square"));
  CHECK_THROWS_AS(e.membership(g, iv({1})), Error);
}

TEST_CASE("push-down compatibility detects a corrupted gamma") {
  auto F = theory(build_finset_site(2), ZZ);
  Extender e(identity_transform(F), unit_orientation(*F));
  CHECK(check_pushdown_compat(e).passed());
  const MorId f = fn(F->site(), "S2", "pt", {0, 0});
  ModuleMap g = e.gamma(f);
  g.matrix(0, 1) = Scalar(5);
  auto r = check_pushdown_compat(e.with_gamma(f, g));
  CHECK_FALSE(r.passed());
  CHECK(r.find("pushdown_compat")->witness.contains("confined"));
}

TEST_CASE("orientation errors") {
  auto F = theory(build_finset_site(2), ZZ);
  auto c = identity_transform(F);
  auto o = unit_orientation(*F);
  const ObjId s2 = F->site().require_object("S2");
  o.e[at(s2)].reset();
  Extender e(c, o);
  const MorId f = fn(F->site(), "pt", "S2", {0});
  CHECK_THROWS_WITH_AS(e.gamma(f), doctest::Contains("NotOrientable"), Error);
  CHECK_THROWS_WITH_AS(e.membership(f, iv({1})), doctest::Contains("NotOAllowable"), Error);
  auto two = unit_orientation(*F, Scalar(2));
  Extender e2(c, two);
  CHECK_THROWS_WITH_AS(define_gamma(e2, f), doctest::Contains("MissingCertificate"), Error);
  CHECK_THROWS_WITH_AS(run_extension(c, two), doctest::Contains("OrientationViolation"), Error);
}

TEST_CASE("independence of the orientation choice") {
  auto F = theory(build_finset_site(2), QQ);
  for (const Scalar& u : {Scalar(1), Scalar(2)}) {
    auto c = scaled_transform(F, u);
    auto plus = run_extension(c, unit_orientation(*F, Scalar(1)));
    auto minus = run_extension(c, unit_orientation(*F, Scalar(-1)));
    for (MorId f : plus.o_allowable) {
      CHECK(plus.Fprime_of(f) == minus.Fprime_of(f));
      CHECK(plus.gamma(f).matrix == minus.gamma(f).matrix);
    }
  }
}

TEST_CASE("explicit description") {
  auto site = build_finset_site(2);
  auto F = theory(site, ZZ);
  auto H = theory(site, F2, "H");
  const ObjId s2 = F->site().require_object("S2");
  for (auto c : {identity_transform(F), mod2_transform(F, H)}) {
    auto res = run_extension(c, unit_orientation(*F));
    auto r = check_explicit_description(res, s2, *res.engine->H().unit(s2));
    CHECK_MESSAGE(r.passed(), r.to_json().dump());
    CHECK(r.find("explicit_description")->checked > 0);
  }
  auto Q = theory(build_finset_site(2), QQ);
  auto scaled = run_extension(scaled_transform(Q, Scalar(2)), unit_orientation(*Q));
  auto rs = check_explicit_description(scaled, s2, iv({1, 1}));
  CHECK(rs.passed());
  CHECK(rs.find("normalization")->note.find("class (2,2)") != std::string::npos);

  auto res = run_extension(identity_transform(F), unit_orientation(*F));
  const MorId f = fn(F->site(), "S2", "S2", {1, 0});
  ModuleMap g = res.gamma(f);
  g.matrix(0, 0) = Scalar(3);
  ExtensionResult bad = res;
  bad.engine = std::make_shared<const Extender>(res.engine->with_gamma(f, g));
  CHECK_FALSE(check_explicit_description(bad, s2, iv({1, 1})).passed());

  auto nc = F->unfrozen_copy();
  nc.set_commutativity(Commutativity::None);
  nc.freeze();
  auto Hn = std::make_shared<const BivariantTheory>(nc);
  CovariantTransform cn = identity_transform(F);
  cn.H = Hn;
  auto rn = run_extension(cn, unit_orientation(*F));
  CHECK_THROWS_WITH_AS(check_explicit_description(rn, s2, iv({1, 1})), doctest::Contains("NotCommutative"), Error);
  CHECK_THROWS_WITH_AS(check_explicit_description(res, s2, iv({2, 1})), doctest::Contains("MissingCertificate"),
                       Error);
}

TEST_CASE("product reduction") {
  auto C = theory(build_finset_site(2), ZZ);
  const Site& s = C->site();
  const MorId f = fn(s, "S2", "S2", {1, 1});
  const MorId g = fn(s, "S2", "pt", {0, 0});
  const MorId h = fn(s, "S2", "S2", {0, 1});
  auto r = reduce_product(*C, f, g, iv({1, 1}), iv({1}));
  CHECK_MESSAGE(r.passed(), r.to_json().dump());
  CHECK(r.status_of("reduced_product") == Status::Pass);
  CHECK(r.status_of("reduced_associative") == Status::Pass);
  CHECK(reduce_product(*C, f, h, iv({1, 1}), iv({1, 1})).passed());

  auto gs = build_graded_site({{0}, {1}, {0, 0}, {0, 1}});
  auto E = build_simple_theory(euler_instance(gs, ZZ), "euler");
  const MorId p = map_to_point(*gs, gs->require_object("D01"));
  for (MorId a : gs->morphisms_into(gs->require_object("D01"))) {
    auto re = reduce_product(*E, a, p, *E->unit(gs->target(a)), *E->unit(gs->final_object()));
    CHECK_MESSAGE(re.passed(), re.to_json().dump());
  }

  auto skew = exterior(Commutativity::Skew);
  CHECK_THROWS_WITH_AS(reduce_product(*skew, 0, 0, iv({0, 1, 0, 0}), iv({1, 0, 0, 0})),
                       doctest::Contains("OddDegreeOrientation"), Error);
  CHECK(reduce_product(*skew, 0, 0, iv({1, 0, 0, 0}), iv({1, 0, 0, 0})).passed());

  // Corrupt one product table entry.
  auto bad = C->unfrozen_copy();
  BilinearMap mul = *C->product_table(f, h);
  mul.at(0, 0, 0) = Scalar(3);
  bad.set_product(f, h, mul);
  bad.freeze();
  auto rb = reduce_product(bad, f, h, iv({1, 1}), iv({1, 1}));
  CHECK_FALSE(rb.passed());
  CHECK(rb.find("reduction")->witness.contains("lhs"));
}

TEST_CASE("relative orientation") {
  auto F = theory(build_finset_site(2), ZZ);
  const Site& s = F->site();
  const MorId f = fn(s, "S2", "pt", {0, 0});
  const MorId k = fn(s, "S2", "S2", {1, 0});
  auto res = run_extension(identity_transform(F), unit_orientation(*F));
  RelativeOrientationData d{k, iv({1, 1}), iv({1, 1}), iv({1, 1}), iv({1, 1}), iv({1, 1}), iv({1, 1}), iv({1, 1}),
                            iv({1, 1})};
  auto r = check_relative_orientation(res, d);
  CHECK_MESSAGE(r.passed(), r.to_json().dump());
  RelativeOrientationData dp{f, iv({1, 1}), iv({1, 1}), iv({1}), iv({1, 1}), iv({1, 1}), iv({1}), iv({1, 1}), iv({1})};
  CHECK(check_relative_orientation(res, dp).passed());

  auto Q = theory(build_finset_site(2), QQ);
  auto sres = run_extension(scaled_transform(Q, Scalar(2)), unit_orientation(*Q));
  RelativeOrientationData ds{k, iv({1, 1}), iv({1, 1}), iv({1, 1}), iv({1, 1}), iv({1, 1}), iv({1, 1}), iv({2, 2}),
                             iv({2, 2})};
  auto rs = check_relative_orientation(sres, ds);
  CHECK_MESSAGE(rs.passed(), rs.to_json().dump());

  RelativeOrientationData broken = d;
  broken.e_f = iv({1, 0});
  CHECK_THROWS_WITH_AS(check_relative_orientation(res, broken), doctest::Contains("e_f * e_Y"), Error);
  RelativeOrientationData noninv = d;
  noninv.tangent_y = iv({2, 1});
  CHECK_THROWS_WITH_AS(check_relative_orientation(res, noninv), doctest::Contains("NotInvertible"), Error);

  ModuleMap g = res.gamma(k);
  g.matrix(1, 0) = Scalar(1);
  ExtensionResult bad = res;
  bad.engine = std::make_shared<const Extender>(res.engine->with_gamma(k, g));
  auto rb = check_relative_orientation(bad, d);
  CHECK(rb.status_of("relative_orientation") == Status::Fail);
}

TEST_CASE("Verdier-Riemann-Roch check") {
  auto site = build_finset_site(2);
  auto F = theory(site, ZZ);
  auto H = theory(site, F2, "H");
  const Site& s = F->site();
  for (auto c : {identity_transform(F), mod2_transform(F, H)}) {
    Extender e(c, unit_orientation(*F));
    for (MorId f = 0; f < static_cast<MorId>(s.morphism_count()); ++f) {
      const Vec t(c.H->group(c.H->site().identity(s.source(f))).rank(), Scalar(1));
      auto r = check_verdier_rr(e, f, t);
      CHECK_MESSAGE(r.passed(), r.to_json().dump());
    }
  }
  const MorId p = fn(s, "S2", "pt", {0, 0});
  Extender e(identity_transform(F), unit_orientation(*F));
  auto rt = check_verdier_rr(e, p, iv({2, 1}));
  CHECK(rt.status_of("diagram") == Status::Fail);

  auto Q = theory(build_finset_site(2), QQ);
  Extender es(scaled_transform(Q, Scalar(2)), unit_orientation(*Q));
  auto rs = check_verdier_rr(es, p, iv({1, 1}));
  CHECK(rs.status_of("diagram") == Status::Pass);
  CHECK(rs.status_of("relative_class") == Status::Fail);
  CHECK(rs.find("relative_class")->witness["gamma"] == "(2,2)");
}
