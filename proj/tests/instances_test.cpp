#include <doctest.h>

#include "bvw/bivariant/axioms.hpp"
#include "bvw/error.hpp"
#include "bvw/instances/instances.hpp"
#include "bvw/simple/simple.hpp"
#include "bvw/site/builders.hpp"
#include "bvw/site/validation.hpp"

#include <functional>

using namespace bvw;

namespace {

const CoeffRing ZZ = CoeffRing::integers();
const CoeffRing F2 = CoeffRing::prime_field(2);

// Euler characteristic of the order complex of a face poset, by counting
// strictly increasing chains. below[i] lists the cells strictly below i.
long long order_complex_euler(const std::vector<std::vector<int>>& below) {
  const int n = static_cast<int>(below.size());
  std::function<long long(int, int)> chains = [&](int top, int len) -> long long {
    // Signed count of chains ending at `top` with `len` elements so far.
    long long sign = (len % 2 == 1) ? 1 : -1;
    long long total = sign;
    for (int b : below[static_cast<std::size_t>(top)]) total += chains(b, len + 1);
    return total;
  };
  long long chi = 0;
  for (int i = 0; i < n; ++i) chi += chains(i, 1);
  return chi;
}

}  // namespace

TEST_CASE("euler integral agrees with the order complex") {
  // Interval: v0, v1 below e.
  GradedFinSet interval{{"v0", "v1", "e"}, {0, 0, 1}};
  const long long chi_interval = order_complex_euler({{}, {}, {0, 1}});
  CHECK(chi_interval == 1);
  CHECK(euler_integral(interval, {1, 1, 1}, ZZ) == Scalar(chi_interval));
  // Circle: two vertices, two edges each bounded by both.
  GradedFinSet circle{{"v0", "v1", "e0", "e1"}, {0, 0, 1, 1}};
  const long long chi_circle = order_complex_euler({{}, {}, {0, 1}, {0, 1}});
  CHECK(chi_circle == 0);
  CHECK(euler_integral(circle, {1, 1, 1, 1}, ZZ) == Scalar(chi_circle));
  GradedFinSet empty{{}, {}};
  CHECK(order_complex_euler({}) == 0);
  CHECK(euler_integral(empty, {}, ZZ) == Scalar(0));
}

TEST_CASE("euler push-forward matches direct fiber enumeration") {
  auto g = build_graded_site({{0}, {1}, {0, 0}, {0, 1}, {1, 1}, {0, 0, 1}});
  auto d = euler_instance(g, ZZ);
  const ConcreteModel& m = *g->model();
  for (MorId f = 0; f < static_cast<MorId>(g->morphism_count()); ++f) {
    const auto& dx = m.dims[static_cast<std::size_t>(g->source(f))];
    const auto& dy = m.dims[static_cast<std::size_t>(g->target(f))];
    const auto& t = m.table[static_cast<std::size_t>(f)];
    const ModuleMap& push = *d.pushforward[static_cast<std::size_t>(f)];
    for (std::size_t y = 0; y < dy.size(); ++y)
      for (std::size_t x = 0; x < dx.size(); ++x) {
        long long expect = 0;
        if (static_cast<std::size_t>(t[x]) == y) expect = ((dx[x] - dy[y]) % 2 == 0) ? 1 : -1;
        CHECK(push.matrix(y, x) == Scalar(expect));
      }
  }
  // (g f)_* == g_* f_* exactly.
  for (MorId f = 0; f < static_cast<MorId>(g->morphism_count()); ++f)
    for (MorId h : g->morphisms_from(g->target(f)))
      CHECK(d.pushforward[static_cast<std::size_t>(g->compose(h, f))]->matrix ==
            d.pushforward[static_cast<std::size_t>(h)]->matrix * d.pushforward[static_cast<std::size_t>(f)]->matrix);
  // Two points of dimension 1 over a point: -2.
  auto two = g->model()->find_function(g->require_object("D11"), g->require_object("pt"), {0, 0});
  REQUIRE(two);
  CHECK((*d.pushforward[static_cast<std::size_t>(*two)])(Vec{1, 1}) == Vec{Scalar(-2)});
  // Interval model pushed to a point.
  auto iv = g->model()->find_function(g->require_object("D001"), g->require_object("pt"), {0, 0, 0});
  REQUIRE(iv);
  CHECK((*d.pushforward[static_cast<std::size_t>(*iv)])(Vec{1, 1, 1}) == Vec{Scalar(1)});
}

TEST_CASE("counting on FinSet(3) and euler on the graded site pass SB1-SB5") {
  auto rc = check_sb(counting_instance(build_finset_site(3), ZZ));
  CHECK_MESSAGE(rc.passed(), rc.to_json().dump());
  CHECK(rc.status_of("SB4") == Status::Pass);
  auto re = check_sb(euler_instance(build_graded_site({{0}, {1}, {0, 0}, {0, 1}, {1, 1}, {0, 0, 1}}), ZZ));
  CHECK_MESSAGE(re.passed(), re.to_json().dump());
}

TEST_CASE("invariant functions and the fixed-point functor") {
  auto isite = build_involution_site(3, true);
  auto fsite = build_finset_site(3, true);
  auto bar = fixed_points_functor(isite, fsite);
  auto r = validate_bar_functor(bar);
  CHECK_MESSAGE(r.passed(), r.to_json().dump());
  for (CoeffRing ring : {F2, ZZ}) {
    auto d = invariant_instance(isite, ring);
    auto sb = check_sb(d);
    CHECK_MESSAGE(sb.passed(), sb.to_json().dump());
  }
  CHECK(orbits({1, 0, 2}) == std::vector<int>{0, 0, 1});
  // Swapped pair pushed to the point: 2 over Z, 0 over F2.
  auto x = isite->require_object("F0P1");
  auto f = map_to_point(*isite, x);
  CHECK((*invariant_instance(isite, ZZ).pushforward[static_cast<std::size_t>(f)])(Vec{1}) == Vec{Scalar(2)});
  CHECK((*invariant_instance(isite, F2).pushforward[static_cast<std::size_t>(f)])(Vec{1}) == Vec{Scalar(0)});
}

TEST_CASE("transform constructors") {
  auto site = build_finset_site(2);
  auto F = build_simple_theory(counting_instance(site, ZZ), "F");
  auto H = build_simple_theory(counting_instance(site, F2), "H");
  auto c = mod2_transform(F, H);
  const ObjId x = site->require_object("S2");
  CHECK(c.maps[static_cast<std::size_t>(x)](Vec{3, 5}) == Vec{Scalar(1), Scalar(1)});
  auto id = identity_transform(F);
  CHECK(id.maps[static_cast<std::size_t>(x)](Vec{3, 5}) == Vec{Scalar(3), Scalar(5)});
  auto Q = build_simple_theory(counting_instance(site, CoeffRing::rationals()), "Q");
  auto sc = scaled_transform(Q, Scalar(2));
  CHECK(sc.maps[static_cast<std::size_t>(x)](Vec{3, Scalar(1, 2)}) == Vec{Scalar(6), Scalar(1)});
  CHECK_THROWS_AS(scaled_transform(Q, Scalar(0)), Error);
  auto o = unit_orientation(*Q, Scalar(-1));
  CHECK(*o.e[static_cast<std::size_t>(site->final_object())] == Vec{Scalar(1)});
  CHECK(*o.e[static_cast<std::size_t>(x)] == Vec{Scalar(-1), Scalar(-1)});
}

TEST_CASE("smith transform restricts to fixed points") {
  auto isite = build_involution_site(3, true);
  auto fsite = build_finset_site(3, true);
  auto bar = fixed_points_functor(isite, fsite);
  auto F = build_simple_theory(invariant_instance(isite, F2), "F");
  auto H = build_simple_theory(counting_instance(fsite, F2), "H");
  auto c = smith_transform(F, H, bar);
  // F1P1: fixed point 0 and the pair {1, 2}; orbits 0, 1.
  const ObjId x = isite->require_object("F1P1");
  CHECK(c.maps[static_cast<std::size_t>(x)](Vec{1, 1}) == Vec{Scalar(1)});
  CHECK(c.maps[static_cast<std::size_t>(x)](Vec{0, 1}) == Vec{Scalar(0)});
  const ObjId y = isite->require_object("F0P1");
  CHECK(c.maps[static_cast<std::size_t>(y)](Vec{1}).empty());
}
