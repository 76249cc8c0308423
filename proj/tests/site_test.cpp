#include <doctest.h>

#include "bvw/error.hpp"
#include "bvw/site/bar_functor.hpp"
#include "bvw/site/builders.hpp"
#include "bvw/site/validation.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <numeric>

using namespace bvw;

namespace {

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

long long factorial(long long n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Enumerates all functions {0..a-1} -> {0..c-1} as tables.
std::vector<std::vector<int>> all_functions(int a, int c) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(static_cast<std::size_t>(a), 0);
  if (a > 0 && c == 0) return out;
  for (;;) {
    out.push_back(t);
    int k = 0;
    while (k < a && t[static_cast<std::size_t>(k)] == c - 1) t[static_cast<std::size_t>(k++)] = 0;
    if (k == a) return out;
    ++t[static_cast<std::size_t>(k)];
  }
}

// Counts cartesian squares in the skeleton of sets of sizes `sizes`: one per
// cospan whose fiber product has a listed size, times the automorphisms of
// that fiber product.
long long expected_squares(const std::vector<int>& sizes) {
  long long total = 0;
  for (int x : sizes)
    for (int yp : sizes)
      for (int y : sizes)
        for (const auto& f : all_functions(x, y))
          for (const auto& g : all_functions(yp, y)) {
            int p = 0;
            for (int a : f)
              for (int c : g) p += (a == c);
            if (std::find(sizes.begin(), sizes.end(), p) != sizes.end()) total += factorial(p);
          }
  return total;
}

std::size_t fail_count(const Report& r) { return r.violations().size(); }

}  // namespace

TEST_CASE("one-object site validates") {
  SiteBuilder b;
  b.add_object("pt");
  b.confine_all();
  b.allow_all();
  b.add_square(Square{0, 0, 0, 0});
  auto s = b.build();
  CHECK(s->object_count() == 1);
  CHECK(s->morphism_count() == 1);
  CHECK(s->final_object() == 0);
  auto r = validate_site(*s);
  CHECK(r.passed());
  CHECK(fail_count(r) == 0);
  auto t = transpose(*s, 0);
  CHECK(t.is_independent);
  CHECK(t.square == s->square(0));
}

TEST_CASE("finset sites match direct enumeration") {
  for (int n = 1; n <= 3; ++n) {
    auto s = build_finset_site(n);
    long long morphisms = 0;
    std::vector<int> sizes(static_cast<std::size_t>(n));
    std::iota(sizes.begin(), sizes.end(), 1);
    for (int a : sizes)
      for (int c : sizes) morphisms += ipow(c, a);
    CHECK(s->object_count() == static_cast<std::size_t>(n));
    CHECK(s->morphism_count() == static_cast<std::size_t>(morphisms));
    CHECK(s->square_count() == static_cast<std::size_t>(expected_squares(sizes)));
  }
  CHECK(build_finset_site(2)->morphism_count() == 8);
  CHECK(build_finset_site(3)->morphism_count() == 56);
  auto e = build_finset_site(2, true);
  CHECK(e->object_count() == 3);
  CHECK(e->square_count() == static_cast<std::size_t>(expected_squares({0, 1, 2})));
}

TEST_CASE("finset max_size 1 is the point site") {
  auto s = build_finset_site(1);
  CHECK(s->object_count() == 1);
  CHECK(s->morphism_count() == 1);
  CHECK(s->square_count() == 1);
}

TEST_CASE("finset size guard") {
  CHECK_THROWS_AS(build_finset_site(0), Error);
  try {
    build_finset_site(5);
    FAIL("expected SizeTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SizeTooLarge);
  }
}

TEST_CASE("generated sites validate") {
  for (int n = 1; n <= 3; ++n) {
    auto r = validate_site(*build_finset_site(n));
    CHECK_MESSAGE(r.passed(), r.to_json().dump());
  }
  CHECK(validate_site(*build_finset_site(2, true)).passed());
  CHECK(validate_site(*build_involution_site(3, true)).passed());
  auto g = build_graded_site({{0}, {1}, {0, 0}, {0, 1}, {1, 1}});
  CHECK_MESSAGE(validate_site(*g).passed(), validate_site(*g).to_json().dump());
}

TEST_CASE("listed squares are cartesian by direct fiber enumeration") {
  auto s = build_finset_site(3);
  const auto* m = s->model();
  REQUIRE(m != nullptr);
  for (const auto& q : s->squares()) {
    const auto& top = m->table[static_cast<std::size_t>(q.top)];
    const auto& left = m->table[static_cast<std::size_t>(q.left)];
    const auto& f = m->table[static_cast<std::size_t>(q.right)];
    const auto& g = m->table[static_cast<std::size_t>(q.bottom)];
    std::set<std::pair<int, int>> image;
    for (std::size_t i = 0; i < top.size(); ++i) {
      CHECK(f[static_cast<std::size_t>(top[i])] == g[static_cast<std::size_t>(left[i])]);
      image.emplace(top[i], left[i]);
    }
    std::size_t fiber = 0;
    for (int a : f)
      for (int c : g) fiber += (a == c);
    CHECK(image.size() == top.size());
    CHECK(image.size() == fiber);
  }
}

TEST_CASE("transpose") {
  auto s = build_finset_site(2);
  for (SqId q = 0; q < static_cast<SqId>(s->square_count()); ++q) {
    auto t = transpose(*s, q);
    CHECK(t.is_independent);
    CHECK(transpose(t.square) == s->square(q));
  }
  SqId id_sq = s->require_square(Square{s->identity(1), s->identity(1), s->identity(1), s->identity(1)});
  CHECK(transpose(*s, id_sq).square == s->square(id_sq));
}

TEST_CASE("missing identity square is reported") {
  SiteBuilder b;
  ObjId pt = b.add_object("pt");
  ObjId x = b.add_object("X");
  MorId idp = b.add_morphism("id_pt", pt, pt);
  MorId idx = b.add_morphism("id_X", x, x);
  b.set_identity(pt, idp);
  b.set_identity(x, idx);
  MorId p = b.add_morphism("p", x, pt);
  b.confine_all();
  b.allow_all();
  b.set_final(pt);
  b.add_square(Square{idp, idp, idp, idp});
  b.add_square(Square{idx, idx, idx, idx});
  b.add_square(Square{p, idp, p, idx});
  // (id_X, p, id_pt, p) deliberately absent.
  auto r = validate_site(*b.build());
  CHECK_FALSE(r.passed());
  const auto* e = r.find("identity_squares");
  REQUIRE(e != nullptr);
  CHECK(e->status == Status::Fail);
  CHECK(e->witness.dump().find("\"p\"") != std::string::npos);

  b.add_square(Square{idx, p, idp, p});
  auto fixed = validate_site(*b.build());
  CHECK_MESSAGE(fixed.passed(), fixed.to_json().dump());
}

TEST_CASE("confined class must be closed under composition") {
  SiteBuilder b;
  ObjId pt = b.add_object("pt");
  ObjId x = b.add_object("X");
  ObjId y = b.add_object("Y");
  MorId a = b.add_morphism("a", x, y);
  MorId q = b.add_morphism("q", y, pt);
  MorId p = b.add_morphism("p", x, pt);
  b.set_compose(q, a, p);
  b.set_confined(a);
  b.set_confined(q);
  b.allow_all();
  b.set_final(pt);
  auto r = validate_site(*b.build());
  CHECK(r.status_of("confined_composition") == Status::Fail);
  CHECK(r.find("confined_composition")->witness.dump().find("\"p\"") != std::string::npos);
}

TEST_CASE("bar functors") {
  auto s = build_finset_site(2);
  auto id = identity_functor(s);
  CHECK(validate_bar_functor(id).passed());
  CHECK(validate_bar_functor(compose_functors(id, id)).passed());

  SiteBuilder b;
  b.add_object("pt");
  b.add_object("S2");
  auto dropped = b.build();
  // Same shape as the finset site of size 2, nothing confined.
  SiteBuilder full;
  full.add_object("pt");
  full.add_object("S2");
  for (MorId f = 0; f < static_cast<MorId>(s->morphism_count()); ++f)
    if (!s->is_identity(f)) full.add_morphism(s->morphism_label(f), s->source(f), s->target(f));
  auto t0 = full.build();
  BarFunctor bar{s, t0, {0, 1}, {}};
  for (MorId f = 0; f < static_cast<MorId>(s->morphism_count()); ++f)
    bar.morphism_map.push_back(t0->require_morphism(s->morphism_label(f)));
  auto r = validate_bar_functor(bar);
  CHECK(r.status_of("confined") == Status::Fail);
  CHECK(r.find("confined")->witness.contains("morphism"));
  (void)dropped;
}

TEST_CASE("validation timing on the larger generated sites") {
  auto t0 = std::chrono::steady_clock::now();
  auto s3 = build_finset_site(3);
  CHECK(validate_site(*s3).passed());
  auto g = build_graded_site({{0}, {1}, {0, 0}, {0, 1}, {1, 1}, {0, 0, 1}});
  CHECK(validate_site(*g).passed());
  auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  MESSAGE("finset(3): " << s3->square_count() << " squares; graded: " << g->morphism_count() << " morphisms, "
                        << g->square_count() << " squares; " << dt << " s");
}
