#pragma once

#include <doctest.h>


#include "bvw/instances/instances.hpp"
#include "bvw/site/builders.hpp"

#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

namespace bvw::testing {

inline const CoeffRing ZZ = CoeffRing::integers();

inline Vec iv(std::initializer_list<long long> xs) { return Vec(xs.begin(), xs.end()); }

inline MorId fn(const Site& s, const std::string& src, const std::string& tgt, const std::vector<int>& table) {
  auto f = s.model()->find_function(s.require_object(src), s.require_object(tgt), table);
  REQUIRE(f.has_value());
  return *f;
}

inline std::shared_ptr<BivariantTheory> counting(int n, CoeffRing ring = ZZ) {
  return build_simple_theory(counting_instance(build_finset_site(n), ring), "counting");
}

// Exterior algebra on two odd generators over the one-point site.
inline std::shared_ptr<BivariantTheory> exterior(Commutativity declared) {
  SiteBuilder b;
  b.add_object("pt");
  b.confine_all();
  b.allow_all();
  b.add_square(Square{0, 0, 0, 0});
  auto site = b.build();
  Module m = Module::free(ZZ, 4);  // 1, x, y, xy
  BilinearMap mul(m, m, m);
  const int deg[4] = {0, 1, 1, 2};
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, long long v) { mul.at(k, i, j) = Scalar(v); };
  for (std::size_t i = 0; i < 4; ++i) {
    set(0, i, i, 1);
    set(i, 0, i, 1);
  }
  set(1, 2, 3, 1);
  set(2, 1, 3, -1);
  auto t = std::make_shared<BivariantTheory>(site, ZZ, Flavor::Full, "exterior");
  t->set_group(0, m);
  t->set_product(0, 0, mul);
  t->set_pushdown(0, 0, ModuleMap(m, m, Matrix::identity(ZZ, 4)));
  t->set_pullback(0, ModuleMap(m, m, Matrix::identity(ZZ, 4)));
  t->set_unit(0, iv({1, 0, 0, 0}));
  t->set_grading(Grading{0, {{deg[0], deg[1], deg[2], deg[3]}}});
  t->set_commutativity(declared);
  t->freeze();
  return t;
}

}  // namespace bvw::testing
