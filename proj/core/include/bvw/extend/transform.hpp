#pragma once

#include "bvw/bivariant/theory.hpp"
#include "bvw/site/bar_functor.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bvw {

// c_*: F_* -> H_* along a bar functor; one map F(X -> pt) -> H(Xbar -> pt)
// per object of F's site.
struct CovariantTransform {
  std::string name = "c";
  TheoryPtr F;
  TheoryPtr H;
  BarFunctor bar;
  std::vector<ModuleMap> maps;
};

// Distinguished e_Y in F_*(Y) for each orientable Y.
struct OrientationDatum {
  std::string name = "o";
  std::vector<std::optional<Vec>> e;  // per object of F's site

  bool orientable(ObjId y) const { return e.at(static_cast<std::size_t>(y)).has_value(); }
};

// Shapes of the maps and of the bar functor against both theories.
void require_transform_shapes(const CovariantTransform& c);

}  // namespace bvw
