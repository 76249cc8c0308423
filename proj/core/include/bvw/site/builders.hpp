#pragma once

#include "bvw/site/site.hpp"

#include <string>
#include <vector>

namespace bvw {

// Finite set with optional per-point dimensions and an optional involution.
struct ConcreteObject {
  std::string label;
  int cardinality = 0;
  std::vector<int> dims;
  std::vector<int> involution;
};

// All structure-preserving functions between the given objects, all of them
// confined and allowable, and every cartesian square whose corner is one of
// the objects, listed once for each structure-preserving identification.
// Graded corners carry d(x, y') = d(x) + d(y') - d(g(y')).
SitePtr build_concrete_site(const std::vector<ConcreteObject>& objects, const std::string& final_label);

// Skeleton of finite sets of size 1..max_size ("pt", "S2", ...), plus the
// empty set "E0" when requested. Throws SizeTooLarge outside 1..4.
SitePtr build_finset_site(int max_size, bool with_empty = false);

// Graded finite sets given by dimension profiles; the profile {0} is "pt".
SitePtr build_graded_site(const std::vector<std::vector<int>>& profiles);

// Finite sets with an involution, up to max_points points: "F<t>P<s>" has t
// fixed points followed by s swapped pairs; "pt" is F1P0, "E0" the empty set.
SitePtr build_involution_site(int max_points, bool with_empty = false);

std::string graded_label(const std::vector<int>& dims);

}  // namespace bvw
