#pragma once

#include "bvw/report.hpp"
#include "bvw/site/site.hpp"

namespace bvw {

struct SquareTranspose {
  Square square;
  bool is_independent = false;
};

// Transposed square and whether the site lists it.
SquareTranspose transpose(const Site& site, SqId sq);

// Every closure and admissibility condition on a site, one entry per
// condition, each failing entry carrying its first witness.
Report validate_site(const Site& site);

}  // namespace bvw
