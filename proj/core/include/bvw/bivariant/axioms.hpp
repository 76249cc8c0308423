#pragma once

#include "bvw/bivariant/theory.hpp"
#include "bvw/report.hpp"

namespace bvw {

// A1, A2, A3, A12, A13, A23, A123, the unit laws and, when graded, degree
// bookkeeping. Every quantifier runs over the site's finite data and the
// ambient bases; the first failing tuple in enumeration order is the witness.
// Weak flavors report A123 as skipped.
Report check_axioms(const BivariantTheory& t);

// g^*(a) * b == +-f^*(b) * a over every listed square whose transpose is
// listed. Skew signs use the declared degrees.
Report check_commutativity(const BivariantTheory& t);

// Degree rules only: product adds degrees, push-down and pull-back keep them.
Report check_grading(const BivariantTheory& t);

}  // namespace bvw
