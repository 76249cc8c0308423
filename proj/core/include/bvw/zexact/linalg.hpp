#pragma once

#include "bvw/zexact/module.hpp"

#include <optional>
#include <vector>

namespace bvw {

struct SmithForm {
  Matrix d;
  Matrix u;
  Matrix v;
  std::size_t rank = 0;
};

// u * m * v == d with u, v invertible over the ring of m and d diagonal.
// Over Z the diagonal is nonnegative with d1 | d2 | ...; over a field every
// nonzero diagonal entry is 1.
SmithForm diagonalize(const Matrix& m);

// Integer-only entry point; throws InvalidArgument for other rings.
SmithForm smith_normal_form(const Matrix& m);

// Generators of {x : m * x == 0} in the ring of m.
std::vector<Vec> nullspace(const Matrix& m);

// Some x with m * x == b, free parameters set to zero in the diagonal basis.
std::optional<Vec> solve_matrix(const Matrix& m, const Vec& b);

bool well_defined(const ModuleMap& map);
void require_well_defined(const ModuleMap& map);

// x with map(x) == b in the target quotient.
std::optional<Vec> solve(const ModuleMap& map, const Vec& b);

struct IsoResult {
  bool is_iso = false;
  std::optional<ModuleMap> inverse;
};

// Throws IllFormedMap when the matrix does not respect the relations.
IsoResult is_isomorphism(const ModuleMap& map);

// Submodule of the source ambient space mapping to zero in the target quotient.
Submodule kernel(const ModuleMap& map);

Submodule intersect(const std::vector<Submodule>& parts);

// Same module with relations replaced by their canonical echelon rows.
Module normalize(const Module& m);

// Composition b after a.
ModuleMap compose(const ModuleMap& b, const ModuleMap& a);

}  // namespace bvw

namespace bvw {

// Relations of either factor multiply into the target relations.
bool well_defined(const BilinearMap& map);
void require_well_defined(const BilinearMap& map);

}  // namespace bvw
