#pragma once

#include "bvw/extend/transform.hpp"
#include "bvw/simple/simple.hpp"
#include "bvw/site/bar_functor.hpp"

#include <string>
#include <vector>

namespace bvw {

struct GradedFinSet {
  std::vector<std::string> points;
  std::vector<int> dim;
};

// Functions on points, pointwise product, pull-back by composition,
// push-forward by fiber sums. Needs a site with a concrete model.
SimpleFunctorData counting_instance(const SitePtr& site, CoeffRing ring);

// As counting, with push-forward (f_* a)(y) = sum over x in f^-1(y) of
// (-1)^(d(x) - d(y)) a(x). Needs a graded concrete model.
SimpleFunctorData euler_instance(const SitePtr& site, CoeffRing ring);

// sum over x of (-1)^d(x) a(x).
Scalar euler_integral(const GradedFinSet& x, const Vec& alpha, CoeffRing ring);

// Involution-invariant functions, in the basis of orbit indicators. Needs a
// site whose concrete model carries involutions.
SimpleFunctorData invariant_instance(const SitePtr& site, CoeffRing ring);

// Orbit index of every point, orbits numbered by smallest point.
std::vector<int> orbits(const std::vector<int>& involution);

// X -> X^sigma into a finite-set skeleton containing every fixed-point count.
BarFunctor fixed_points_functor(const SitePtr& involution_site, const SitePtr& finset_site);

// c_* between simple theories on one site; maps are given per object.
CovariantTransform identity_transform(const TheoryPtr& F);
CovariantTransform mod2_transform(const TheoryPtr& F_integers, const TheoryPtr& H_mod2);
CovariantTransform scaled_transform(const TheoryPtr& F, const Scalar& u);
// Restriction of invariant functions to fixed points.
CovariantTransform smith_transform(const TheoryPtr& F_invariant, const TheoryPtr& H_counting, const BarFunctor& bar);

// e_Y = k * 1_Y on every object except pt, where e_pt = 1_pt.
OrientationDatum unit_orientation(const BivariantTheory& F, const Scalar& k = Scalar(1));

}  // namespace bvw
