#pragma once

#include "bvw/bivariant/theory.hpp"
#include "bvw/report.hpp"

#include <optional>
#include <vector>

namespace bvw {

struct RingData {
  Module module;
  BilinearMap multiplication;
  Vec unit;
};

// Contravariant ring functor with push-forward along confined maps.
struct SimpleFunctorData {
  SitePtr site;
  CoeffRing ring = CoeffRing::integers();
  std::vector<RingData> rings;                        // per object
  std::vector<ModuleMap> pullback;                    // per morphism f: X -> Y, F(Y) -> F(X)
  std::vector<std::optional<ModuleMap>> pushforward;  // per confined morphism, F(X) -> F(Y)
  bool two_sided = true;
};

// SB1 ring functor, SB2 confined functoriality, SB3 right projection
// formula, SB4 base change, SB5 two-sided projection formula plus transpose
// closure of the squares (skipped when two_sided is false). Also reports
// whether every ring is commutative.
Report check_sb(const SimpleFunctorData& d);

// B(f: X -> Y) = F(X), a * b = a cup f^*(b), push-down f_*, pull-back along
// the top edge, units and canonical orientations 1_f = 1_X. Full flavor when
// two-sided, weak otherwise. Throws SBViolation when SB1-SB4 fail.
std::shared_ptr<BivariantTheory> build_simple_theory(const SimpleFunctorData& d, const std::string& name = "F");

}  // namespace bvw
