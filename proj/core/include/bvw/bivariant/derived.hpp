#pragma once

#include "bvw/bivariant/theory.hpp"
#include "bvw/report.hpp"

#include <optional>
#include <vector>

namespace bvw {

// F_*(X) = B(X -> pt) with push-forward along confined maps.
struct CovariantPart {
  SitePtr site;
  std::vector<Module> modules;                      // per object
  std::vector<std::optional<ModuleMap>> pushforward;  // per confined morphism
};

// F^*(X) = B(id_X) with cup product and pull-back along maps g for which the
// square (g, id_X, g, id_X') is listed.
struct ContravariantPart {
  SitePtr site;
  std::vector<Module> modules;
  std::vector<BilinearMap> cup;
  std::vector<Vec> units;  // empty vectors when the theory has no units
  std::vector<std::optional<ModuleMap>> pullback;
};

CovariantPart covariant_part(const BivariantTheory& t);
// Throws NotAllowable when some identity is not allowable.
ContravariantPart contravariant_part(const BivariantTheory& t);

// Identity and composition laws of both parts.
Report check_covariant_part(const CovariantPart& c);
Report check_contravariant_part(const ContravariantPart& c);

// a in F^*(X), b in F_*(X): a * b.
Vec cap(const BivariantTheory& t, ObjId x, const Vec& a, const Vec& b);
// Square (g', X -> pt, Y' -> pt, f'): beta x alpha := g^*(alpha) * beta in F_*(X').
Vec external(const BivariantTheory& t, SqId sq, const Vec& beta, const Vec& alpha);
// Square with bottom i: pt -> Y and right edge f: pull a back to F_*(X_pt).
Vec restrict_to_fiber(const BivariantTheory& t, SqId sq, const Vec& a);
// theta over f: X -> Y, a in F_*(Y): theta * a in F_*(X).
Vec gysin_pull(const BivariantTheory& t, MorId f, const Vec& theta, const Vec& a);
// theta over confined f: X -> Y, b in F^*(X): f_*(b * theta) in F^*(Y).
Vec gysin_push(const BivariantTheory& t, MorId f, const Vec& theta, const Vec& b);
// a over f: X -> Y, c in F^*(Y): a * c over f.
Vec right_action(const BivariantTheory& t, MorId f, const Vec& a, const Vec& c);

// Gysin functoriality on composable pairs: (theta * theta')^* == theta^* theta'^*
// and, along confined maps, (theta * theta')_* == theta'_* theta_*, on bases.
// The right action is also checked to be unitary and associative.
Report check_derived(const BivariantTheory& t);

}  // namespace bvw
