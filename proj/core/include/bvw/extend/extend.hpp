#pragma once

#include "bvw/bivariant/theory.hpp"
#include "bvw/extend/transform.hpp"
#include "bvw/report.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace bvw {

// h in H_*(Ybar) with x -> x * h invertible on H(f') for every f' into Ybar.
struct OrientationCertificate {
  ObjId object = -1;  // in H's site
  Vec h;
  bool strong = false;
  std::map<MorId, ModuleMap> inverses;  // (x -> x * h)^-1 per morphism into the object
  Json witness;                         // first morphism where the action is not invertible

  Json to_json(const Site& s) const;
};

OrientationCertificate is_strong_orientation(const BivariantTheory& H, ObjId y, const Vec& h);

// c_* o f_* == fbar_* o c_* for every confined f, on bases.
Report check_naturality(const CovariantTransform& c);
// c_*(1_pt) is the unit of H_*(ptbar).
Report check_unit_condition(const CovariantTransform& c);

struct MembershipResult {
  bool member = true;
  Json witness;                   // first violated condition
  std::vector<Json> not_evaluable;
};

struct FprimeResult {
  Submodule module;  // in the ambient coordinates of F(f)
  std::uint64_t conditions = 0;
  std::vector<Json> not_evaluable;
};

// The transformation gamma on o-allowable maps, built from c_* and e_Y.
class Extender {
 public:
  Extender(CovariantTransform c, OrientationDatum o);

  const CovariantTransform& transform() const { return c_; }
  const OrientationDatum& orientation() const { return o_; }
  const BivariantTheory& F() const { return *c_.F; }
  const BivariantTheory& H() const { return *c_.H; }

  // Allowable in F with orientable target.
  bool o_allowable(MorId f) const;
  std::vector<MorId> o_allowable_morphisms() const;
  // Certificate for c_*(e_Y), or null when Y is not orientable.
  const OrientationCertificate* certificate(ObjId y) const;

  // Throws NotAllowable, NotOrientable, MissingCertificate.
  const ModuleMap& gamma(MorId f) const;
  // Copy with gamma_f replaced; for exercising the checkers.
  Extender with_gamma(MorId f, ModuleMap m) const;

  // Throws NotOAllowable.
  MembershipResult membership(MorId f, const Vec& alpha) const;
  FprimeResult compute_Fprime(MorId f) const;

  Vec c(ObjId x, const Vec& a) const;

 private:
  // One linear condition on F(f) per (square, beta) and per square.
  struct Condition {
    SqId square;
    std::optional<std::size_t> beta;  // set for the product condition
    ModuleMap lhs_minus_rhs;
  };
  std::vector<Condition> conditions(MorId f, std::vector<Json>& not_evaluable) const;
  Json condition_json(MorId f, const Condition& k) const;

  CovariantTransform c_;
  OrientationDatum o_;
  std::vector<std::optional<OrientationCertificate>> certs_;
  std::vector<std::optional<ModuleMap>> gamma_;
};

// gamma_f per the defining equation. Same errors as Extender::gamma.
ModuleMap define_gamma(const Extender& e, MorId f);

// c_*(beta x alpha) == c_*(beta) xbar c_*(alpha) over squares on X -> pt and
// Y' -> pt with o-allowable left edge.
Report check_external(const Extender& e);

// gbar_* o gamma_f == gamma_h o g_* for confined g and o-allowable h.
Report check_pushdown_compat(const Extender& e);

struct ExtensionResult {
  std::shared_ptr<const Extender> engine;
  std::vector<MorId> o_allowable;
  std::vector<std::optional<FprimeResult>> Fprime;  // per morphism of F's site
  Report hypotheses;
  Report ledger;
  bool external_products = false;

  const ModuleMap& gamma(MorId f) const { return engine->gamma(f); }
  const Submodule& Fprime_of(MorId f) const;
  Json to_json() const;
};

// Throws NaturalityViolation, OrientationViolation.
ExtensionResult run_extension(const CovariantTransform& c, const OrientationDatum& o);

struct GammaCandidate {
  std::string name = "candidate";
  std::vector<std::optional<Submodule>> domain;  // per morphism of F's site
  std::vector<std::optional<ModuleMap>> gamma;
};

GammaCandidate candidate_from(const ExtensionResult& r);
Report check_maximality(const ExtensionResult& r, const GammaCandidate& candidate);

// Solves c_*(e_Y) == c(Ybar) * [Ybar] in H(id_Ybar), then checks
// gamma_f(a) * [Ybar] == fbar^*(c(Ybar)^-1) * c_*(a * e_Y) on F'(f) for
// o-allowable f into Y. Throws NotCommutative, NotInvertible,
// MissingCertificate, NotOrientable.
Report check_explicit_description(const ExtensionResult& r, ObjId y, const Vec& fundamental);

// For f: X -> Y, g: Y -> Z in H with strong [Y], [Z]: (a * b) * [Z] equals
// the sign-corrected cap of f^*(b') with a * [Y], where b' * [Y] == b * [Z].
// When Z is final, also the reduced product and its associativity. Throws
// NotCommutative, OddDegreeOrientation, MissingCertificate.
Report reduce_product(const BivariantTheory& H, MorId f, MorId g, const Vec& orient_y, const Vec& orient_z);

struct RelativeOrientationData {
  MorId f = -1;  // in F's site
  Vec e_f, e_x, e_y;
  Vec fbar_class, fundamental_x, fundamental_y;
  Vec tangent_x, tangent_y;  // in H(id_Xbar), H(id_Ybar)
};

// gamma_f(e_f) == c(T_fbar) * [fbar] with c(T_fbar) = fbar^*(c(TYbar))^-1 . c(TXbar).
// Throws HypothesisFailure, NotInvertible.
Report check_relative_orientation(const ExtensionResult& r, const RelativeOrientationData& d);

// c_* o f^* == (t . -) o fbar^! o c_* on F_*(Y), with f^* and fbar^! the
// products with the canonical orientations, and gamma_f(1_f) == t * [fbar].
Report check_verdier_rr(const Extender& e, MorId f, const Vec& tangent);

}  // namespace bvw
