#pragma once

#include "bvw/site/site.hpp"
#include "bvw/zexact/linalg.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bvw {

enum class Flavor { Full, Weak, Partial, PartialWeak };
enum class Commutativity { None, Commutative, Skew };

std::string to_string(Flavor f);
std::string to_string(Commutativity c);
bool is_weak(Flavor f);
bool is_partial(Flavor f);

// Degrees of the ambient basis vectors of every group; modulus 0 for a
// Z-grading, 2 for a Z/2-grading. Cohomological convention: B^i.
struct Grading {
  int modulus = 0;
  std::vector<std::vector<int>> degrees;  // per morphism

  int reduce(int d) const;
  bool same(int a, int b) const { return reduce(a) == reduce(b); }
};

struct TheoryElement {
  MorId morphism = -1;
  Vec vector;
  std::optional<int> degree;
};

// Groups and operation tables over a site. Built mutably, then frozen; all
// query and element operations require a frozen theory.
class BivariantTheory {
 public:
  BivariantTheory(SitePtr site, CoeffRing ring, Flavor flavor, std::string name = "B");

  const Site& site() const { return *site_; }
  const SitePtr& site_ptr() const { return site_; }
  const CoeffRing& ring() const { return ring_; }
  Flavor flavor() const { return flavor_; }
  const std::string& name() const { return name_; }
  Commutativity commutativity() const { return commutativity_; }
  const std::optional<Grading>& grading() const { return grading_; }
  bool frozen() const { return frozen_; }

  // Morphisms carrying a group: all for full flavors, the allowable ones otherwise.
  bool defined(MorId f) const;

  void set_group(MorId f, Module m);
  void set_product(MorId f, MorId g, BilinearMap p);
  // Push-down along confined f: B(g * f) -> B(g).
  void set_pushdown(MorId f, MorId g, ModuleMap m);
  // Pull-back along a listed square: B(right) -> B(left).
  void set_pullback(SqId s, ModuleMap m);
  void set_unit(ObjId x, Vec v);
  void set_canonical_orientation(MorId f, Vec v);
  void set_grading(Grading g);
  void set_commutativity(Commutativity c) { commutativity_ = c; }
  void set_name(std::string n) { name_ = std::move(n); }

  // Checks shapes, completeness of the tables and well-definedness on
  // quotients. Throws InvalidArgument or IllFormedMap.
  void freeze();
  // Mutable copy of a frozen theory, for deriving variants.
  BivariantTheory unfrozen_copy() const;

  const Module& group(MorId f) const;
  bool has_group(MorId f) const;
  const BilinearMap* product_table(MorId f, MorId g) const;
  const ModuleMap* pushdown_table(MorId f, MorId g) const;
  const ModuleMap* pullback_table(SqId s) const;
  const std::optional<Vec>& unit(ObjId x) const;
  const std::optional<Vec>& canonical_orientation(MorId f) const;
  // Degree of each ambient basis vector of B(f); empty when ungraded.
  const std::vector<int>& degrees(MorId f) const;

  // Element operations. Errors: NotComposable, NotAllowable, NotConfined,
  // SquareNotListed, InvalidArgument for wrong vector lengths.
  Vec product(MorId f, const Vec& a, MorId g, const Vec& b) const;
  Vec pushdown(MorId f, MorId g, const Vec& a) const;
  Vec pullback(SqId s, const Vec& a) const;

  TheoryElement product(const TheoryElement& a, const TheoryElement& b) const;
  TheoryElement pushdown(MorId f, const TheoryElement& a) const;
  TheoryElement pullback(SqId s, const TheoryElement& a) const;

  // x -> x * theta as a map B(f) -> B(g * f), theta in B(g).
  ModuleMap right_product(MorId f, MorId g, const Vec& theta) const;
  // x -> theta * x as a map B(g) -> B(g * f), theta in B(f).
  ModuleMap left_product(MorId f, const Vec& theta, MorId g) const;

  Json to_json() const;

 private:
  void require_frozen() const;
  void require_mutable() const;
  std::size_t pair(MorId a, MorId b) const {
    return static_cast<std::size_t>(a) * site_->morphism_count() + static_cast<std::size_t>(b);
  }

  SitePtr site_;
  CoeffRing ring_;
  Flavor flavor_;
  std::string name_;
  Commutativity commutativity_ = Commutativity::None;
  std::optional<Grading> grading_;
  bool frozen_ = false;

  std::vector<std::optional<Module>> groups_;
  std::vector<std::optional<BilinearMap>> products_;
  std::vector<std::optional<ModuleMap>> pushdowns_;
  std::vector<std::optional<ModuleMap>> pullbacks_;
  std::vector<std::optional<Vec>> units_;
  std::vector<std::optional<Vec>> orientations_;
};

using TheoryPtr = std::shared_ptr<const BivariantTheory>;

}  // namespace bvw
