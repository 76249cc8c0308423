#pragma once

#include "bvw/report.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace bvw {

using ObjId = int;
using MorId = int;
using SqId = int;

struct Morphism {
  std::string label;
  ObjId source = -1;
  ObjId target = -1;
};

// Pull-back square
//   X' --top--> X
//   |left       |right
//   Y' --bottom-> Y
// with right * top == bottom * left.
struct Square {
  MorId top = -1;
  MorId right = -1;
  MorId bottom = -1;
  MorId left = -1;

  friend bool operator==(const Square&, const Square&) = default;
};

// Swaps the roles of the vertical and horizontal edges.
inline Square transpose(const Square& s) { return Square{s.left, s.bottom, s.right, s.top}; }

// Optional realization of objects as finite sets and morphisms as functions.
struct ConcreteModel {
  std::vector<int> cardinality;                 // per object
  std::vector<std::vector<int>> dims;           // per object, empty when ungraded
  std::vector<std::vector<int>> involution;     // per object, empty when absent
  std::vector<std::vector<int>> table;          // per morphism

  std::optional<MorId> find_function(ObjId src, ObjId tgt, const std::vector<int>& table) const;
  std::map<std::tuple<ObjId, ObjId, std::vector<int>>, MorId> index;
};

class SiteBuilder;

class Site {
 public:
  std::size_t object_count() const { return objects_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }
  std::size_t square_count() const { return squares_.size(); }

  const std::string& object_label(ObjId x) const { return objects_.at(static_cast<std::size_t>(x)); }
  const Morphism& morphism(MorId f) const { return morphisms_.at(static_cast<std::size_t>(f)); }
  const std::string& morphism_label(MorId f) const { return morphism(f).label; }
  ObjId source(MorId f) const { return morphism(f).source; }
  ObjId target(MorId f) const { return morphism(f).target; }

  std::optional<ObjId> find_object(const std::string& label) const;
  std::optional<MorId> find_morphism(const std::string& label) const;
  ObjId require_object(const std::string& label) const;
  MorId require_morphism(const std::string& label) const;

  // g * f, or -1 when f and g are not composable or no composite is recorded.
  MorId compose(MorId g, MorId f) const {
    return compose_[static_cast<std::size_t>(g) * morphisms_.size() + static_cast<std::size_t>(f)];
  }
  // Throws NotComposable.
  MorId require_compose(MorId g, MorId f) const;
  MorId identity(ObjId x) const { return identity_.at(static_cast<std::size_t>(x)); }
  bool is_identity(MorId f) const;
  ObjId final_object() const { return final_; }
  MorId to_final(ObjId x) const { return to_final_.at(static_cast<std::size_t>(x)); }

  bool confined(MorId f) const { return confined_.at(static_cast<std::size_t>(f)); }
  bool allowable(MorId f) const { return allowable_.at(static_cast<std::size_t>(f)); }

  const Square& square(SqId s) const { return squares_.at(static_cast<std::size_t>(s)); }
  const std::vector<Square>& squares() const { return squares_; }
  std::optional<SqId> find_square(const Square& s) const;
  SqId require_square(const Square& s) const;
  const std::vector<SqId>& squares_with_right(MorId f) const { return by_right_.at(static_cast<std::size_t>(f)); }
  const std::vector<SqId>& squares_with_bottom(MorId g) const { return by_bottom_.at(static_cast<std::size_t>(g)); }
  std::string square_label(SqId s) const;
  Json square_json(const Square& s) const;

  const std::vector<MorId>& hom(ObjId a, ObjId b) const {
    return hom_[static_cast<std::size_t>(a) * objects_.size() + static_cast<std::size_t>(b)];
  }
  const std::vector<MorId>& morphisms_into(ObjId b) const { return into_.at(static_cast<std::size_t>(b)); }
  const std::vector<MorId>& morphisms_from(ObjId a) const { return from_.at(static_cast<std::size_t>(a)); }

  const ConcreteModel* model() const { return model_ ? &*model_ : nullptr; }

  Json to_json() const;

 private:
  friend class SiteBuilder;
  Site() = default;

  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<MorId> compose_;
  std::vector<MorId> identity_;
  ObjId final_ = -1;
  std::vector<MorId> to_final_;
  std::vector<bool> confined_;
  std::vector<bool> allowable_;
  std::vector<Square> squares_;
  std::unordered_map<std::uint64_t, SqId> square_index_;
  std::vector<std::vector<SqId>> by_right_;
  std::vector<std::vector<SqId>> by_bottom_;
  std::vector<std::vector<MorId>> hom_;
  std::vector<std::vector<MorId>> into_;
  std::vector<std::vector<MorId>> from_;
  std::map<std::string, ObjId> object_lookup_;
  std::map<std::string, MorId> morphism_lookup_;
  std::optional<ConcreteModel> model_;
};

using SitePtr = std::shared_ptr<const Site>;

// The unique morphism X -> pt. Throws InvalidArgument when the hom set is
// not a singleton.
MorId map_to_point(const Site& s, ObjId x);

// Assembles a site. Identities are created automatically as "id_<object>"
// unless supplied, and their composites are filled in. build() checks only
// index ranges and typing; closure properties belong to validate_site.
class SiteBuilder {
 public:
  ObjId add_object(const std::string& label);
  MorId add_morphism(const std::string& label, ObjId source, ObjId target);
  MorId add_morphism(const std::string& label, const std::string& source, const std::string& target);
  void set_identity(ObjId x, MorId f);
  void set_compose(MorId g, MorId f, MorId h);
  void set_final(ObjId pt);
  void set_confined(MorId f, bool on = true);
  void set_allowable(MorId f, bool on = true);
  // Applied at build time, so they also cover automatic identities.
  void confine_all();
  void allow_all();
  SqId add_square(const Square& s);
  void set_model(ConcreteModel m);

  std::optional<ObjId> find_object(const std::string& label) const;
  std::optional<MorId> find_morphism(const std::string& label) const;
  std::size_t morphism_count() const { return morphisms_.size(); }
  void rename_morphism(MorId f, const std::string& label);
  void rename_object(ObjId x, const std::string& label);

  SitePtr build() const;

 private:
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::map<std::pair<MorId, MorId>, MorId> compose_;
  std::map<ObjId, MorId> identity_;
  std::optional<ObjId> final_;
  std::vector<bool> confined_;
  std::vector<bool> allowable_;
  std::vector<Square> squares_;
  std::optional<ConcreteModel> model_;
  bool confine_all_ = false;
  bool allow_all_ = false;
};

}  // namespace bvw
