#include "bvw/bivariant/theory.hpp"

#include "bvw/error.hpp"

namespace bvw {

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::Full: return "full";
    case Flavor::Weak: return "weak";
    case Flavor::Partial: return "partial";
    case Flavor::PartialWeak: return "partial_weak";
  }
  return "?";
}

std::string to_string(Commutativity c) {
  switch (c) {
    case Commutativity::None: return "none";
    case Commutativity::Commutative: return "commutative";
    case Commutativity::Skew: return "skew";
  }
  return "?";
}

bool is_weak(Flavor f) { return f == Flavor::Weak || f == Flavor::PartialWeak; }
bool is_partial(Flavor f) { return f == Flavor::Partial || f == Flavor::PartialWeak; }

int Grading::reduce(int d) const {
  if (modulus == 0) return d;
  int r = d % modulus;
  return r < 0 ? r + modulus : r;
}

BivariantTheory::BivariantTheory(SitePtr site, CoeffRing ring, Flavor flavor, std::string name)
    : site_(std::move(site)), ring_(ring), flavor_(flavor), name_(std::move(name)) {
  const std::size_t m = site_->morphism_count();
  groups_.resize(m);
  products_.resize(m * m);
  pushdowns_.resize(m * m);
  pullbacks_.resize(site_->square_count());
  units_.resize(site_->object_count());
  orientations_.resize(m);
}

bool BivariantTheory::defined(MorId f) const { return !is_partial(flavor_) || site_->allowable(f); }

void BivariantTheory::require_frozen() const {
  if (!frozen_) throw Error(ErrorKind::InvalidArgument, "theory " + name_ + " is not frozen");
}

void BivariantTheory::require_mutable() const {
  if (frozen_) throw Error(ErrorKind::InvalidArgument, "theory " + name_ + " is frozen");
}

void BivariantTheory::set_group(MorId f, Module m) {
  require_mutable();
  if (!(m.ring() == ring_)) throw Error(ErrorKind::UnsupportedRingPair, "group over " + m.ring().name());
  groups_.at(static_cast<std::size_t>(f)) = std::move(m);
}

void BivariantTheory::set_product(MorId f, MorId g, BilinearMap p) {
  require_mutable();
  products_.at(pair(f, g)) = std::move(p);
}

void BivariantTheory::set_pushdown(MorId f, MorId g, ModuleMap m) {
  require_mutable();
  pushdowns_.at(pair(f, g)) = std::move(m);
}

void BivariantTheory::set_pullback(SqId s, ModuleMap m) {
  require_mutable();
  pullbacks_.at(static_cast<std::size_t>(s)) = std::move(m);
}

void BivariantTheory::set_unit(ObjId x, Vec v) {
  require_mutable();
  units_.at(static_cast<std::size_t>(x)) = normalize_vec(ring_, std::move(v));
}

void BivariantTheory::set_canonical_orientation(MorId f, Vec v) {
  require_mutable();
  orientations_.at(static_cast<std::size_t>(f)) = normalize_vec(ring_, std::move(v));
}

void BivariantTheory::set_grading(Grading g) {
  require_mutable();
  grading_ = std::move(g);
}

void BivariantTheory::freeze() {
  if (frozen_) return;
  const Site& s = *site_;
  const auto m = static_cast<MorId>(s.morphism_count());
  auto bad = [&](const std::string& what) { throw Error(ErrorKind::InvalidArgument, name_ + ": " + what); };
  auto lab = [&](MorId f) { return s.morphism_label(f); };

  for (MorId f = 0; f < m; ++f) {
    const bool has = groups_[static_cast<std::size_t>(f)].has_value();
    if (defined(f) && !has) bad("no group for " + lab(f));
    if (!defined(f) && has) bad("group given for non-allowable " + lab(f));
  }
  for (MorId f = 0; f < m; ++f)
    for (MorId g = 0; g < m; ++g) {
      auto& p = products_[pair(f, g)];
      const MorId gf = s.target(f) == s.source(g) ? s.compose(g, f) : -1;
      const bool needed = gf >= 0 && defined(f) && defined(g) && defined(gf);
      if (!needed) {
        if (p) bad("product given for " + lab(f) + ", " + lab(g) + " outside the allowable data");
        continue;
      }
      if (!p) bad("no product for " + lab(f) + ", " + lab(g));
      if (!(p->left == *groups_[static_cast<std::size_t>(f)]) || !(p->right == *groups_[static_cast<std::size_t>(g)]) ||
          !(p->target == *groups_[static_cast<std::size_t>(gf)]))
        bad("product for " + lab(f) + ", " + lab(g) + " has the wrong modules");
      if (p->tensor.size() != p->target.rank() * p->left.rank() * p->right.rank())
        bad("product tensor for " + lab(f) + ", " + lab(g) + " has the wrong size");
      for (auto& e : p->tensor) e = ring_.normalize(e);
      require_well_defined(*p);
    }
  for (MorId f = 0; f < m; ++f)
    for (MorId g = 0; g < m; ++g) {
      auto& p = pushdowns_[pair(f, g)];
      const MorId gf = s.target(f) == s.source(g) ? s.compose(g, f) : -1;
      const bool needed = gf >= 0 && s.confined(f) && defined(g) && defined(gf);
      if (!needed) {
        if (p) bad("pushdown given for " + lab(f) + ", " + lab(g) + " outside the confined/allowable data");
        continue;
      }
      if (!p) bad("no pushdown for " + lab(f) + " over " + lab(g));
      if (!(p->source == *groups_[static_cast<std::size_t>(gf)]) || !(p->target == *groups_[static_cast<std::size_t>(g)]))
        bad("pushdown for " + lab(f) + " over " + lab(g) + " has the wrong modules");
      require_well_defined(*p);
    }
  for (SqId q = 0; q < static_cast<SqId>(s.square_count()); ++q) {
    auto& p = pullbacks_[static_cast<std::size_t>(q)];
    const Square& sq = s.square(q);
    const bool needed = defined(sq.right) && defined(sq.left);
    if (!needed) {
      if (p) bad("pullback given for square " + s.square_label(q) + " with non-allowable verticals");
      continue;
    }
    if (!p) bad("no pullback for square " + s.square_label(q));
    if (!(p->source == *groups_[static_cast<std::size_t>(sq.right)]) ||
        !(p->target == *groups_[static_cast<std::size_t>(sq.left)]))
      bad("pullback for square " + s.square_label(q) + " has the wrong modules");
    require_well_defined(*p);
  }
  bool any_unit = false;
  for (const auto& u : units_) any_unit = any_unit || u.has_value();
  if (any_unit)
    for (ObjId x = 0; x < static_cast<ObjId>(s.object_count()); ++x) {
      const auto& u = units_[static_cast<std::size_t>(x)];
      const MorId id = s.identity(x);
      if (!defined(id)) {
        if (u) bad("unit given for " + s.object_label(x) + " whose identity is not allowable");
        continue;
      }
      if (!u) bad("no unit for " + s.object_label(x));
      if (u->size() != groups_[static_cast<std::size_t>(id)]->rank()) bad("unit of " + s.object_label(x) + " has the wrong length");
    }
  for (MorId f = 0; f < m; ++f) {
    const auto& o = orientations_[static_cast<std::size_t>(f)];
    if (o && (!defined(f) || o->size() != groups_[static_cast<std::size_t>(f)]->rank()))
      bad("canonical orientation of " + lab(f) + " does not fit B(" + lab(f) + ")");
  }
  if (grading_) {
    if (grading_->modulus != 0 && grading_->modulus != 2) bad("grading modulus must be 0 or 2");
    grading_->degrees.resize(static_cast<std::size_t>(m));
    for (MorId f = 0; f < m; ++f)
      if (defined(f) && grading_->degrees[static_cast<std::size_t>(f)].size() != groups_[static_cast<std::size_t>(f)]->rank())
        bad("grading of " + lab(f) + " has the wrong length");
  }
  frozen_ = true;
}

BivariantTheory BivariantTheory::unfrozen_copy() const {
  BivariantTheory t = *this;
  t.frozen_ = false;
  return t;
}

bool BivariantTheory::has_group(MorId f) const {
  return f >= 0 && static_cast<std::size_t>(f) < groups_.size() && groups_[static_cast<std::size_t>(f)].has_value();
}

const Module& BivariantTheory::group(MorId f) const {
  if (!has_group(f))
    throw Error(ErrorKind::NotAllowable, name_ + " has no group over " + site_->morphism_label(f));
  return *groups_[static_cast<std::size_t>(f)];
}

const BilinearMap* BivariantTheory::product_table(MorId f, MorId g) const {
  const auto& p = products_.at(pair(f, g));
  return p ? &*p : nullptr;
}

const ModuleMap* BivariantTheory::pushdown_table(MorId f, MorId g) const {
  const auto& p = pushdowns_.at(pair(f, g));
  return p ? &*p : nullptr;
}

const ModuleMap* BivariantTheory::pullback_table(SqId s) const {
  const auto& p = pullbacks_.at(static_cast<std::size_t>(s));
  return p ? &*p : nullptr;
}

const std::optional<Vec>& BivariantTheory::unit(ObjId x) const { return units_.at(static_cast<std::size_t>(x)); }

const std::optional<Vec>& BivariantTheory::canonical_orientation(MorId f) const {
  return orientations_.at(static_cast<std::size_t>(f));
}

const std::vector<int>& BivariantTheory::degrees(MorId f) const {
  static const std::vector<int> none;
  if (!grading_) return none;
  return grading_->degrees.at(static_cast<std::size_t>(f));
}

namespace {

void require_length(const Vec& v, std::size_t n, const std::string& what) {
  if (v.size() != n)
    throw Error(ErrorKind::InvalidArgument,
                what + " has length " + std::to_string(v.size()) + ", expected " + std::to_string(n));
}

}  // namespace

Vec BivariantTheory::product(MorId f, const Vec& a, MorId g, const Vec& b) const {
  require_frozen();
  const Site& s = *site_;
  if (s.target(f) != s.source(g))
    throw Error(ErrorKind::NotComposable, s.morphism_label(f) + " then " + s.morphism_label(g));
  const MorId gf = s.require_compose(g, f);
  for (MorId k : {f, g, gf})
    if (!has_group(k)) throw Error(ErrorKind::NotAllowable, s.morphism_label(k) + " is not allowable");
  const BilinearMap* p = product_table(f, g);
  require_length(a, p->left.rank(), "left factor");
  require_length(b, p->right.rank(), "right factor");
  return p->target.reduce((*p)(a, b));
}

Vec BivariantTheory::pushdown(MorId f, MorId g, const Vec& a) const {
  require_frozen();
  const Site& s = *site_;
  if (!s.confined(f)) throw Error(ErrorKind::NotConfined, s.morphism_label(f) + " is not confined");
  if (s.target(f) != s.source(g))
    throw Error(ErrorKind::NotComposable, s.morphism_label(f) + " then " + s.morphism_label(g));
  if (!has_group(g)) throw Error(ErrorKind::NotAllowable, s.morphism_label(g) + " is not allowable");
  const MorId gf = s.require_compose(g, f);
  if (!has_group(gf)) throw Error(ErrorKind::NotAllowable, s.morphism_label(gf) + " is not allowable");
  const ModuleMap* p = pushdown_table(f, g);
  require_length(a, p->source.rank(), "pushdown argument");
  return p->target.reduce((*p)(a));
}

Vec BivariantTheory::pullback(SqId q, const Vec& a) const {
  require_frozen();
  const Site& s = *site_;
  if (q < 0 || static_cast<std::size_t>(q) >= s.square_count())
    throw Error(ErrorKind::SquareNotListed, "square index " + std::to_string(q));
  const Square& sq = s.square(q);
  for (MorId k : {sq.right, sq.left})
    if (!has_group(k)) throw Error(ErrorKind::NotAllowable, s.morphism_label(k) + " is not allowable");
  const ModuleMap* p = pullback_table(q);
  require_length(a, p->source.rank(), "pullback argument");
  return p->target.reduce((*p)(a));
}

namespace {

std::optional<int> add_degrees(const std::optional<Grading>& g, std::optional<int> a, std::optional<int> b) {
  if (!g || !a || !b) return std::nullopt;
  return g->reduce(*a + *b);
}

}  // namespace

TheoryElement BivariantTheory::product(const TheoryElement& a, const TheoryElement& b) const {
  Vec v = product(a.morphism, a.vector, b.morphism, b.vector);
  return {site_->compose(b.morphism, a.morphism), std::move(v), add_degrees(grading_, a.degree, b.degree)};
}

TheoryElement BivariantTheory::pushdown(MorId f, const TheoryElement& a) const {
  const Site& s = *site_;
  if (s.source(a.morphism) != s.source(f))
    throw Error(ErrorKind::NotComposable, "element over " + s.morphism_label(a.morphism) + " does not start at the source of " + s.morphism_label(f));
  MorId g = -1;
  for (MorId c : s.morphisms_from(s.target(f)))
    if (s.compose(c, f) == a.morphism && s.target(c) == s.target(a.morphism)) {
      g = c;
      break;
    }
  if (g < 0)
    throw Error(ErrorKind::NotComposable, s.morphism_label(a.morphism) + " does not factor through " + s.morphism_label(f));
  return {g, pushdown(f, g, a.vector), a.degree};
}

TheoryElement BivariantTheory::pullback(SqId q, const TheoryElement& a) const {
  if (q < 0 || static_cast<std::size_t>(q) >= site_->square_count())
    throw Error(ErrorKind::SquareNotListed, "square index " + std::to_string(q));
  const Square& sq = site_->square(q);
  if (sq.right != a.morphism)
    throw Error(ErrorKind::InvalidArgument, "element is not over the right edge of the square");
  return {sq.left, pullback(q, a.vector), a.degree};
}

ModuleMap BivariantTheory::right_product(MorId f, MorId g, const Vec& theta) const {
  require_frozen();
  const MorId gf = site_->require_compose(g, f);
  for (MorId k : {f, g, gf})
    if (!has_group(k)) throw Error(ErrorKind::NotAllowable, site_->morphism_label(k) + " is not allowable");
  const BilinearMap* p = product_table(f, g);
  require_length(theta, p->right.rank(), "orientation");
  return ModuleMap(p->left, p->target, p->right_multiplication(theta));
}

ModuleMap BivariantTheory::left_product(MorId f, const Vec& theta, MorId g) const {
  require_frozen();
  const MorId gf = site_->require_compose(g, f);
  for (MorId k : {f, g, gf})
    if (!has_group(k)) throw Error(ErrorKind::NotAllowable, site_->morphism_label(k) + " is not allowable");
  const BilinearMap* p = product_table(f, g);
  require_length(theta, p->left.rank(), "left factor");
  return ModuleMap(p->right, p->target, p->left_multiplication(theta));
}

Json BivariantTheory::to_json() const {
  const Site& s = *site_;
  Json groups = Json::array();
  for (MorId f = 0; f < static_cast<MorId>(s.morphism_count()); ++f) {
    if (!has_group(f)) continue;
    const Module& g = group(f);
    Json e{{"morphism", s.morphism_label(f)}, {"rank", g.rank()}};
    if (g.has_relations()) {
      Json rel = Json::array();
      for (std::size_t r = 0; r < g.relations().rows(); ++r) rel.push_back(vec_str(g.relations().row(r)));
      e["relations"] = rel;
    }
    if (grading_) {
      e["degrees"] = degrees(f);
      Json hom = Json::array();
      for (int d : degrees(f)) hom.push_back(-d);
      e["homological_degrees"] = hom;
    }
    groups.push_back(e);
  }
  Json j{{"name", name_},
         {"ring", ring_.name()},
         {"flavor", to_string(flavor_)},
         {"commutativity", to_string(commutativity_)},
         {"groups", groups}};
  if (grading_) j["grading_modulus"] = grading_->modulus;
  return j;
}

}  // namespace bvw
