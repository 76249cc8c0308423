#include "bvw/site/site.hpp"

#include "bvw/error.hpp"

#include <algorithm>

namespace bvw {

namespace {

std::uint64_t square_key(const Square& s) {
  auto part = [](MorId m) { return static_cast<std::uint64_t>(static_cast<std::uint16_t>(m)); };
  return part(s.top) << 48 | part(s.right) << 32 | part(s.bottom) << 16 | part(s.left);
}

}  // namespace

std::optional<MorId> ConcreteModel::find_function(ObjId src, ObjId tgt, const std::vector<int>& t) const {
  auto it = index.find({src, tgt, t});
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::optional<ObjId> Site::find_object(const std::string& label) const {
  auto it = object_lookup_.find(label);
  if (it == object_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<MorId> Site::find_morphism(const std::string& label) const {
  auto it = morphism_lookup_.find(label);
  if (it == morphism_lookup_.end()) return std::nullopt;
  return it->second;
}

ObjId Site::require_object(const std::string& label) const {
  auto x = find_object(label);
  if (!x) throw Error(ErrorKind::InvalidArgument, "unknown object '" + label + "'");
  return *x;
}

MorId Site::require_morphism(const std::string& label) const {
  auto f = find_morphism(label);
  if (!f) throw Error(ErrorKind::InvalidArgument, "unknown morphism '" + label + "'");
  return *f;
}

MorId Site::require_compose(MorId g, MorId f) const {
  MorId h = target(f) == source(g) ? compose(g, f) : -1;
  if (h < 0)
    throw Error(ErrorKind::NotComposable, morphism_label(g) + " * " + morphism_label(f));
  return h;
}

bool Site::is_identity(MorId f) const { return identity(source(f)) == f; }

std::optional<SqId> Site::find_square(const Square& s) const {
  if (s.top < 0 || s.right < 0 || s.bottom < 0 || s.left < 0) return std::nullopt;
  auto it = square_index_.find(square_key(s));
  if (it == square_index_.end()) return std::nullopt;
  return it->second;
}

SqId Site::require_square(const Square& s) const {
  auto id = find_square(s);
  if (!id) throw Error(ErrorKind::SquareNotListed, square_json(s).dump());
  return *id;
}

std::string Site::square_label(SqId s) const {
  const Square& q = square(s);
  return "[" + morphism_label(q.top) + " " + morphism_label(q.right) + " " + morphism_label(q.bottom) + " " +
         morphism_label(q.left) + "]";
}

Json Site::square_json(const Square& s) const {
  auto name = [&](MorId m) { return m >= 0 ? Json(morphism_label(m)) : Json(nullptr); };
  return Json{{"top", name(s.top)}, {"right", name(s.right)}, {"bottom", name(s.bottom)}, {"left", name(s.left)}};
}

Json Site::to_json() const {
  Json j;
  j["objects"] = objects_;
  j["final"] = objects_.at(static_cast<std::size_t>(final_));
  Json ms = Json::array();
  for (std::size_t f = 0; f < morphisms_.size(); ++f) {
    ms.push_back(Json{{"label", morphisms_[f].label},
                      {"source", objects_[static_cast<std::size_t>(morphisms_[f].source)]},
                      {"target", objects_[static_cast<std::size_t>(morphisms_[f].target)]},
                      {"confined", static_cast<bool>(confined_[f])},
                      {"allowable", static_cast<bool>(allowable_[f])}});
  }
  j["morphisms"] = std::move(ms);
  Json comp = Json::array();
  const std::size_t m = morphisms_.size();
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f) {
      MorId h = compose_[g * m + f];
      if (h >= 0)
        comp.push_back(Json::array({morphisms_[g].label, morphisms_[f].label,
                                    morphisms_[static_cast<std::size_t>(h)].label}));
    }
  j["compose"] = std::move(comp);
  Json sq = Json::array();
  for (const auto& s : squares_) sq.push_back(square_json(s));
  j["squares"] = std::move(sq);
  return j;
}

ObjId SiteBuilder::add_object(const std::string& label) {
  if (find_object(label)) throw Error(ErrorKind::InvalidArgument, "duplicate object '" + label + "'");
  objects_.push_back(label);
  return static_cast<ObjId>(objects_.size() - 1);
}

MorId SiteBuilder::add_morphism(const std::string& label, ObjId source, ObjId target) {
  if (find_morphism(label)) throw Error(ErrorKind::InvalidArgument, "duplicate morphism '" + label + "'");
  auto n = static_cast<ObjId>(objects_.size());
  if (source < 0 || source >= n || target < 0 || target >= n)
    throw Error(ErrorKind::InvalidArgument, "morphism '" + label + "' has an unknown endpoint");
  morphisms_.push_back({label, source, target});
  confined_.push_back(false);
  allowable_.push_back(false);
  return static_cast<MorId>(morphisms_.size() - 1);
}

MorId SiteBuilder::add_morphism(const std::string& label, const std::string& source, const std::string& target) {
  auto s = find_object(source), t = find_object(target);
  if (!s) throw Error(ErrorKind::InvalidArgument, "unknown object '" + source + "'");
  if (!t) throw Error(ErrorKind::InvalidArgument, "unknown object '" + target + "'");
  return add_morphism(label, *s, *t);
}

void SiteBuilder::set_identity(ObjId x, MorId f) { identity_[x] = f; }

void SiteBuilder::set_compose(MorId g, MorId f, MorId h) { compose_[{g, f}] = h; }

void SiteBuilder::set_final(ObjId pt) { final_ = pt; }

void SiteBuilder::set_confined(MorId f, bool on) { confined_.at(static_cast<std::size_t>(f)) = on; }

void SiteBuilder::set_allowable(MorId f, bool on) { allowable_.at(static_cast<std::size_t>(f)) = on; }

void SiteBuilder::confine_all() { confine_all_ = true; }

void SiteBuilder::allow_all() { allow_all_ = true; }

SqId SiteBuilder::add_square(const Square& s) {
  squares_.push_back(s);
  return static_cast<SqId>(squares_.size() - 1);
}

void SiteBuilder::set_model(ConcreteModel m) { model_ = std::move(m); }

std::optional<ObjId> SiteBuilder::find_object(const std::string& label) const {
  auto it = std::find(objects_.begin(), objects_.end(), label);
  if (it == objects_.end()) return std::nullopt;
  return static_cast<ObjId>(it - objects_.begin());
}

std::optional<MorId> SiteBuilder::find_morphism(const std::string& label) const {
  for (std::size_t f = 0; f < morphisms_.size(); ++f)
    if (morphisms_[f].label == label) return static_cast<MorId>(f);
  return std::nullopt;
}

void SiteBuilder::rename_morphism(MorId f, const std::string& label) {
  auto other = find_morphism(label);
  if (other && *other != f) throw Error(ErrorKind::InvalidArgument, "duplicate morphism '" + label + "'");
  morphisms_.at(static_cast<std::size_t>(f)).label = label;
}

void SiteBuilder::rename_object(ObjId x, const std::string& label) {
  auto other = find_object(label);
  if (other && *other != x) throw Error(ErrorKind::InvalidArgument, "duplicate object '" + label + "'");
  objects_.at(static_cast<std::size_t>(x)) = label;
}

SitePtr SiteBuilder::build() const {
  SiteBuilder b = *this;
  for (ObjId x = 0; x < static_cast<ObjId>(b.objects_.size()); ++x) {
    if (b.identity_.count(x)) continue;
    MorId id = b.add_morphism("id_" + b.objects_[static_cast<std::size_t>(x)], x, x);
    b.identity_[x] = id;
    b.confined_[static_cast<std::size_t>(id)] = true;
  }
  if (b.confine_all_) std::fill(b.confined_.begin(), b.confined_.end(), true);
  if (b.allow_all_) std::fill(b.allowable_.begin(), b.allowable_.end(), true);
  if (b.morphisms_.size() >= 0xFFFF) throw Error(ErrorKind::SizeTooLarge, "too many morphisms");

  std::shared_ptr<Site> s(new Site());
  s->objects_ = b.objects_;
  s->morphisms_ = b.morphisms_;
  const std::size_t n = s->objects_.size(), m = s->morphisms_.size();
  for (std::size_t x = 0; x < n; ++x) s->object_lookup_[s->objects_[x]] = static_cast<ObjId>(x);
  for (std::size_t f = 0; f < m; ++f) s->morphism_lookup_[s->morphisms_[f].label] = static_cast<MorId>(f);

  s->identity_.assign(n, -1);
  for (auto [x, f] : b.identity_) {
    const Morphism& mf = s->morphisms_.at(static_cast<std::size_t>(f));
    if (mf.source != x || mf.target != x)
      throw Error(ErrorKind::InvalidArgument, "identity '" + mf.label + "' is not an endomorphism");
    s->identity_[static_cast<std::size_t>(x)] = f;
  }

  s->compose_.assign(m * m, -1);
  for (auto [gf, h] : b.compose_) {
    auto [g, f] = gf;
    auto check = [&](MorId k) {
      if (k < 0 || static_cast<std::size_t>(k) >= m) throw Error(ErrorKind::InvalidArgument, "compose entry out of range");
    };
    check(g);
    check(f);
    check(h);
    s->compose_[static_cast<std::size_t>(g) * m + static_cast<std::size_t>(f)] = h;
  }
  for (std::size_t f = 0; f < m; ++f) {
    const Morphism& mf = s->morphisms_[f];
    auto idt = static_cast<std::size_t>(s->identity_[static_cast<std::size_t>(mf.target)]);
    auto ids = static_cast<std::size_t>(s->identity_[static_cast<std::size_t>(mf.source)]);
    if (s->compose_[idt * m + f] < 0) s->compose_[idt * m + f] = static_cast<MorId>(f);
    if (s->compose_[f * m + ids] < 0) s->compose_[f * m + ids] = static_cast<MorId>(f);
  }

  if (b.final_) {
    s->final_ = *b.final_;
  } else if (auto pt = b.find_object("pt")) {
    s->final_ = *pt;
  } else {
    throw Error(ErrorKind::InvalidArgument, "site has no final object");
  }

  s->hom_.assign(n * n, {});
  s->into_.assign(n, {});
  s->from_.assign(n, {});
  for (std::size_t f = 0; f < m; ++f) {
    const Morphism& mf = s->morphisms_[f];
    s->hom_[static_cast<std::size_t>(mf.source) * n + static_cast<std::size_t>(mf.target)].push_back(static_cast<MorId>(f));
    s->into_[static_cast<std::size_t>(mf.target)].push_back(static_cast<MorId>(f));
    s->from_[static_cast<std::size_t>(mf.source)].push_back(static_cast<MorId>(f));
  }
  s->to_final_.assign(n, -1);
  for (std::size_t x = 0; x < n; ++x) {
    const auto& h = s->hom(static_cast<ObjId>(x), s->final_);
    if (!h.empty()) s->to_final_[x] = static_cast<ObjId>(x) == s->final_ ? s->identity_[x] : h.front();
  }

  s->confined_ = b.confined_;
  s->allowable_ = b.allowable_;

  s->by_right_.assign(m, {});
  s->by_bottom_.assign(m, {});
  for (const Square& q : b.squares_) {
    for (MorId e : {q.top, q.right, q.bottom, q.left})
      if (e < 0 || static_cast<std::size_t>(e) >= m) throw Error(ErrorKind::InvalidArgument, "square edge out of range");
    if (s->square_index_.count(square_key(q))) continue;
    auto id = static_cast<SqId>(s->squares_.size());
    s->squares_.push_back(q);
    s->square_index_[square_key(q)] = id;
    s->by_right_[static_cast<std::size_t>(q.right)].push_back(id);
    s->by_bottom_[static_cast<std::size_t>(q.bottom)].push_back(id);
  }
  s->model_ = b.model_;
  if (s->model_) {
    s->model_->index.clear();
    for (std::size_t f = 0; f < m && f < s->model_->table.size(); ++f)
      s->model_->index[{s->morphisms_[f].source, s->morphisms_[f].target, s->model_->table[f]}] = static_cast<MorId>(f);
  }
  return s;
}

MorId map_to_point(const Site& s, ObjId x) {
  const auto& h = s.hom(x, s.final_object());
  if (h.size() != 1)
    throw Error(ErrorKind::InvalidArgument,
                "object " + s.object_label(x) + " has " + std::to_string(h.size()) + " maps to the final object");
  return h.front();
}

}  // namespace bvw
