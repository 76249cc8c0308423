#include "bvw/frontend/workspace.hpp"

#include "bvw/error.hpp"
#include "bvw/instances/instances.hpp"
#include "bvw/site/builders.hpp"

#include <set>

namespace bvw::dsl {

namespace {

// Already carries its source line; passed through unwrapped.
struct LoadError : Error {
  using Error::Error;
};

[[noreturn]] void load_error(const std::string& what, const Span& s) {
  throw LoadError(ErrorKind::InvalidArgument, "line " + std::to_string(s.line) + ": " + what);
}

Matrix to_matrix(const MatrixLit& lit, const CoeffRing& ring, std::size_t rows, std::size_t cols, const std::string& what) {
  if (lit.rows.empty()) {
    if (rows != 0 && cols != 0)
      load_error(what + ": empty matrix where " + std::to_string(rows) + "x" + std::to_string(cols) + " is needed", lit.span);
    return Matrix(ring, rows, cols);
  }
  if (lit.rows.size() != rows || lit.rows.front().size() != cols)
    load_error(what + ": expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix, got " +
                   std::to_string(lit.rows.size()) + "x" + std::to_string(lit.rows.front().size()),
               lit.span);
  try {
    return Matrix::from_rows(ring, lit.rows, cols);
  } catch (const Error& e) {
    load_error(what + ": " + e.what(), lit.span);
  }
}

template <class T>
const Named<T>* lookup(const std::vector<Named<T>>& v, const std::string& name) {
  for (const auto& e : v)
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace

CoeffRing ring_from_name(const std::string& name) {
  if (name == "Z") return CoeffRing::integers();
  if (name == "Q") return CoeffRing::rationals();
  if (name.size() > 1 && name[0] == 'F') return CoeffRing::prime_field(std::stoll(name.substr(1)));
  throw Error(ErrorKind::InvalidArgument, "unknown coefficient ring '" + name + "'");
}

template <class T>
const T& Workspace::find_decl(const std::vector<T>& v, const std::string& name, const char* kind) {
  for (const auto& d : v)
    if (d.name == name) return d;
  throw Error(ErrorKind::InvalidArgument, std::string("no ") + kind + " named '" + name + "'");
}

Workspace::Workspace(Document doc) : doc_(std::move(doc)) {
  for (const auto& d : doc_.sites) load_site(d);
  for (const auto& d : doc_.bars) load_bar(d);
  for (const auto& d : doc_.functors) load_functor(d);
}

void Workspace::load_site(const SiteDecl& d) {
  SitePtr s;
  try {
    if (d.generator) {
      const auto& g = *d.generator;
      if (g.kind == "finset") s = build_finset_site(g.size, g.with_empty);
      else if (g.kind == "involution") s = build_involution_site(g.size, g.with_empty);
      else s = build_graded_site(g.profiles);
    } else {
      SiteBuilder b;
      for (const auto& o : d.objects) b.add_object(o);
      for (const auto& m : d.morphisms) {
        if (m.name.rfind("id_", 0) == 0) load_error("morphism names starting with id_ are reserved for identities", m.span);
        b.add_morphism(m.name, m.source, m.target);
      }
      for (const auto& o : d.objects) {
        ObjId x = *b.find_object(o);
        b.set_identity(x, b.add_morphism("id_" + o, x, x));
      }
      auto mor = [&](const std::string& n, const Span& sp) {
        auto f = b.find_morphism(n);
        if (!f) load_error("site " + d.name + ": unknown morphism '" + n + "'", sp);
        return *f;
      };
      for (const auto& c : d.composes) b.set_compose(mor(c.g, c.span), mor(c.f, c.span), mor(c.h, c.span));
      std::string fin = d.final_object;
      if (fin.empty() && b.find_object("pt")) fin = "pt";
      if (fin.empty()) load_error("site " + d.name + ": no final object (declare 'final')", d.span);
      b.set_final(*b.find_object(fin));
      if (d.confine_all) b.confine_all();
      if (d.allow_all) b.allow_all();
      for (const auto& m : d.confined) b.set_confined(mor(m, d.span));
      for (const auto& m : d.allowable) b.set_allowable(mor(m, d.span));
      for (const auto& q : d.squares)
        b.add_square(Square{mor(q.top, q.span), mor(q.right, q.span), mor(q.bottom, q.span), mor(q.left, q.span)});
      s = b.build();
    }
  } catch (const LoadError&) {
    throw;
  } catch (const Error& e) {
    load_error("site " + d.name + ": " + e.what(), d.span);
  }
  auto& al = aliases_[d.name];
  for (const auto& a : d.aliases) {
    if (!s->find_morphism(a.value)) load_error("site " + d.name + ": alias " + a.name + " names unknown morphism '" + a.value + "'", a.span);
    al[a.name] = a.value;
  }
  site_names_[s.get()] = d.name;
  sites_[d.name] = std::move(s);
}

void Workspace::load_bar(const BarDecl& d) {
  SitePtr src = site(d.source), tgt = site(d.target);
  BarFunctor b;
  try {
    if (d.kind == "identity") {
      if (src != tgt) load_error("bar " + d.name + ": identity needs one site", d.span);
      b = identity_functor(src);
    } else if (d.kind == "fixed_points") {
      b = fixed_points_functor(src, tgt);
    } else {
      b.source = src;
      b.target = tgt;
      for (ObjId x = 0; x < static_cast<ObjId>(src->object_count()); ++x) {
        const auto* e = lookup(d.objects, src->object_label(x));
        if (!e) load_error("bar " + d.name + ": no image for object " + src->object_label(x), d.span);
        auto y = tgt->find_object(e->value);
        if (!y) load_error("bar " + d.name + ": unknown object '" + e->value + "'", e->span);
        b.object_map.push_back(*y);
      }
      for (MorId f = 0; f < static_cast<MorId>(src->morphism_count()); ++f) {
        const auto* e = lookup(d.morphisms, src->morphism_label(f));
        if (!e) {
          if (src->is_identity(f)) {
            b.morphism_map.push_back(tgt->identity(b.obj(src->source(f))));
            continue;
          }
          load_error("bar " + d.name + ": no image for morphism " + src->morphism_label(f), d.span);
        }
        auto g = tgt->find_morphism(e->value);
        if (!g) load_error("bar " + d.name + ": unknown morphism '" + e->value + "'", e->span);
        b.morphism_map.push_back(*g);
      }
    }
  } catch (const LoadError&) {
    throw;
  } catch (const Error& e) {
    load_error("bar " + d.name + ": " + e.what(), d.span);
  }
  bars_[d.name] = std::move(b);
}

void Workspace::load_functor(const FunctorDecl& d) {
  SitePtr sp = site(d.site);
  CoeffRing ring = ring_from_name(d.ring);
  SimpleFunctorData data;
  try {
    if (d.kind == "counting") data = counting_instance(sp, ring);
    else if (d.kind == "euler") data = euler_instance(sp, ring);
    else if (d.kind == "invariant") data = invariant_instance(sp, ring);
  } catch (const Error& e) {
    load_error("functor " + d.name + ": " + e.what(), d.span);
  }
  if (d.kind != "explicit") {
    functors_[d.name] = std::move(data);
    return;
  }
  const Site& s = *sp;
  data.site = sp;
  data.ring = ring;
  data.two_sided = !d.one_sided;
  const std::string who = "functor " + d.name;
  std::set<std::string> known;
  for (ObjId x = 0; x < static_cast<ObjId>(s.object_count()); ++x) {
    const std::string& o = s.object_label(x);
    known.insert(o);
    const auto* r = lookup(d.ranks, o);
    if (!r) load_error(who + ": no rank for object " + o, d.span);
    auto n = static_cast<std::size_t>(r->value);
    Module m = Module::free(ring, n);
    BilinearMap mul(m, m, m);
    if (const auto* e = lookup(d.mult, o)) {
      Matrix t = to_matrix(e->value, ring, n, n * n, who + " mult " + o);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) mul.at(k, i, j) = t(k, i * n + j);
    } else if (n) {
      load_error(who + ": no mult for object " + o, d.span);
    }
    Vec unit(n);
    if (const auto* e = lookup(d.unit, o)) {
      Matrix u = to_matrix(e->value, ring, n ? 1 : 0, n, who + " unit " + o);
      if (n) unit = u.row(0);
    } else if (n) {
      load_error(who + ": no unit for object " + o, d.span);
    }
    data.rings.push_back({m, std::move(mul), std::move(unit)});
  }
  data.pushforward.resize(s.morphism_count());
  for (MorId f = 0; f < static_cast<MorId>(s.morphism_count()); ++f) {
    const std::string& l = s.morphism_label(f);
    known.insert(l);
    const auto& X = data.rings[static_cast<std::size_t>(s.source(f))].module;
    const auto& Y = data.rings[static_cast<std::size_t>(s.target(f))].module;
    const auto* pb = lookup(d.pullback, l);
    if (pb) data.pullback.emplace_back(Y, X, to_matrix(pb->value, ring, X.rank(), Y.rank(), who + " pullback " + l));
    else if (s.is_identity(f)) data.pullback.emplace_back(Y, X, Matrix::identity(ring, X.rank()));
    else load_error(who + ": no pullback for morphism " + l, d.span);
    if (!s.confined(f)) continue;
    const auto* pf = lookup(d.pushforward, l);
    if (pf) data.pushforward[static_cast<std::size_t>(f)] = ModuleMap(X, Y, to_matrix(pf->value, ring, Y.rank(), X.rank(), who + " pushforward " + l));
    else if (s.is_identity(f)) data.pushforward[static_cast<std::size_t>(f)] = ModuleMap(X, Y, Matrix::identity(ring, X.rank()));
    else load_error(who + ": no pushforward for confined morphism " + l, d.span);
  }
  for (const auto* list : {&d.mult, &d.unit, &d.pullback, &d.pushforward})
    for (const auto& e : *list)
      if (!known.count(e.name)) load_error(who + ": unknown name '" + e.name + "'", e.span);
  for (const auto& e : d.ranks)
    if (!known.count(e.name)) load_error(who + ": unknown object '" + e.name + "'", e.span);
  functors_[d.name] = std::move(data);
}

SitePtr Workspace::site(const std::string& name) const {
  auto it = sites_.find(name);
  if (it == sites_.end()) throw Error(ErrorKind::InvalidArgument, "no site named '" + name + "'");
  return it->second;
}

const BarFunctor& Workspace::bar(const std::string& name) const {
  auto it = bars_.find(name);
  if (it == bars_.end()) throw Error(ErrorKind::InvalidArgument, "no bar named '" + name + "'");
  return it->second;
}

const SimpleFunctorData& Workspace::functor(const std::string& name) const {
  auto it = functors_.find(name);
  if (it == functors_.end()) throw Error(ErrorKind::InvalidArgument, "no functor named '" + name + "'");
  return it->second;
}

TheoryPtr Workspace::theory(const std::string& name) const {
  if (auto it = theories_.find(name); it != theories_.end()) return it->second;
  const auto& d = find_decl(doc_.theories, name, "theory");
  TheoryPtr t = build_simple_theory(functor(d.functor), name);
  theories_[name] = t;
  return t;
}

const CovariantTransform& Workspace::transform(const std::string& name) const {
  if (auto it = transforms_.find(name); it != transforms_.end()) return it->second;
  const auto& d = find_decl(doc_.transforms, name, "transform");
  TheoryPtr F = theory(d.source), H = theory(d.target);
  auto same = [&](const char* kind) {
    if (d.source != d.target) load_error("transform " + name + ": " + kind + " maps a theory to itself", d.span);
  };
  CovariantTransform c;
  try {
    if (d.kind == "identity") {
      same("identity");
      c = identity_transform(F);
    } else if (d.kind == "scaled") {
      same("scaled");
      c = scaled_transform(F, d.scale);
    } else if (d.kind == "mod2") {
      if (F->ring() != CoeffRing::integers() || H->ring() != CoeffRing::prime_field(2))
        load_error("transform " + name + ": mod2 maps a theory over Z to one over F2", d.span);
      c = mod2_transform(F, H);
    } else if (d.kind == "smith") {
      c = smith_transform(F, H, bar(d.bar));
    } else {
      const BarFunctor& b = bar(d.bar);
      if (b.source != F->site_ptr() || b.target != H->site_ptr())
        load_error("transform " + name + ": bar " + d.bar + " does not run between the theories' sites", d.span);
      c.F = F;
      c.H = H;
      c.bar = b;
      const Site& s = F->site();
      for (ObjId x = 0; x < static_cast<ObjId>(s.object_count()); ++x) {
        const Module& src = F->group(map_to_point(s, x));
        const Module& tgt = H->group(map_to_point(H->site(), b.obj(x)));
        const auto* e = lookup(d.maps, s.object_label(x));
        if (!e) load_error("transform " + name + ": no map for object " + s.object_label(x), d.span);
        c.maps.emplace_back(src, tgt, to_matrix(e->value, H->ring(), tgt.rank(), src.rank(), "transform " + name + " map " + e->name));
      }
      for (const auto& e : d.maps)
        if (!s.find_object(e.name)) load_error("transform " + name + ": unknown object '" + e.name + "'", e.span);
      require_transform_shapes(c);
    }
  } catch (const LoadError&) {
    throw;
  } catch (const Error& e) {
    load_error("transform " + name + ": " + e.what(), d.span);
  }
  c.name = name;
  return transforms_[name] = std::move(c);
}

const OrientationDatum& Workspace::orientation(const std::string& name) const {
  if (auto it = orients_.find(name); it != orients_.end()) return it->second;
  const auto& d = find_decl(doc_.orients, name, "orientation");
  TheoryPtr F = theory(d.theory);
  OrientationDatum o;
  if (d.kind == "units") {
    o = unit_orientation(*F, d.scale);
  } else {
    const Site& s = F->site();
    o.e.resize(s.object_count());
    for (const auto& e : d.elements) {
      auto y = s.find_object(e.name);
      if (!y) load_error("orientation " + name + ": unknown object '" + e.name + "'", e.span);
      std::size_t n = F->group(map_to_point(s, *y)).rank();
      Matrix m = to_matrix(e.value, F->ring(), n ? 1 : 0, n, "orientation " + name + " element " + e.name);
      o.e[static_cast<std::size_t>(*y)] = n ? m.row(0) : Vec{};
    }
  }
  o.name = name;
  return orients_[name] = std::move(o);
}

const std::string& Workspace::site_name(const Site& s) const {
  auto it = site_names_.find(&s);
  if (it == site_names_.end()) throw Error(ErrorKind::InvalidArgument, "site not declared in this workspace");
  return it->second;
}

MorId Workspace::morphism(const Site& s, const std::string& name) const {
  const auto& al = aliases_.at(site_name(s));
  auto it = al.find(name);
  const std::string& label = it == al.end() ? name : it->second;
  auto f = s.find_morphism(label);
  if (!f) throw Error(ErrorKind::InvalidArgument, "no morphism or alias '" + name + "' in site " + site_name(s));
  return *f;
}

namespace {
template <class T>
std::vector<std::string> names(const std::vector<T>& v) {
  std::vector<std::string> out;
  for (const auto& d : v) out.push_back(d.name);
  return out;
}
}  // namespace

std::vector<std::string> Workspace::site_names() const { return names(doc_.sites); }
std::vector<std::string> Workspace::functor_names() const { return names(doc_.functors); }
std::vector<std::string> Workspace::theory_names() const { return names(doc_.theories); }
std::vector<std::string> Workspace::transform_names() const { return names(doc_.transforms); }
std::vector<std::string> Workspace::orientation_names() const { return names(doc_.orients); }

}  // namespace bvw::dsl
