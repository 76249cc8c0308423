#include "bvw/site/bar_functor.hpp"

#include "bvw/error.hpp"

#include <numeric>

namespace bvw {

std::optional<SqId> BarFunctor::map_square(SqId s) const { return target->find_square(square(source->square(s))); }

BarFunctor identity_functor(const SitePtr& site) {
  BarFunctor b{site, site, std::vector<ObjId>(site->object_count()), std::vector<MorId>(site->morphism_count())};
  std::iota(b.object_map.begin(), b.object_map.end(), 0);
  std::iota(b.morphism_map.begin(), b.morphism_map.end(), 0);
  return b;
}

BarFunctor compose_functors(const BarFunctor& second, const BarFunctor& first) {
  if (first.target != second.source) throw Error(ErrorKind::NotComposable, "functor targets do not match");
  BarFunctor b{first.source, second.target, {}, {}};
  for (ObjId x : first.object_map) b.object_map.push_back(second.obj(x));
  for (MorId f : first.morphism_map) b.morphism_map.push_back(second.mor(f));
  return b;
}

Report validate_bar_functor(const BarFunctor& b) {
  Report r("bar_functor");
  const Site& s = *b.source;
  const Site& t = *b.target;
  if (b.object_map.size() != s.object_count() || b.morphism_map.size() != s.morphism_count()) {
    r.fail("shape", 1, Json{{"objects", b.object_map.size()}, {"morphisms", b.morphism_map.size()}});
    return r;
  }
  auto in_range = [&](ObjId x) { return x >= 0 && static_cast<std::size_t>(x) < t.object_count(); };
  auto m_in_range = [&](MorId f) { return f >= 0 && static_cast<std::size_t>(f) < t.morphism_count(); };
  for (std::size_t x = 0; x < s.object_count(); ++x)
    if (!in_range(b.object_map[x])) {
      r.fail("shape", 1, Json{{"object", s.object_label(static_cast<ObjId>(x))}});
      return r;
    }
  for (std::size_t f = 0; f < s.morphism_count(); ++f)
    if (!m_in_range(b.morphism_map[f])) {
      r.fail("shape", 1, Json{{"morphism", s.morphism_label(static_cast<MorId>(f))}});
      return r;
    }

  std::uint64_t n = 0;
  Json w;
  for (MorId f = 0; f < static_cast<MorId>(s.morphism_count()) && w.is_null(); ++f, ++n)
    if (t.source(b.mor(f)) != b.obj(s.source(f)) || t.target(b.mor(f)) != b.obj(s.target(f)))
      w = Json{{"morphism", s.morphism_label(f)}, {"image", t.morphism_label(b.mor(f))}};
  w.is_null() ? (void)r.pass("typing", n) : (void)r.fail("typing", n, w);

  n = 0;
  w = Json();
  for (ObjId x = 0; x < static_cast<ObjId>(s.object_count()) && w.is_null(); ++x, ++n)
    if (b.mor(s.identity(x)) != t.identity(b.obj(x))) w = Json{{"object", s.object_label(x)}};
  w.is_null() ? (void)r.pass("identities", n) : (void)r.fail("identities", n, w);

  n = 0;
  w = Json();
  for (MorId f = 0; f < static_cast<MorId>(s.morphism_count()) && w.is_null(); ++f)
    for (MorId g : s.morphisms_from(s.target(f))) {
      MorId gf = s.compose(g, f);
      if (gf < 0) continue;
      ++n;
      if (t.compose(b.mor(g), b.mor(f)) != b.mor(gf)) {
        w = Json{{"f", s.morphism_label(f)}, {"g", s.morphism_label(g)}};
        break;
      }
    }
  w.is_null() ? (void)r.pass("composition", n) : (void)r.fail("composition", n, w);

  if (b.obj(s.final_object()) == t.final_object()) r.pass("final_object", 1);
  else r.fail("final_object", 1, Json{{"image", t.object_label(b.obj(s.final_object()))}});

  Json wc, wa;
  std::uint64_t nc = 0, na = 0;
  for (MorId f = 0; f < static_cast<MorId>(s.morphism_count()); ++f) {
    if (s.confined(f)) {
      ++nc;
      if (!t.confined(b.mor(f)) && wc.is_null()) wc = Json{{"morphism", s.morphism_label(f)}};
    }
    if (s.allowable(f)) {
      ++na;
      if (!t.allowable(b.mor(f)) && wa.is_null()) wa = Json{{"morphism", s.morphism_label(f)}};
    }
  }
  wc.is_null() ? (void)r.pass("confined", nc) : (void)r.fail("confined", nc, wc);
  wa.is_null() ? (void)r.pass("allowable", na) : (void)r.fail("allowable", na, wa);

  n = 0;
  w = Json();
  for (SqId q = 0; q < static_cast<SqId>(s.square_count()); ++q) {
    ++n;
    if (!b.map_square(q) && w.is_null()) w = Json{{"square", s.square_json(s.square(q))}, {"image", t.square_json(b.square(s.square(q)))}};
  }
  w.is_null() ? (void)r.pass("squares", n) : (void)r.fail("squares", n, w);
  return r;
}

}  // namespace bvw
