#include "bvw/site/validation.hpp"

#include <set>

namespace bvw {

SquareTranspose transpose(const Site& site, SqId sq) {
  Square t = transpose(site.square(sq));
  return {t, site.find_square(t).has_value()};
}

Report validate_site(const Site& s) {
  Report r("site");
  const auto n = static_cast<ObjId>(s.object_count());
  const auto m = static_cast<MorId>(s.morphism_count());
  auto lab = [&](MorId f) { return s.morphism_label(f); };

  Tally total, ident, assoc;
  for (MorId g = 0; g < m; ++g)
    for (MorId f = 0; f < m; ++f) {
      if (s.target(f) != s.source(g)) {
        if (s.compose(g, f) >= 0) total.miss(Json{{"g", lab(g)}, {"f", lab(f)}, {"problem", "composite of non-composable pair"}});
        continue;
      }
      MorId h = s.compose(g, f);
      if (h < 0)
        total.miss(Json{{"g", lab(g)}, {"f", lab(f)}, {"problem", "missing composite"}});
      else if (s.source(h) != s.source(f) || s.target(h) != s.target(g))
        total.miss(Json{{"g", lab(g)}, {"f", lab(f)}, {"composite", lab(h)}, {"problem", "composite has wrong type"}});
      else
        total.hit();
    }
  total.emit(r, "composition_total");

  for (ObjId x = 0; x < n; ++x) {
    MorId id = s.identity(x);
    if (id < 0) {
      ident.miss(Json{{"object", s.object_label(x)}, {"problem", "no identity"}});
      continue;
    }
    for (MorId f : s.morphisms_from(x))
      if (s.compose(f, id) != f) ident.miss(Json{{"identity", lab(id)}, {"f", lab(f)}, {"problem", "f * id != f"}});
      else ident.hit();
    for (MorId f : s.morphisms_into(x))
      if (s.compose(id, f) != f) ident.miss(Json{{"identity", lab(id)}, {"f", lab(f)}, {"problem", "id * f != f"}});
      else ident.hit();
  }
  ident.emit(r, "identities");

  for (MorId f = 0; f < m; ++f)
    for (MorId g : s.morphisms_from(s.target(f))) {
      MorId gf = s.compose(g, f);
      if (gf < 0) continue;
      for (MorId h : s.morphisms_from(s.target(g))) {
        MorId hg = s.compose(h, g);
        if (hg < 0) continue;
        MorId a = s.compose(h, gf), b = s.compose(hg, f);
        if (a != b || a < 0) assoc.miss(Json{{"f", lab(f)}, {"g", lab(g)}, {"h", lab(h)}});
        else assoc.hit();
      }
    }
  assoc.emit(r, "associativity");

  Tally fin;
  for (ObjId x = 0; x < n; ++x) {
    const auto& h = s.hom(x, s.final_object());
    if (h.size() != 1)
      fin.miss(Json{{"object", s.object_label(x)}, {"maps_to_final", h.size()}});
    else
      fin.hit();
  }
  fin.emit(r, "final_object");

  Tally cid, ccomp, cbase, acomp, aconf, afinal;
  for (ObjId x = 0; x < n; ++x) {
    MorId id = s.identity(x);
    if (id < 0) continue;
    if (s.confined(id)) cid.hit();
    else cid.miss(Json{{"identity", lab(id)}});
  }
  for (MorId f = 0; f < m; ++f)
    for (MorId g : s.morphisms_from(s.target(f))) {
      MorId gf = s.compose(g, f);
      if (gf < 0) continue;
      if (s.confined(f) && s.confined(g)) {
        if (s.confined(gf)) ccomp.hit();
        else ccomp.miss(Json{{"f", lab(f)}, {"g", lab(g)}, {"composite", lab(gf)}});
      }
      if (s.allowable(f) && s.allowable(g)) {
        if (s.allowable(gf)) acomp.hit();
        else acomp.miss(Json{{"f", lab(f)}, {"g", lab(g)}, {"composite", lab(gf)}});
      }
      if (s.confined(f) && s.allowable(g)) {
        if (s.allowable(gf)) aconf.hit();
        else aconf.miss(Json{{"confined", lab(f)}, {"allowable", lab(g)}, {"composite", lab(gf)}});
      }
    }
  for (ObjId x = 0; x < n; ++x) {
    MorId p = s.to_final(x);
    if (p < 0) continue;
    if (s.allowable(p)) afinal.hit();
    else afinal.miss(Json{{"morphism", lab(p)}});
  }

  Tally commute, cart, b1, b1t, hpaste, vpaste;
  for (SqId q = 0; q < static_cast<SqId>(s.square_count()); ++q) {
    const Square& sq = s.square(q);
    if (s.confined(sq.right)) {
      if (s.confined(sq.left)) cbase.hit();
      else cbase.miss(s.square_json(sq));
    }
    bool typed = s.target(sq.top) == s.source(sq.right) && s.target(sq.left) == s.source(sq.bottom) &&
                 s.source(sq.top) == s.source(sq.left) && s.target(sq.right) == s.target(sq.bottom);
    if (!typed || s.compose(sq.right, sq.top) != s.compose(sq.bottom, sq.left)) {
      commute.miss(s.square_json(sq));
      continue;
    }
    commute.hit();
    // Universal property: (top, left) induces a bijection hom(T, X') ->
    // {(a, b) : right * a == bottom * b}.
    bool ok = true;
    for (ObjId t = 0; t < n && ok; ++t) {
      std::set<std::pair<MorId, MorId>> images;
      for (MorId u : s.hom(t, s.source(sq.top))) {
        auto pr = std::make_pair(s.compose(sq.top, u), s.compose(sq.left, u));
        if (!images.insert(pr).second) ok = false;
      }
      std::size_t cone = 0;
      for (MorId a : s.hom(t, s.source(sq.right)))
        for (MorId b : s.hom(t, s.source(sq.bottom)))
          if (s.compose(sq.right, a) == s.compose(sq.bottom, b)) {
            ++cone;
            if (!images.count({a, b})) ok = false;
          }
      if (cone != images.size()) ok = false;
      if (!ok) {
        Json w = s.square_json(sq);
        w["test_object"] = s.object_label(t);
        cart.miss(w);
      }
    }
    if (ok) cart.hit();
  }
  for (MorId f = 0; f < m; ++f) {
    MorId idx = s.identity(s.source(f)), idy = s.identity(s.target(f));
    if (idx < 0 || idy < 0) continue;
    Square h{idx, f, idy, f}, v{f, idy, f, idx};
    if (s.find_square(h)) b1.hit();
    else b1.miss(s.square_json(h));
    if (s.find_square(v)) b1t.hit();
    else b1t.miss(s.square_json(v));
  }
  // Horizontal pasting: a square whose right edge is the left edge of another.
  for (SqId q = 0; q < static_cast<SqId>(s.square_count()); ++q) {
    const Square& outer = s.square(q);
    for (SqId p : s.squares_with_right(outer.left)) {
      const Square& inner = s.square(p);
      Square c{s.compose(outer.top, inner.top), outer.right, s.compose(outer.bottom, inner.bottom), inner.left};
      if (c.top >= 0 && c.bottom >= 0 && s.find_square(c)) hpaste.hit();
      else hpaste.miss(Json{{"right_square", s.square_json(outer)}, {"left_square", s.square_json(inner)}});
    }
    // Vertical pasting: a square sitting on top of this one.
    for (SqId p : s.squares_with_bottom(outer.top)) {
      const Square& upper = s.square(p);
      Square c{upper.top, s.compose(outer.right, upper.right), outer.bottom, s.compose(outer.left, upper.left)};
      if (c.right >= 0 && c.left >= 0 && s.find_square(c)) vpaste.hit();
      else vpaste.miss(Json{{"lower_square", s.square_json(outer)}, {"upper_square", s.square_json(upper)}});
    }
  }

  cid.emit(r, "confined_identities");
  ccomp.emit(r, "confined_composition");
  cbase.emit(r, "confined_base_change");
  acomp.emit(r, "allowable_composition");
  aconf.emit(r, "allowable_after_confined");
  afinal.emit(r, "allowable_to_final");
  commute.emit(r, "square_commutes");
  cart.emit(r, "square_cartesian");
  b1.emit(r, "identity_squares");
  b1t.emit(r, "identity_squares_transposed");
  hpaste.emit(r, "horizontal_pasting");
  vpaste.emit(r, "vertical_pasting");
  return r;
}

}  // namespace bvw
