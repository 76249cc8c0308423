#include "bvw/bivariant/derived.hpp"

#include "bvw/error.hpp"

namespace bvw {

CovariantPart covariant_part(const BivariantTheory& t) {
  const Site& s = t.site();
  CovariantPart c{t.site_ptr(), {}, std::vector<std::optional<ModuleMap>>(s.morphism_count())};
  for (ObjId x = 0; x < static_cast<ObjId>(s.object_count()); ++x) c.modules.push_back(t.group(map_to_point(s, x)));
  for (MorId f = 0; f < static_cast<MorId>(s.morphism_count()); ++f) {
    if (!s.confined(f)) continue;
    const MorId g = map_to_point(s, s.target(f));
    if (const ModuleMap* p = t.pushdown_table(f, g)) c.pushforward[static_cast<std::size_t>(f)] = *p;
  }
  return c;
}

ContravariantPart contravariant_part(const BivariantTheory& t) {
  const Site& s = t.site();
  ContravariantPart c{t.site_ptr(), {}, {}, {}, std::vector<std::optional<ModuleMap>>(s.morphism_count())};
  for (ObjId x = 0; x < static_cast<ObjId>(s.object_count()); ++x) {
    const MorId id = s.identity(x);
    if (!t.has_group(id))
      throw Error(ErrorKind::NotAllowable, "identity of " + s.object_label(x) + " is not allowable");
    c.modules.push_back(t.group(id));
    c.cup.push_back(*t.product_table(id, id));
    c.units.push_back(t.unit(x).value_or(Vec{}));
  }
  for (MorId g = 0; g < static_cast<MorId>(s.morphism_count()); ++g) {
    const ObjId xp = s.source(g), x = s.target(g);
    auto q = s.find_square(Square{g, s.identity(x), g, s.identity(xp)});
    if (q) c.pullback[static_cast<std::size_t>(g)] = *t.pullback_table(*q);
  }
  return c;
}

Report check_covariant_part(const CovariantPart& c) {
  Report r("covariant_part");
  const Site& s = *c.site;
  Tally ident, comp;
  for (ObjId x = 0; x < static_cast<ObjId>(s.object_count()); ++x) {
    const auto& p = c.pushforward[static_cast<std::size_t>(s.identity(x))];
    if (!p) continue;
    const Module& m = c.modules[static_cast<std::size_t>(x)];
    bool ok = true;
    for (std::size_t j = 0; j < m.rank() && ok; ++j) ok = m.equal(p->matrix.column(j), unit_vector(m.rank(), j));
    ok ? ident.hit() : ident.miss(Json{{"object", s.object_label(x)}});
  }
  for (MorId f = 0; f < static_cast<MorId>(s.morphism_count()); ++f)
    for (MorId g : s.morphisms_from(s.target(f))) {
      const MorId gf = s.compose(g, f);
      const auto &pf = c.pushforward[static_cast<std::size_t>(f)], &pg = c.pushforward[static_cast<std::size_t>(g)];
      const auto& pgf = c.pushforward[static_cast<std::size_t>(gf)];
      if (!pf || !pg || !pgf) continue;
      Matrix rhs = pg->matrix * pf->matrix;
      const Module& m = c.modules[static_cast<std::size_t>(s.target(g))];
      bool ok = true;
      for (std::size_t j = 0; j < rhs.cols() && ok; ++j) ok = m.equal(pgf->matrix.column(j), rhs.column(j));
      ok ? comp.hit() : comp.miss(Json{{"f", s.morphism_label(f)}, {"g", s.morphism_label(g)}});
    }
  ident.emit(r, "identity");
  comp.emit(r, "composition");
  return r;
}

Report check_contravariant_part(const ContravariantPart& c) {
  Report r("contravariant_part");
  const Site& s = *c.site;
  Tally ident, comp, ring;
  for (ObjId x = 0; x < static_cast<ObjId>(s.object_count()); ++x) {
    const auto& p = c.pullback[static_cast<std::size_t>(s.identity(x))];
    if (!p) continue;
    const Module& m = c.modules[static_cast<std::size_t>(x)];
    bool ok = true;
    for (std::size_t j = 0; j < m.rank() && ok; ++j) ok = m.equal(p->matrix.column(j), unit_vector(m.rank(), j));
    ok ? ident.hit() : ident.miss(Json{{"object", s.object_label(x)}});
  }
  for (MorId f = 0; f < static_cast<MorId>(s.morphism_count()); ++f)
    for (MorId g : s.morphisms_from(s.target(f))) {
      const MorId gf = s.compose(g, f);
      const auto &pf = c.pullback[static_cast<std::size_t>(f)], &pg = c.pullback[static_cast<std::size_t>(g)];
      const auto& pgf = c.pullback[static_cast<std::size_t>(gf)];
      if (!pf || !pg || !pgf) continue;
      Matrix rhs = pf->matrix * pg->matrix;
      const Module& m = c.modules[static_cast<std::size_t>(s.source(f))];
      bool ok = true;
      for (std::size_t j = 0; j < rhs.cols() && ok; ++j) ok = m.equal(pgf->matrix.column(j), rhs.column(j));
      ok ? comp.hit() : comp.miss(Json{{"f", s.morphism_label(f)}, {"g", s.morphism_label(g)}});
    }
  for (MorId g = 0; g < static_cast<MorId>(s.morphism_count()); ++g) {
    const auto& p = c.pullback[static_cast<std::size_t>(g)];
    if (!p) continue;
    const auto xs = static_cast<std::size_t>(s.target(g)), xt = static_cast<std::size_t>(s.source(g));
    const BilinearMap &cs = c.cup[xs], &ct = c.cup[xt];
    const std::size_t n = cs.left.rank();
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) {
        Vec lhs = (*p)(cs(unit_vector(n, i), unit_vector(n, j)));
        Vec rhs = ct(p->matrix.column(i), p->matrix.column(j));
        ok = c.modules[xt].equal(lhs, rhs);
      }
    ok ? ring.hit() : ring.miss(Json{{"g", s.morphism_label(g)}});
  }
  ident.emit(r, "identity");
  comp.emit(r, "composition");
  ring.emit(r, "cup_multiplicative");
  return r;
}

Vec cap(const BivariantTheory& t, ObjId x, const Vec& a, const Vec& b) {
  const Site& s = t.site();
  return t.product(s.identity(x), a, map_to_point(s, x), b);
}

Vec external(const BivariantTheory& t, SqId sq, const Vec& beta, const Vec& alpha) {
  const Site& s = t.site();
  const Square& q = s.square(sq);
  if (s.target(q.right) != s.final_object() || s.target(q.bottom) != s.final_object())
    throw Error(ErrorKind::InvalidArgument, "external product needs a square over the final object");
  return t.product(q.left, t.pullback(sq, alpha), q.bottom, beta);
}

Vec restrict_to_fiber(const BivariantTheory& t, SqId sq, const Vec& a) {
  const Site& s = t.site();
  const Square& q = s.square(sq);
  if (s.source(q.bottom) != s.final_object())
    throw Error(ErrorKind::InvalidArgument, "restriction to a fiber needs a square with bottom edge out of the final object");
  return t.pullback(sq, a);
}

Vec gysin_pull(const BivariantTheory& t, MorId f, const Vec& theta, const Vec& a) {
  const Site& s = t.site();
  return t.product(f, theta, map_to_point(s, s.target(f)), a);
}

Vec gysin_push(const BivariantTheory& t, MorId f, const Vec& theta, const Vec& b) {
  const Site& s = t.site();
  Vec bt = t.product(s.identity(s.source(f)), b, f, theta);
  return t.pushdown(f, s.identity(s.target(f)), bt);
}

Vec right_action(const BivariantTheory& t, MorId f, const Vec& a, const Vec& c) {
  const Site& s = t.site();
  return t.product(f, a, s.identity(s.target(f)), c);
}

Report check_derived(const BivariantTheory& t) {
  Report r(t.name() + ".derived");
  const Site& s = t.site();
  Tally pull, push, unit, assoc;
  const auto m = static_cast<MorId>(s.morphism_count());
  auto def = [&](MorId f) { return f >= 0 && t.has_group(f); };
  for (MorId f = 0; f < m; ++f) {
    if (!def(f)) continue;
    const std::size_t nf = t.group(f).rank();
    for (MorId g : s.morphisms_from(s.target(f))) {
      const MorId gf = s.compose(g, f);
      if (!def(g) || !def(gf)) continue;
      const std::size_t ng = t.group(g).rank();
      const MorId zpt = map_to_point(s, s.target(g));
      if (def(zpt)) {
        const std::size_t nz = t.group(zpt).rank();
        bool ok = true;
        for (std::size_t i = 0; i < nf && ok; ++i)
          for (std::size_t j = 0; j < ng && ok; ++j) {
            Vec th = t.product(f, unit_vector(nf, i), g, unit_vector(ng, j));
            for (std::size_t k = 0; k < nz && ok; ++k) {
              Vec lhs = gysin_pull(t, gf, th, unit_vector(nz, k));
              Vec rhs = gysin_pull(t, f, unit_vector(nf, i), gysin_pull(t, g, unit_vector(ng, j), unit_vector(nz, k)));
              ok = t.group(map_to_point(s, s.source(f))).equal(lhs, rhs);
            }
          }
        ok ? pull.hit() : pull.miss(Json{{"f", s.morphism_label(f)}, {"g", s.morphism_label(g)}});
      }
      const MorId idx = s.identity(s.source(f)), idz = s.identity(s.target(g)), idy = s.identity(s.target(f));
      if (s.confined(f) && s.confined(g) && def(idx) && def(idy) && def(idz)) {
        const std::size_t nx = t.group(idx).rank();
        bool ok = true;
        for (std::size_t i = 0; i < nf && ok; ++i)
          for (std::size_t j = 0; j < ng && ok; ++j) {
            Vec th = t.product(f, unit_vector(nf, i), g, unit_vector(ng, j));
            for (std::size_t k = 0; k < nx && ok; ++k) {
              Vec lhs = gysin_push(t, gf, th, unit_vector(nx, k));
              Vec rhs = gysin_push(t, g, unit_vector(ng, j), gysin_push(t, f, unit_vector(nf, i), unit_vector(nx, k)));
              ok = t.group(idz).equal(lhs, rhs);
            }
          }
        ok ? push.hit() : push.miss(Json{{"f", s.morphism_label(f)}, {"g", s.morphism_label(g)}});
      }
    }
    const ObjId y = s.target(f);
    const MorId idy = s.identity(y);
    if (def(idy)) {
      const std::size_t ny = t.group(idy).rank();
      if (t.unit(y)) {
        bool ok = true;
        for (std::size_t i = 0; i < nf && ok; ++i)
          ok = t.group(f).equal(right_action(t, f, unit_vector(nf, i), *t.unit(y)), unit_vector(nf, i));
        ok ? unit.hit() : unit.miss(Json{{"f", s.morphism_label(f)}});
      }
      bool ok = true;
      for (std::size_t i = 0; i < nf && ok; ++i)
        for (std::size_t j = 0; j < ny && ok; ++j)
          for (std::size_t k = 0; k < ny && ok; ++k) {
            Vec cd = t.product(idy, unit_vector(ny, j), idy, unit_vector(ny, k));
            Vec lhs = right_action(t, f, unit_vector(nf, i), cd);
            Vec rhs = right_action(t, f, right_action(t, f, unit_vector(nf, i), unit_vector(ny, j)), unit_vector(ny, k));
            ok = t.group(f).equal(lhs, rhs);
          }
      ok ? assoc.hit() : assoc.miss(Json{{"f", s.morphism_label(f)}});
    }
  }
  pull.emit(r, "gysin_pull_functorial", "(theta*theta')^* == theta^* theta'^*");
  push.emit(r, "gysin_push_functorial", "(theta*theta')_* == theta'_* theta_*");
  if (unit.checked) unit.emit(r, "right_action_unitary");
  assoc.emit(r, "right_action_associative");
  return r;
}

}  // namespace bvw
