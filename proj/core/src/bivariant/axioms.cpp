#include "bvw/bivariant/axioms.hpp"

namespace bvw {

namespace {

Vec column(const BilinearMap& p, std::size_t i, std::size_t j) {
  Vec out(p.target.rank());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = p.at(k, i, j);
  return out;
}

struct Ctx {
  const BivariantTheory& t;
  const Site& s;

  bool def(MorId f) const { return f >= 0 && t.has_group(f); }
  std::string lab(MorId f) const { return s.morphism_label(f); }
  MorId comp(MorId g, MorId f) const { return s.target(f) == s.source(g) ? s.compose(g, f) : -1; }
  std::size_t rank(MorId f) const { return t.group(f).rank(); }
};

Json mismatch(Json w, const std::vector<std::size_t>& basis, const Vec& lhs, const Vec& rhs) {
  w["basis"] = basis;
  w["lhs"] = vec_str(lhs);
  w["rhs"] = vec_str(rhs);
  return w;
}

void check_a1(const Ctx& c, Report& r) {
  Tally tally;
  const auto m = static_cast<MorId>(c.s.morphism_count());
  for (MorId f = 0; f < m; ++f) {
    if (!c.def(f)) continue;
    for (MorId g : c.s.morphisms_from(c.s.target(f))) {
      MorId gf = c.comp(g, f);
      if (!c.def(g) || !c.def(gf)) continue;
      const BilinearMap& fg = *c.t.product_table(f, g);
      for (MorId h : c.s.morphisms_from(c.s.target(g))) {
        MorId hg = c.comp(h, g), hgf = c.comp(h, gf);
        if (!c.def(h) || !c.def(hg) || !c.def(hgf)) continue;
        const BilinearMap& gfh = *c.t.product_table(gf, h);
        const BilinearMap& gh = *c.t.product_table(g, h);
        const BilinearMap& fhg = *c.t.product_table(f, hg);
        const Module& target = c.t.group(hgf);
        const std::size_t nf = c.rank(f), ng = c.rank(g), nh = c.rank(h);
        bool bad = false;
        for (std::size_t i = 0; i < nf && !bad; ++i)
          for (std::size_t j = 0; j < ng && !bad; ++j) {
            Vec ab = column(fg, i, j);
            for (std::size_t k = 0; k < nh && !bad; ++k) {
              Vec lhs = gfh(ab, unit_vector(nh, k));
              Vec rhs = fhg(unit_vector(nf, i), column(gh, j, k));
              if (!target.equal(lhs, rhs)) {
                tally.miss(mismatch(Json{{"f", c.lab(f)}, {"g", c.lab(g)}, {"h", c.lab(h)}}, {i, j, k}, lhs, rhs));
                bad = true;
              }
            }
          }
        if (!bad) tally.hit();
      }
    }
  }
  tally.emit(r, "A1", "(a*b)*c == a*(b*c) over composable triples");
}

bool same_map(const Module& target, const Matrix& a, const Matrix& b, std::size_t& col) {
  for (col = 0; col < a.cols(); ++col)
    if (!target.equal(a.column(col), b.column(col))) return false;
  return true;
}

void check_a2(const Ctx& c, Report& r) {
  Tally tally, ident;
  const auto m = static_cast<MorId>(c.s.morphism_count());
  for (MorId f = 0; f < m; ++f) {
    if (!c.s.confined(f)) continue;
    for (MorId g : c.s.morphisms_from(c.s.target(f))) {
      if (!c.s.confined(g)) continue;
      MorId gf = c.comp(g, f);
      for (MorId h : c.s.morphisms_from(c.s.target(g))) {
        MorId hg = c.comp(h, g), hgf = c.comp(h, gf);
        if (!c.def(h) || !c.def(hg) || !c.def(hgf)) continue;
        const ModuleMap* whole = c.t.pushdown_table(gf, h);
        const ModuleMap* first = c.t.pushdown_table(f, hg);
        const ModuleMap* second = c.t.pushdown_table(g, h);
        if (!whole || !first || !second) continue;
        Matrix lhs = whole->matrix, rhs = second->matrix * first->matrix;
        std::size_t col = 0;
        if (same_map(c.t.group(h), lhs, rhs, col))
          tally.hit();
        else
          tally.miss(mismatch(Json{{"f", c.lab(f)}, {"g", c.lab(g)}, {"h", c.lab(h)}}, {col}, lhs.column(col), rhs.column(col)));
      }
    }
  }
  for (ObjId x = 0; x < static_cast<ObjId>(c.s.object_count()); ++x) {
    MorId id = c.s.identity(x);
    for (MorId h : c.s.morphisms_from(x)) {
      if (!c.def(h)) continue;
      const ModuleMap* p = c.t.pushdown_table(id, h);
      if (!p) continue;
      std::size_t col = 0;
      Matrix one = Matrix::identity(c.t.ring(), c.rank(h));
      if (same_map(c.t.group(h), p->matrix, one, col))
        ident.hit();
      else
        ident.miss(mismatch(Json{{"identity", c.lab(id)}, {"h", c.lab(h)}}, {col}, p->matrix.column(col), one.column(col)));
    }
  }
  tally.emit(r, "A2", "(g*f)_* == g_* f_* over composable confined pairs");
  ident.emit(r, "A2_identity", "(id)_* == id");
}

void check_a3(const Ctx& c, Report& r) {
  Tally tally, ident;
  std::uint64_t unlisted = 0;
  for (SqId q = 0; q < static_cast<SqId>(c.s.square_count()); ++q) {
    const Square& outer = c.s.square(q);
    if (!c.def(outer.right) || !c.def(outer.left)) continue;
    const ModuleMap& po = *c.t.pullback_table(q);
    for (SqId p : c.s.squares_with_right(outer.left)) {
      const Square& inner = c.s.square(p);
      if (!c.def(inner.left)) continue;
      Square pasted{c.comp(outer.top, inner.top), outer.right, c.comp(outer.bottom, inner.bottom), inner.left};
      auto whole = c.s.find_square(pasted);
      if (!whole) {
        ++unlisted;
        continue;
      }
      Matrix lhs = c.t.pullback_table(*whole)->matrix;
      Matrix rhs = c.t.pullback_table(p)->matrix * po.matrix;
      std::size_t col = 0;
      if (same_map(c.t.group(inner.left), lhs, rhs, col))
        tally.hit();
      else
        tally.miss(mismatch(Json{{"outer", c.s.square_json(outer)}, {"inner", c.s.square_json(inner)}}, {col},
                            lhs.column(col), rhs.column(col)));
    }
    if (c.s.is_identity(outer.top) && c.s.is_identity(outer.bottom) && outer.left == outer.right) {
      Matrix one = Matrix::identity(c.t.ring(), c.rank(outer.right));
      std::size_t col = 0;
      if (same_map(c.t.group(outer.left), po.matrix, one, col))
        ident.hit();
      else
        ident.miss(mismatch(Json{{"square", c.s.square_json(outer)}}, {col}, po.matrix.column(col), one.column(col)));
    }
  }
  tally.emit(r, "A3", unlisted ? "(gh)^* == h^* g^*; " + std::to_string(unlisted) + " pastings not listed" : "(gh)^* == h^* g^*");
  ident.emit(r, "A3_identity", "identity squares pull back identically");
}

void check_a12(const Ctx& c, Report& r) {
  Tally tally;
  const auto m = static_cast<MorId>(c.s.morphism_count());
  for (MorId f = 0; f < m; ++f) {
    if (!c.s.confined(f)) continue;
    for (MorId g : c.s.morphisms_from(c.s.target(f))) {
      MorId gf = c.comp(g, f);
      if (!c.def(g) || !c.def(gf)) continue;
      const ModuleMap& fg = *c.t.pushdown_table(f, g);
      for (MorId h : c.s.morphisms_from(c.s.target(g))) {
        MorId hg = c.comp(h, g), hgf = c.comp(h, gf);
        if (!c.def(h) || !c.def(hg) || !c.def(hgf)) continue;
        const ModuleMap* fhg = c.t.pushdown_table(f, hg);
        const BilinearMap& p1 = *c.t.product_table(gf, h);
        const BilinearMap& p2 = *c.t.product_table(g, h);
        const Module& target = c.t.group(hg);
        const std::size_t na = c.rank(gf), nb = c.rank(h);
        bool bad = false;
        for (std::size_t i = 0; i < na && !bad; ++i) {
          Vec fa = fg(unit_vector(na, i));
          for (std::size_t j = 0; j < nb && !bad; ++j) {
            Vec lhs = (*fhg)(column(p1, i, j));
            Vec rhs = p2(fa, unit_vector(nb, j));
            if (!target.equal(lhs, rhs)) {
              tally.miss(mismatch(Json{{"f", c.lab(f)}, {"g", c.lab(g)}, {"h", c.lab(h)}}, {i, j}, lhs, rhs));
              bad = true;
            }
          }
        }
        if (!bad) tally.hit();
      }
    }
  }
  tally.emit(r, "A12", "f_*(a*b) == f_*(a)*b");
}

// Upper square u stacked on lower square l: u.bottom == l.top.
template <typename Fn>
void for_each_stacking(const Ctx& c, Fn&& fn) {
  for (SqId lq = 0; lq < static_cast<SqId>(c.s.square_count()); ++lq) {
    const Square& l = c.s.square(lq);
    for (SqId uq : c.s.squares_with_bottom(l.top)) {
      const Square& u = c.s.square(uq);
      Square outer{u.top, c.comp(l.right, u.right), l.bottom, c.comp(l.left, u.left)};
      fn(lq, uq, c.s.find_square(outer));
    }
  }
}

void check_a13_a23(const Ctx& c, Report& r) {
  Tally a13, a23;
  std::uint64_t unlisted = 0;
  for_each_stacking(c, [&](SqId lq, SqId uq, std::optional<SqId> oq) {
    if (!oq) {
      ++unlisted;
      return;
    }
    const Square& l = c.s.square(lq);
    const Square& u = c.s.square(uq);
    const Square& o = c.s.square(*oq);
    const MorId f = u.right, g = l.right, fp = u.left, gp = l.left;
    const MorId gf = o.right, gfp = o.left;
    Json where{{"upper", c.s.square_json(u)}, {"lower", c.s.square_json(l)}};
    if (c.def(f) && c.def(g) && c.def(gf) && c.def(fp) && c.def(gp) && c.def(gfp)) {
      const BilinearMap& top = *c.t.product_table(f, g);
      const BilinearMap& bottom = *c.t.product_table(fp, gp);
      const ModuleMap& po = *c.t.pullback_table(*oq);
      const ModuleMap& pu = *c.t.pullback_table(uq);
      const ModuleMap& pl = *c.t.pullback_table(lq);
      const Module& target = c.t.group(gfp);
      const std::size_t na = c.rank(f), nb = c.rank(g);
      bool bad = false;
      for (std::size_t i = 0; i < na && !bad; ++i) {
        Vec ha = pu.matrix.column(i);
        for (std::size_t j = 0; j < nb && !bad; ++j) {
          Vec lhs = po(column(top, i, j));
          Vec rhs = bottom(ha, pl.matrix.column(j));
          if (!target.equal(lhs, rhs)) {
            a13.miss(mismatch(where, {i, j}, lhs, rhs));
            bad = true;
          }
        }
      }
      if (!bad) a13.hit();
    }
    if (c.s.confined(f) && c.def(g) && c.def(gf) && c.def(gp) && c.def(gfp)) {
      const ModuleMap* down = c.t.pushdown_table(f, g);
      const ModuleMap* down_p = c.t.pushdown_table(fp, gp);
      if (!down || !down_p) return;
      Matrix lhs = c.t.pullback_table(lq)->matrix * down->matrix;
      Matrix rhs = down_p->matrix * c.t.pullback_table(*oq)->matrix;
      std::size_t col = 0;
      if (same_map(c.t.group(gp), lhs, rhs, col))
        a23.hit();
      else
        a23.miss(mismatch(where, {col}, lhs.column(col), rhs.column(col)));
    }
  });
  std::string note = unlisted ? "; " + std::to_string(unlisted) + " stackings not listed" : "";
  a13.emit(r, "A13", "h^*(a*b) == h'^*(a)*h^*(b)" + note);
  a23.emit(r, "A23", "h^*(f_*a) == f'_*(h^*a)" + note);
}

void check_a123(const Ctx& c, Report& r) {
  if (is_weak(c.t.flavor())) {
    r.mark("A123", Status::Skipped, "weak theory: projection formula not required");
    return;
  }
  Tally tally;
  for (SqId q = 0; q < static_cast<SqId>(c.s.square_count()); ++q) {
    const Square& sq = c.s.square(q);
    const MorId f = sq.right, fp = sq.left, g = sq.bottom, gp = sq.top;
    if (!c.s.confined(g) || !c.def(f) || !c.def(fp)) continue;
    const ModuleMap& pull = *c.t.pullback_table(q);
    for (MorId h : c.s.morphisms_from(c.s.target(f))) {
      MorId hg = c.comp(h, g), hf = c.comp(h, f), hgfp = c.comp(hg, fp);
      if (!c.def(h) || !c.def(hg) || !c.def(hf) || !c.def(hgfp)) continue;
      const ModuleMap* gp_down = c.t.pushdown_table(gp, hf);
      const ModuleMap* g_down = c.t.pushdown_table(g, h);
      if (!gp_down || !g_down) continue;
      const BilinearMap& left = *c.t.product_table(fp, hg);
      const BilinearMap& right = *c.t.product_table(f, h);
      const Module& target = c.t.group(hf);
      const std::size_t na = c.rank(f), nb = c.rank(hg);
      bool bad = false;
      for (std::size_t i = 0; i < na && !bad; ++i) {
        Vec ga = pull.matrix.column(i);
        for (std::size_t j = 0; j < nb && !bad; ++j) {
          Vec lhs = (*gp_down)(left(ga, unit_vector(nb, j)));
          Vec rhs = right(unit_vector(na, i), g_down->matrix.column(j));
          if (!target.equal(lhs, rhs)) {
            tally.miss(mismatch(Json{{"square", c.s.square_json(sq)}, {"h", c.lab(h)}}, {i, j}, lhs, rhs));
            bad = true;
          }
        }
      }
      if (!bad) tally.hit();
    }
  }
  tally.emit(r, "A123", "g'_*(g^*(a)*b) == a*g_*(b)");
}

void check_units(const Ctx& c, Report& r) {
  bool any = false;
  for (ObjId x = 0; x < static_cast<ObjId>(c.s.object_count()); ++x) any = any || c.t.unit(x).has_value();
  if (!any) {
    r.mark("units", Status::Skipped, "no unit data");
    return;
  }
  Tally left, right, stable;
  const auto m = static_cast<MorId>(c.s.morphism_count());
  for (MorId f = 0; f < m; ++f) {
    if (!c.def(f)) continue;
    const ObjId x = c.s.source(f), y = c.s.target(f);
    const Module& b = c.t.group(f);
    const std::size_t n = b.rank();
    const MorId idx = c.s.identity(x), idy = c.s.identity(y);
    if (c.def(idx) && c.t.unit(x)) {
      Matrix lm = c.t.product_table(idx, f)->left_multiplication(*c.t.unit(x));
      std::size_t col = 0;
      if (same_map(b, lm, Matrix::identity(c.t.ring(), n), col))
        left.hit();
      else
        left.miss(mismatch(Json{{"f", c.lab(f)}}, {col}, lm.column(col), unit_vector(n, col)));
    }
    if (c.def(idy) && c.t.unit(y)) {
      Matrix rm = c.t.product_table(f, idy)->right_multiplication(*c.t.unit(y));
      std::size_t col = 0;
      if (same_map(b, rm, Matrix::identity(c.t.ring(), n), col))
        right.hit();
      else
        right.miss(mismatch(Json{{"f", c.lab(f)}}, {col}, rm.column(col), unit_vector(n, col)));
    }
  }
  for (SqId q = 0; q < static_cast<SqId>(c.s.square_count()); ++q) {
    const Square& sq = c.s.square(q);
    if (!c.s.is_identity(sq.right) || !c.s.is_identity(sq.left) || !c.def(sq.right) || !c.def(sq.left)) continue;
    const ObjId x = c.s.source(sq.right), xp = c.s.source(sq.left);
    if (!c.t.unit(x) || !c.t.unit(xp)) continue;
    Vec lhs = c.t.pullback(q, *c.t.unit(x));
    if (c.t.group(sq.left).equal(lhs, *c.t.unit(xp)))
      stable.hit();
    else
      stable.miss(mismatch(Json{{"square", c.s.square_json(sq)}}, {}, lhs, *c.t.unit(xp)));
  }
  left.emit(r, "unit_left", "1_X * a == a");
  right.emit(r, "unit_right", "a * 1_Y == a");
  stable.emit(r, "unit_pullback", "g^*(1_X) == 1_X'");
}

}  // namespace

Report check_grading(const BivariantTheory& t) {
  Report r(t.name() + ".grading");
  if (!t.grading()) {
    r.mark("grading", Status::Skipped, "ungraded");
    return r;
  }
  const Grading& gr = *t.grading();
  const Site& s = t.site();
  Ctx c{t, s};
  Tally prod, down, pull;
  const auto m = static_cast<MorId>(s.morphism_count());
  for (MorId f = 0; f < m; ++f)
    for (MorId g = 0; g < m; ++g) {
      if (const BilinearMap* p = t.product_table(f, g)) {
        MorId gf = s.compose(g, f);
        const auto &df = t.degrees(f), &dg = t.degrees(g), &dgf = t.degrees(gf);
        bool bad = false;
        for (std::size_t k = 0; k < dgf.size() && !bad; ++k)
          for (std::size_t i = 0; i < df.size() && !bad; ++i)
            for (std::size_t j = 0; j < dg.size() && !bad; ++j)
              if (!p->at(k, i, j).is_zero() && !gr.same(dgf[k], df[i] + dg[j])) {
                prod.miss(Json{{"f", c.lab(f)}, {"g", c.lab(g)}, {"basis", {i, j, k}}});
                bad = true;
              }
        if (!bad) prod.hit();
      }
      if (const ModuleMap* p = t.pushdown_table(f, g)) {
        MorId gf = s.compose(g, f);
        const auto &ds = t.degrees(gf), &dt = t.degrees(g);
        bool bad = false;
        for (std::size_t k = 0; k < dt.size() && !bad; ++k)
          for (std::size_t i = 0; i < ds.size() && !bad; ++i)
            if (!p->matrix(k, i).is_zero() && !gr.same(dt[k], ds[i])) {
              down.miss(Json{{"f", c.lab(f)}, {"g", c.lab(g)}, {"basis", {i, k}}});
              bad = true;
            }
        if (!bad) down.hit();
      }
    }
  for (SqId q = 0; q < static_cast<SqId>(s.square_count()); ++q) {
    const ModuleMap* p = t.pullback_table(q);
    if (!p) continue;
    const auto &ds = t.degrees(s.square(q).right), &dt = t.degrees(s.square(q).left);
    bool bad = false;
    for (std::size_t k = 0; k < dt.size() && !bad; ++k)
      for (std::size_t i = 0; i < ds.size() && !bad; ++i)
        if (!p->matrix(k, i).is_zero() && !gr.same(dt[k], ds[i])) {
          pull.miss(Json{{"square", s.square_json(s.square(q))}, {"basis", {i, k}}});
          bad = true;
        }
    if (!bad) pull.hit();
  }
  prod.emit(r, "grading_product", "degrees add");
  down.emit(r, "grading_pushdown", "degree preserved");
  pull.emit(r, "grading_pullback", "degree preserved");
  return r;
}

Report check_axioms(const BivariantTheory& t) {
  Report r(t.name() + ".axioms");
  Ctx c{t, t.site()};
  check_a1(c, r);
  check_a2(c, r);
  check_a3(c, r);
  check_a12(c, r);
  check_a13_a23(c, r);
  check_a123(c, r);
  check_units(c, r);
  if (t.grading()) r.append(check_grading(t));
  return r;
}

Report check_commutativity(const BivariantTheory& t) {
  Report r(t.name() + ".commutativity");
  if (t.commutativity() == Commutativity::None) {
    r.mark("commutativity", Status::Skipped, "theory declares no commutativity");
    return r;
  }
  const bool skew = t.commutativity() == Commutativity::Skew;
  const Site& s = t.site();
  Ctx c{t, s};
  Tally tally;
  std::uint64_t no_transpose = 0;
  for (SqId q = 0; q < static_cast<SqId>(s.square_count()); ++q) {
    const Square& sq = s.square(q);
    auto tq = s.find_square(transpose(sq));
    if (!tq) {
      ++no_transpose;
      continue;
    }
    const MorId f = sq.right, g = sq.bottom, fp = sq.left, gp = sq.top;
    const MorId diag = c.comp(g, fp);
    if (!c.def(f) || !c.def(g) || !c.def(fp) || !c.def(gp) || !c.def(diag)) continue;
    const ModuleMap& pa = *t.pullback_table(q);
    const ModuleMap& pb = *t.pullback_table(*tq);
    const BilinearMap& left = *t.product_table(fp, g);
    const BilinearMap& right = *t.product_table(gp, f);
    const Module& target = t.group(diag);
    const auto &da = t.degrees(f), &db = t.degrees(g);
    const std::size_t na = c.rank(f), nb = c.rank(g);
    bool bad = false;
    for (std::size_t i = 0; i < na && !bad; ++i)
      for (std::size_t j = 0; j < nb && !bad; ++j) {
        Vec lhs = left(pa.matrix.column(i), unit_vector(nb, j));
        Vec rhs = right(pb.matrix.column(j), unit_vector(na, i));
        const bool odd = skew && !da.empty() && !db.empty() && (da[i] * db[j]) % 2 != 0;
        if (odd) rhs = vec_scale(t.ring(), rhs, Scalar(-1));
        if (!target.equal(lhs, rhs)) {
          tally.miss(mismatch(Json{{"square", s.square_json(sq)}, {"sign", odd ? -1 : 1}}, {i, j}, lhs, rhs));
          bad = true;
        }
      }
    if (!bad) tally.hit();
  }
  std::string note = skew ? "g^*(a)*b == (-1)^(|a||b|) f^*(b)*a" : "g^*(a)*b == f^*(b)*a";
  if (skew && !t.grading()) note += "; ungraded, all degrees even";
  if (no_transpose) note += "; " + std::to_string(no_transpose) + " squares without listed transpose";
  if (tally.checked == 0) note += "; vacuous";
  tally.emit(r, "commutativity", note);
  return r;
}

}  // namespace bvw
