#include "bvw/simple/simple.hpp"

#include "bvw/error.hpp"

namespace bvw {

namespace {

bool same_columns(const Module& m, const Matrix& a, const Matrix& b, std::size_t& col) {
  for (col = 0; col < a.cols(); ++col)
    if (!m.equal(a.column(col), b.column(col))) return false;
  return true;
}

Json vec_witness(Json w, const std::vector<std::size_t>& basis, const Vec& lhs, const Vec& rhs) {
  w["basis"] = basis;
  w["lhs"] = vec_str(lhs);
  w["rhs"] = vec_str(rhs);
  return w;
}

struct Shape {
  const SimpleFunctorData& d;
  const Site& s;

  const RingData& ring(ObjId x) const { return d.rings[static_cast<std::size_t>(x)]; }
  const ModuleMap& pull(MorId f) const { return d.pullback[static_cast<std::size_t>(f)]; }
  const ModuleMap* push(MorId f) const {
    const auto& p = d.pushforward[static_cast<std::size_t>(f)];
    return p ? &*p : nullptr;
  }
  Vec mul(ObjId x, const Vec& a, const Vec& b) const { return ring(x).multiplication(a, b); }
  std::size_t rank(ObjId x) const { return ring(x).module.rank(); }
  std::string lab(MorId f) const { return s.morphism_label(f); }
};

void require_shapes(const SimpleFunctorData& d) {
  const Site& s = *d.site;
  auto bad = [](const std::string& w) { throw Error(ErrorKind::InvalidArgument, "functor data: " + w); };
  if (d.rings.size() != s.object_count()) bad("one ring per object required");
  if (d.pullback.size() != s.morphism_count()) bad("one pull-back per morphism required");
  if (d.pushforward.size() != s.morphism_count()) bad("push-forward table must be indexed by morphism");
  for (std::size_t x = 0; x < d.rings.size(); ++x) {
    const RingData& r = d.rings[x];
    if (!(r.module.ring() == d.ring)) bad("ring of " + s.object_label(static_cast<ObjId>(x)) + " has the wrong coefficients");
    if (!(r.multiplication.left == r.module) || !(r.multiplication.right == r.module) || !(r.multiplication.target == r.module))
      bad("multiplication of " + s.object_label(static_cast<ObjId>(x)) + " has the wrong modules");
    if (r.unit.size() != r.module.rank()) bad("unit of " + s.object_label(static_cast<ObjId>(x)) + " has the wrong length");
  }
  for (MorId f = 0; f < static_cast<MorId>(s.morphism_count()); ++f) {
    const auto x = static_cast<std::size_t>(s.source(f)), y = static_cast<std::size_t>(s.target(f));
    const ModuleMap& p = d.pullback[static_cast<std::size_t>(f)];
    if (!(p.source == d.rings[y].module) || !(p.target == d.rings[x].module))
      bad("pull-back along " + s.morphism_label(f) + " has the wrong modules");
    const auto& q = d.pushforward[static_cast<std::size_t>(f)];
    if (s.confined(f) && !q) bad("no push-forward along confined " + s.morphism_label(f));
    if (!s.confined(f) && q) bad("push-forward along non-confined " + s.morphism_label(f));
    if (q && (!(q->source == d.rings[x].module) || !(q->target == d.rings[y].module)))
      bad("push-forward along " + s.morphism_label(f) + " has the wrong modules");
  }
}

void check_rings(const Shape& c, Report& r) {
  Tally assoc, unit, comm;
  for (ObjId x = 0; x < static_cast<ObjId>(c.s.object_count()); ++x) {
    const RingData& R = c.ring(x);
    const std::size_t n = c.rank(x);
    bool a_ok = true, u_ok = true, c_ok = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Vec ei = unit_vector(n, i), ej = unit_vector(n, j);
        Vec ij = c.mul(x, ei, ej);
        if (c_ok && !R.module.equal(ij, c.mul(x, ej, ei))) {
          comm.miss(vec_witness(Json{{"object", c.s.object_label(x)}}, {i, j}, ij, c.mul(x, ej, ei)));
          c_ok = false;
        }
        for (std::size_t k = 0; k < n && a_ok; ++k) {
          Vec ek = unit_vector(n, k);
          Vec lhs = c.mul(x, ij, ek), rhs = c.mul(x, ei, c.mul(x, ej, ek));
          if (!R.module.equal(lhs, rhs)) {
            assoc.miss(vec_witness(Json{{"object", c.s.object_label(x)}}, {i, j, k}, lhs, rhs));
            a_ok = false;
          }
        }
      }
    for (std::size_t i = 0; i < n && u_ok; ++i) {
      Vec ei = unit_vector(n, i);
      Vec l = c.mul(x, R.unit, ei), rr = c.mul(x, ei, R.unit);
      if (!R.module.equal(l, ei) || !R.module.equal(rr, ei)) {
        unit.miss(vec_witness(Json{{"object", c.s.object_label(x)}}, {i}, l, rr));
        u_ok = false;
      }
    }
    if (a_ok) assoc.hit();
    if (u_ok) unit.hit();
    if (c_ok) comm.hit();
  }
  assoc.emit(r, "SB1_ring_associative");
  unit.emit(r, "SB1_ring_unit");
  if (comm.failed)
    r.add({"rings_commutative", Status::Skipped, comm.checked, comm.witness, "not all rings commute; no commutativity declared"});
  else
    comm.emit(r, "rings_commutative");
}

void check_sb1(const Shape& c, Report& r) {
  Tally ident, comp, mult, unit;
  const auto m = static_cast<MorId>(c.s.morphism_count());
  for (ObjId x = 0; x < static_cast<ObjId>(c.s.object_count()); ++x) {
    const ModuleMap& p = c.pull(c.s.identity(x));
    std::size_t col = 0;
    Matrix one = Matrix::identity(c.d.ring, c.rank(x));
    if (same_columns(c.ring(x).module, p.matrix, one, col))
      ident.hit();
    else
      ident.miss(vec_witness(Json{{"object", c.s.object_label(x)}}, {col}, p.matrix.column(col), one.column(col)));
  }
  for (MorId f = 0; f < m; ++f) {
    const ObjId x = c.s.source(f), y = c.s.target(f);
    const ModuleMap& pf = c.pull(f);
    for (MorId g : c.s.morphisms_from(y)) {
      const MorId gf = c.s.compose(g, f);
      if (gf < 0) continue;
      Matrix rhs = pf.matrix * c.pull(g).matrix;
      std::size_t col = 0;
      if (same_columns(c.ring(x).module, c.pull(gf).matrix, rhs, col))
        comp.hit();
      else
        comp.miss(vec_witness(Json{{"f", c.lab(f)}, {"g", c.lab(g)}}, {col}, c.pull(gf).matrix.column(col), rhs.column(col)));
    }
    const std::size_t ny = c.rank(y);
    bool ok = true;
    for (std::size_t i = 0; i < ny && ok; ++i)
      for (std::size_t j = 0; j < ny && ok; ++j) {
        Vec lhs = pf(c.mul(y, unit_vector(ny, i), unit_vector(ny, j)));
        Vec rhs = c.mul(x, pf.matrix.column(i), pf.matrix.column(j));
        if (!c.ring(x).module.equal(lhs, rhs)) {
          mult.miss(vec_witness(Json{{"f", c.lab(f)}}, {i, j}, lhs, rhs));
          ok = false;
        }
      }
    if (ok) mult.hit();
    Vec u = pf(c.ring(y).unit);
    if (c.ring(x).module.equal(u, c.ring(x).unit))
      unit.hit();
    else
      unit.miss(vec_witness(Json{{"f", c.lab(f)}}, {}, u, c.ring(x).unit));
  }
  ident.emit(r, "SB1_identity", "id^* == id");
  comp.emit(r, "SB1_composition", "(g*f)^* == f^* g^*");
  mult.emit(r, "SB1_multiplicative", "f^*(a b) == f^*(a) f^*(b)");
  unit.emit(r, "SB1_unital", "f^*(1) == 1");
}

void check_sb2(const Shape& c, Report& r) {
  Tally ident, comp;
  for (ObjId x = 0; x < static_cast<ObjId>(c.s.object_count()); ++x) {
    const ModuleMap* p = c.push(c.s.identity(x));
    if (!p) continue;
    std::size_t col = 0;
    Matrix one = Matrix::identity(c.d.ring, c.rank(x));
    if (same_columns(c.ring(x).module, p->matrix, one, col))
      ident.hit();
    else
      ident.miss(vec_witness(Json{{"object", c.s.object_label(x)}}, {col}, p->matrix.column(col), one.column(col)));
  }
  for (MorId f = 0; f < static_cast<MorId>(c.s.morphism_count()); ++f) {
    const ModuleMap* pf = c.push(f);
    if (!pf) continue;
    for (MorId g : c.s.morphisms_from(c.s.target(f))) {
      const ModuleMap* pg = c.push(g);
      const MorId gf = c.s.compose(g, f);
      if (!pg || gf < 0 || !c.push(gf)) continue;
      Matrix rhs = pg->matrix * pf->matrix;
      std::size_t col = 0;
      if (same_columns(c.ring(c.s.target(g)).module, c.push(gf)->matrix, rhs, col))
        comp.hit();
      else
        comp.miss(vec_witness(Json{{"f", c.lab(f)}, {"g", c.lab(g)}}, {col}, c.push(gf)->matrix.column(col), rhs.column(col)));
    }
  }
  ident.emit(r, "SB2_identity", "id_* == id");
  comp.emit(r, "SB2_composition", "(g*f)_* == g_* f_*");
}

// right: f_*(a f^*b) == f_*(a) b; left: f_*(f^*b a) == b f_*(a).
void check_projection(const Shape& c, Report& r, bool left, const std::string& name) {
  Tally tally;
  for (MorId f = 0; f < static_cast<MorId>(c.s.morphism_count()); ++f) {
    const ModuleMap* pf = c.push(f);
    if (!pf) continue;
    const ObjId x = c.s.source(f), y = c.s.target(f);
    const ModuleMap& pb = c.pull(f);
    const std::size_t nx = c.rank(x), ny = c.rank(y);
    bool ok = true;
    for (std::size_t i = 0; i < nx && ok; ++i) {
      Vec a = unit_vector(nx, i);
      Vec fa = (*pf)(a);
      for (std::size_t j = 0; j < ny && ok; ++j) {
        Vec b = unit_vector(ny, j);
        Vec fb = pb.matrix.column(j);
        Vec lhs = (*pf)(left ? c.mul(x, fb, a) : c.mul(x, a, fb));
        Vec rhs = left ? c.mul(y, b, fa) : c.mul(y, fa, b);
        if (!c.ring(y).module.equal(lhs, rhs)) {
          tally.miss(vec_witness(Json{{"f", c.lab(f)}}, {i, j}, lhs, rhs));
          ok = false;
        }
      }
    }
    if (ok) tally.hit();
  }
  tally.emit(r, name, left ? "f_*(f^*(b) a) == b f_*(a)" : "f_*(a f^*(b)) == f_*(a) b");
}

void check_sb4(const Shape& c, Report& r) {
  Tally tally;
  for (SqId q = 0; q < static_cast<SqId>(c.s.square_count()); ++q) {
    const Square& sq = c.s.square(q);
    const ModuleMap* pf = c.push(sq.right);
    const ModuleMap* pfp = c.push(sq.left);
    if (!pf) continue;
    if (!pfp) {
      tally.miss(Json{{"square", c.s.square_json(sq)}, {"problem", "base change of a confined map is not confined"}});
      continue;
    }
    Matrix lhs = c.pull(sq.bottom).matrix * pf->matrix;
    Matrix rhs = pfp->matrix * c.pull(sq.top).matrix;
    std::size_t col = 0;
    if (same_columns(c.ring(c.s.source(sq.bottom)).module, lhs, rhs, col))
      tally.hit();
    else
      tally.miss(vec_witness(Json{{"square", c.s.square_json(sq)}}, {col}, lhs.column(col), rhs.column(col)));
  }
  tally.emit(r, "SB4", "g^* f_* == f'_* g'^*");
}

bool trivial_squares(const Site& s) {
  for (const Square& q : s.squares())
    if (!(s.is_identity(q.top) && s.is_identity(q.bottom)) && !(s.is_identity(q.left) && s.is_identity(q.right)))
      return false;
  for (MorId f = 0; f < static_cast<MorId>(s.morphism_count()); ++f)
    if (!s.confined(f)) return false;
  return true;
}

}  // namespace

Report check_sb(const SimpleFunctorData& d) {
  require_shapes(d);
  Report r("functor_data");
  const Shape c{d, *d.site};
  check_rings(c, r);
  check_sb1(c, r);
  check_sb2(c, r);
  check_projection(c, r, false, "SB3");
  check_sb4(c, r);
  if (d.two_sided) {
    check_projection(c, r, true, "SB5");
    Tally closed;
    for (const Square& q : c.s.squares())
      c.s.find_square(transpose(q)) ? closed.hit() : closed.miss(Json{{"square", c.s.square_json(q)}});
    closed.emit(r, "SB5_transpose_closed");
  } else {
    r.mark("SB5", Status::Skipped, "one-sided data");
  }
  if (trivial_squares(c.s))
    r.mark("regime", Status::Pass, "trivial squares: only identity squares listed and every map confined");
  return r;
}

std::shared_ptr<BivariantTheory> build_simple_theory(const SimpleFunctorData& d, const std::string& name) {
  Report sb = check_sb(d);
  for (const CheckEntry* e : sb.violations()) {
    if (e->name.rfind("SB5", 0) == 0) continue;
    throw Error(ErrorKind::SBViolation, e->name + " fails: " + e->witness.dump());
  }
  const bool commutative = sb.status_of("rings_commutative") == Status::Pass;
  const bool full = d.two_sided && sb.passed();
  const Site& s = *d.site;
  auto t = std::make_shared<BivariantTheory>(d.site, d.ring, full ? Flavor::Full : Flavor::Weak, name);
  const auto m = static_cast<MorId>(s.morphism_count());
  auto ring = [&](ObjId x) -> const RingData& { return d.rings[static_cast<std::size_t>(x)]; };
  for (MorId f = 0; f < m; ++f) {
    t->set_group(f, ring(s.source(f)).module);
    t->set_canonical_orientation(f, ring(s.source(f)).unit);
  }
  for (ObjId x = 0; x < static_cast<ObjId>(s.object_count()); ++x) t->set_unit(x, ring(x).unit);
  for (MorId f = 0; f < m; ++f) {
    const ObjId x = s.source(f), y = s.target(f);
    const BilinearMap& mul = ring(x).multiplication;
    const Matrix& pf = d.pullback[static_cast<std::size_t>(f)].matrix;
    const std::size_t nx = ring(x).module.rank(), ny = ring(y).module.rank();
    BilinearMap p(ring(x).module, ring(y).module, ring(x).module);
    for (std::size_t k = 0; k < nx; ++k)
      for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t l = 0; l < nx; ++l) {
          const Scalar& coef = mul.at(k, i, l);
          if (coef.is_zero()) continue;
          for (std::size_t j = 0; j < ny; ++j)
            if (!pf(l, j).is_zero()) d.ring.fma(p.at(k, i, j), coef, pf(l, j));
        }
    for (MorId g : s.morphisms_from(y)) t->set_product(f, g, p);
    if (const auto& push = d.pushforward[static_cast<std::size_t>(f)])
      for (MorId g : s.morphisms_from(y)) t->set_pushdown(f, g, *push);
  }
  for (SqId q = 0; q < static_cast<SqId>(s.square_count()); ++q)
    t->set_pullback(q, d.pullback[static_cast<std::size_t>(s.square(q).top)]);
  if (commutative) t->set_commutativity(Commutativity::Commutative);
  t->freeze();
  return t;
}

}  // namespace bvw
