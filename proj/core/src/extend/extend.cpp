#include "bvw/extend/extend.hpp"

#include "bvw/error.hpp"
#include "bvw/site/bar_functor.hpp"
#include "bvw/zexact/linalg.hpp"

#include <utility>

namespace bvw {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).str());
    rows.push_back(std::move(r));
  }
  return rows;
}

ModuleMap difference(const ModuleMap& a, const ModuleMap& b) { return ModuleMap(a.source, a.target, a.matrix - b.matrix); }

std::size_t rank_of(const BivariantTheory& t, MorId f) { return t.group(f).rank(); }

MorId to_pt(const BivariantTheory& t, ObjId x) { return map_to_point(t.site(), x); }

// x with theta * x == unit in the ring B(id_Y), checked on both sides.
std::optional<Vec> ring_inverse(const BivariantTheory& t, ObjId y, const Vec& theta) {
  const MorId id = t.site().identity(y);
  const auto& one = t.unit(y);
  if (!one) throw Error(ErrorKind::NotInvertible, "no unit over " + t.site().object_label(y));
  auto x = solve(t.left_product(id, theta, id), *one);
  if (!x) return std::nullopt;
  if (!t.group(id).equal(t.product(id, *x, id, theta), *one)) return std::nullopt;
  return x;
}

// Square (f, id_Y, f, id_X) used for the contravariant pull-back along f.
std::optional<SqId> contravariant_square(const Site& s, MorId f) {
  return s.find_square(Square{f, s.identity(s.target(f)), f, s.identity(s.source(f))});
}

}  // namespace

Json OrientationCertificate::to_json(const Site& s) const {
  Json j{{"object", s.object_label(object)}, {"h", vec_str(h)}, {"strong", strong}};
  Json inv = Json::object();
  for (const auto& [f, m] : inverses) inv[s.morphism_label(f)] = matrix_json(m.matrix);
  j["inverses"] = inv;
  if (!witness.is_null()) j["witness"] = witness;
  return j;
}

OrientationCertificate is_strong_orientation(const BivariantTheory& H, ObjId y, const Vec& h) {
  const Site& s = H.site();
  OrientationCertificate cert;
  cert.object = y;
  const MorId pt = map_to_point(s, y);
  cert.h = normalize_vec(H.ring(), h);
  if (!H.has_group(pt)) {
    cert.witness = Json{{"morphism", s.morphism_label(pt)}, {"reason", "no group"}};
    return cert;
  }
  for (MorId f : s.morphisms_into(y)) {
    if (!H.has_group(f)) continue;
    IsoResult r = is_isomorphism(H.right_product(f, pt, cert.h));
    if (!r.is_iso) {
      cert.witness = Json{{"morphism", s.morphism_label(f)}, {"reason", "product with h is not invertible"}};
      cert.inverses.clear();
      return cert;
    }
    cert.inverses.emplace(f, std::move(*r.inverse));
  }
  cert.strong = true;
  return cert;
}

Report check_naturality(const CovariantTransform& c) {
  require_transform_shapes(c);
  Report r("naturality of " + c.name);
  const BivariantTheory& F = *c.F;
  const BivariantTheory& H = *c.H;
  const Site& s = F.site();
  Tally t;
  for (MorId f = 0; f < static_cast<MorId>(s.morphism_count()); ++f) {
    if (!s.confined(f)) continue;
    const ObjId x = s.source(f), y = s.target(f);
    const MorId fb = c.bar.mor(f);
    const MorId pty = to_pt(F, y);
    const MorId ptyb = to_pt(H, c.bar.obj(y));
    const Module& out = H.group(ptyb);
    for (std::size_t i = 0; i < rank_of(F, to_pt(F, x)); ++i) {
      const Vec a = unit_vector(rank_of(F, to_pt(F, x)), i);
      const Vec lhs = c.maps[idx(y)](F.pushdown(f, pty, a));
      const Vec rhs = H.pushdown(fb, ptyb, c.maps[idx(x)](a));
      if (out.equal(lhs, rhs)) {
        t.hit();
        continue;
      }
      Json w{{"morphism", s.morphism_label(f)}, {"basis", i}, {"lhs", vec_str(lhs)}, {"rhs", vec_str(rhs)}};
      if (const ConcreteModel* m = s.model()) w["source_points"] = m->cardinality[idx(x)];
      t.miss(std::move(w));
    }
  }
  t.emit(r, "naturality");
  return r;
}

Report check_unit_condition(const CovariantTransform& c) {
  Report r("unit condition of " + c.name);
  const ObjId pt = c.F->site().final_object();
  const ObjId ptb = c.H->site().final_object();
  const auto& one = c.F->unit(pt);
  const auto& one_bar = c.H->unit(ptb);
  if (!one || !one_bar) {
    r.mark("unit_condition", Status::NotEvaluable, "a theory has no unit over the point");
    return r;
  }
  const Vec img = c.maps[idx(pt)](*one);
  if (c.H->group(c.H->site().identity(ptb)).equal(img, *one_bar))
    r.pass("unit_condition", 1);
  else
    r.fail("unit_condition", 1, Json{{"image", vec_str(img)}, {"unit", vec_str(*one_bar)}});
  return r;
}

Extender::Extender(CovariantTransform c, OrientationDatum o) : c_(std::move(c)), o_(std::move(o)) {
  require_transform_shapes(c_);
  const Site& s = F().site();
  if (o_.e.size() != s.object_count())
    throw Error(ErrorKind::InvalidArgument, "orientation datum needs one entry per object");
  certs_.resize(s.object_count());
  for (ObjId y = 0; y < static_cast<ObjId>(s.object_count()); ++y) {
    if (!o_.orientable(y)) continue;
    const Vec& ey = *o_.e[idx(y)];
    if (ey.size() != rank_of(F(), to_pt(F(), y)))
      throw Error(ErrorKind::InvalidArgument, "orientation over " + s.object_label(y) + " has the wrong length");
    certs_[idx(y)] = is_strong_orientation(H(), c_.bar.obj(y), this->c(y, ey));
  }
  gamma_.resize(s.morphism_count());
  for (MorId f = 0; f < static_cast<MorId>(s.morphism_count()); ++f) {
    if (!o_allowable(f)) continue;
    const ObjId x = s.source(f), y = s.target(f);
    const OrientationCertificate& cert = *certs_[idx(y)];
    if (!cert.strong) continue;
    const ModuleMap& cx = c_.maps[idx(x)];
    if (y == s.final_object()) {
      gamma_[idx(f)] = ModuleMap(F().group(f), H().group(c_.bar.mor(f)), cx.matrix);
      continue;
    }
    const ModuleMap times_e = F().right_product(f, to_pt(F(), y), *o_.e[idx(y)]);
    const auto inv = cert.inverses.find(c_.bar.mor(f));
    if (inv == cert.inverses.end()) continue;
    gamma_[idx(f)] = compose(inv->second, compose(cx, times_e));
  }
}

bool Extender::o_allowable(MorId f) const { return F().has_group(f) && o_.orientable(F().site().target(f)); }

std::vector<MorId> Extender::o_allowable_morphisms() const {
  std::vector<MorId> out;
  for (MorId f = 0; f < static_cast<MorId>(F().site().morphism_count()); ++f)
    if (o_allowable(f)) out.push_back(f);
  return out;
}

const OrientationCertificate* Extender::certificate(ObjId y) const {
  const auto& c = certs_.at(idx(y));
  return c ? &*c : nullptr;
}

const ModuleMap& Extender::gamma(MorId f) const {
  const Site& s = F().site();
  if (!F().has_group(f)) throw Error(ErrorKind::NotAllowable, s.morphism_label(f) + " is not allowable");
  const ObjId y = s.target(f);
  if (!o_.orientable(y)) throw Error(ErrorKind::NotOrientable, s.object_label(y) + " is not orientable");
  if (!certs_[idx(y)]->strong || !gamma_[idx(f)])
    throw Error(ErrorKind::MissingCertificate,
                "image of the orientation over " + s.object_label(y) + " is not a strong orientation");
  return *gamma_[idx(f)];
}

Extender Extender::with_gamma(MorId f, ModuleMap m) const {
  (void)gamma(f);
  Extender copy = *this;
  copy.gamma_[idx(f)] = std::move(m);
  return copy;
}

Vec Extender::c(ObjId x, const Vec& a) const { return c_.maps.at(idx(x))(a); }

std::vector<Extender::Condition> Extender::conditions(MorId f, std::vector<Json>& not_evaluable) const {
  const Site& s = F().site();
  std::vector<Condition> out;
  const ModuleMap& gf = gamma(f);
  for (SqId q : s.squares_with_right(f)) {
    const Square& sq = s.square(q);
    const MorId fp = sq.left;
    if (!o_allowable(fp)) continue;
    const ObjId xp = s.source(fp), yp = s.target(fp);
    const ModuleMap* pull = F().pullback_table(q);
    if (!pull) {
      not_evaluable.push_back(Json{{"square", s.square_label(q)}, {"reason", "no pull-back in F"}});
      continue;
    }
    const ModuleMap gp = compose(gamma(fp), *pull);
    const MorId ptyp = to_pt(F(), yp);
    const MorId fpb = c_.bar.mor(fp);
    const MorId ptypb = to_pt(H(), c_.bar.obj(yp));
    const std::size_t nb = rank_of(F(), ptyp);
    for (std::size_t j = 0; j < nb; ++j) {
      const Vec beta = unit_vector(nb, j);
      ModuleMap lhs = compose(c_.maps[idx(xp)], compose(F().right_product(fp, ptyp, beta), *pull));
      ModuleMap rhs = compose(H().right_product(fpb, ptypb, c(yp, beta)), gp);
      out.push_back(Condition{q, j, difference(lhs, rhs)});
    }
    const auto qb = c_.bar.map_square(q);
    const ModuleMap* hpull = qb ? H().pullback_table(*qb) : nullptr;
    if (!hpull) {
      not_evaluable.push_back(Json{{"square", s.square_label(q)}, {"condition", "pullback"},
                                   {"reason", "image square has no pull-back in H"}});
      continue;
    }
    out.push_back(Condition{q, std::nullopt, difference(gp, compose(*hpull, gf))});
  }
  return out;
}

Json Extender::condition_json(MorId f, const Condition& k) const {
  const Site& s = F().site();
  Json w{{"morphism", s.morphism_label(f)}, {"square", s.square_label(k.square)},
         {"condition", k.beta ? "product" : "pullback"}};
  if (k.beta) w["beta"] = *k.beta;
  return w;
}

MembershipResult Extender::membership(MorId f, const Vec& alpha) const {
  if (!o_allowable(f))
    throw Error(ErrorKind::NotOAllowable, F().site().morphism_label(f) + " is not o-allowable");
  if (alpha.size() != rank_of(F(), f)) throw Error(ErrorKind::InvalidArgument, "element has the wrong length");
  MembershipResult res;
  for (const Condition& k : conditions(f, res.not_evaluable)) {
    const Vec d = k.lhs_minus_rhs(alpha);
    if (k.lhs_minus_rhs.target.is_zero(d)) continue;
    res.member = false;
    res.witness = condition_json(f, k);
    res.witness["alpha"] = vec_str(alpha);
    res.witness["difference"] = vec_str(d);
    break;
  }
  return res;
}

FprimeResult Extender::compute_Fprime(MorId f) const {
  if (!o_allowable(f))
    throw Error(ErrorKind::NotOAllowable, F().site().morphism_label(f) + " is not o-allowable");
  FprimeResult res;
  std::vector<Submodule> parts{Submodule::full(F().ring(), rank_of(F(), f))};
  for (const Condition& k : conditions(f, res.not_evaluable)) {
    parts.push_back(kernel(k.lhs_minus_rhs));
    ++res.conditions;
  }
  res.module = intersect(parts);
  return res;
}

ModuleMap define_gamma(const Extender& e, MorId f) { return e.gamma(f); }

Report check_external(const Extender& e) {
  const BivariantTheory& F = e.F();
  const BivariantTheory& H = e.H();
  const Site& s = F.site();
  const BarFunctor& bar = e.transform().bar;
  Report r("external products of " + e.transform().name);
  Tally t;
  std::uint64_t skipped = 0;
  Json skipped_example;
  for (ObjId x = 0; x < static_cast<ObjId>(s.object_count()); ++x) {
    const MorId ptx = to_pt(F, x);
    const std::size_t na = rank_of(F, ptx);
    for (SqId q : s.squares_with_right(ptx)) {
      const Square& sq = s.square(q);
      if (!e.o_allowable(sq.left)) continue;
      const ObjId xp = s.source(sq.left), yp = s.target(sq.left);
      const auto qb = bar.map_square(q);
      if (!qb || !H.pullback_table(*qb)) {
        if (skipped++ == 0) skipped_example = Json{{"square", s.square_label(q)}};
        continue;
      }
      const MorId fpb = bar.mor(sq.left), bb = bar.mor(sq.bottom);
      const Module& out = H.group(to_pt(H, bar.obj(xp)));
      const std::size_t nb = rank_of(F, to_pt(F, yp));
      for (std::size_t i = 0; i < na; ++i) {
        const Vec a = unit_vector(na, i);
        const Vec pulled = F.pullback(q, a);
        const Vec pulled_bar = H.pullback(*qb, e.c(x, a));
        for (std::size_t j = 0; j < nb; ++j) {
          const Vec b = unit_vector(nb, j);
          const Vec lhs = e.c(xp, F.product(sq.left, pulled, sq.bottom, b));
          const Vec rhs = H.product(fpb, pulled_bar, bb, e.c(yp, b));
          if (out.equal(lhs, rhs)) {
            t.hit();
            continue;
          }
          t.miss(Json{{"square", s.square_label(q)}, {"alpha", i}, {"beta", j}, {"lhs", vec_str(lhs)},
                      {"rhs", vec_str(rhs)}, {"points", s.object_label(xp)}});
        }
      }
    }
  }
  t.emit(r, "external");
  if (skipped > 0) {
    auto& en = r.mark("external_not_evaluable", Status::NotEvaluable, "image squares without pull-back in H");
    en.checked = skipped;
    en.witness = skipped_example;
  }
  return r;
}

Report check_pushdown_compat(const Extender& e) {
  const BivariantTheory& F = e.F();
  const BivariantTheory& H = e.H();
  const Site& s = F.site();
  const BarFunctor& bar = e.transform().bar;
  Report r("push-down compatibility of " + e.transform().name);
  Tally t;
  for (MorId g = 0; g < static_cast<MorId>(s.morphism_count()); ++g) {
    if (!s.confined(g)) continue;
    for (MorId h : s.morphisms_from(s.target(g))) {
      if (!e.o_allowable(h)) continue;
      const MorId f = s.compose(h, g);
      if (f < 0 || !e.o_allowable(f)) continue;
      const ModuleMap& gf = e.gamma(f);
      const ModuleMap& gh = e.gamma(h);
      const std::size_t n = rank_of(F, f);
      for (std::size_t i = 0; i < n; ++i) {
        const Vec a = unit_vector(n, i);
        const Vec lhs = H.pushdown(bar.mor(g), bar.mor(h), gf(a));
        const Vec rhs = gh(F.pushdown(g, h, a));
        if (gh.target.equal(lhs, rhs)) {
          t.hit();
          continue;
        }
        t.miss(Json{{"confined", s.morphism_label(g)}, {"morphism", s.morphism_label(h)}, {"basis", i},
                    {"lhs", vec_str(lhs)}, {"rhs", vec_str(rhs)}});
      }
    }
  }
  t.emit(r, "pushdown_compat");
  return r;
}

const Submodule& ExtensionResult::Fprime_of(MorId f) const {
  const auto& p = Fprime.at(idx(f));
  if (!p) throw Error(ErrorKind::NotOAllowable, engine->F().site().morphism_label(f) + " is not o-allowable");
  return p->module;
}

Json ExtensionResult::to_json() const {
  const Site& s = engine->F().site();
  Json j{{"transform", engine->transform().name}, {"orientation", engine->orientation().name}};
  Json oa = Json::array();
  Json gam = Json::object();
  Json fp = Json::object();
  for (MorId f : o_allowable) {
    const std::string& l = s.morphism_label(f);
    oa.push_back(l);
    gam[l] = matrix_json(gamma(f).matrix);
    const FprimeResult& p = *Fprime[idx(f)];
    Json gens = Json::array();
    for (const Vec& v : p.module.generators()) gens.push_back(vec_str(v));
    Json e{{"generators", gens}, {"full", p.module.contains(Submodule::full(p.module.ring(), p.module.ambient()))},
           {"conditions", p.conditions}};
    if (!p.not_evaluable.empty()) e["not_evaluable"] = p.not_evaluable;
    fp[l] = e;
  }
  j["o_allowable"] = oa;
  j["gamma"] = gam;
  j["Fprime"] = fp;
  Json certs = Json::object();
  for (ObjId y = 0; y < static_cast<ObjId>(s.object_count()); ++y)
    if (const OrientationCertificate* c = engine->certificate(y))
      certs[s.object_label(y)] = c->to_json(engine->H().site());
  j["certificates"] = certs;
  j["external_products"] = external_products;
  j["hypotheses"] = hypotheses.to_json();
  j["ledger"] = ledger.to_json();
  return j;
}

ExtensionResult run_extension(const CovariantTransform& c, const OrientationDatum& o) {
  Report nat = check_naturality(c);
  if (!nat.passed())
    throw Error(ErrorKind::NaturalityViolation, nat.find("naturality")->witness.dump());
  const BivariantTheory& F = *c.F;
  const Site& s = F.site();
  const ObjId pt = s.final_object();
  if (o.e.size() != s.object_count() || !o.orientable(pt))
    throw Error(ErrorKind::OrientationViolation, "the point must be orientable");
  const auto& one = F.unit(pt);
  if (!one || !F.group(s.identity(pt)).equal(*o.e[idx(pt)], *one))
    throw Error(ErrorKind::OrientationViolation, "orientation over the point is not its unit");

  auto engine = std::make_shared<const Extender>(c, o);
  const Extender& e = *engine;
  std::uint64_t orientable = 0;
  for (ObjId y = 0; y < static_cast<ObjId>(s.object_count()); ++y) {
    const OrientationCertificate* cert = e.certificate(y);
    if (!cert) continue;
    ++orientable;
    if (!cert->strong)
      throw Error(ErrorKind::OrientationViolation,
                  "image of the orientation over " + s.object_label(y) + " is not strong: " + cert->witness.dump());
  }

  ExtensionResult res;
  res.engine = engine;
  res.hypotheses = Report("hypotheses for " + c.name);
  res.hypotheses.append(validate_bar_functor(c.bar), "bar.");
  res.hypotheses.append(nat);
  res.hypotheses.append(check_unit_condition(c));
  res.hypotheses.pass("strong_orientations", orientable);
  const Report ext = check_external(e);
  res.hypotheses.append(ext);
  res.external_products = ext.passed();

  res.o_allowable = e.o_allowable_morphisms();
  res.Fprime.resize(s.morphism_count());
  std::uint64_t not_evaluable = 0;
  for (MorId f : res.o_allowable) {
    res.Fprime[idx(f)] = e.compute_Fprime(f);
    not_evaluable += res.Fprime[idx(f)]->not_evaluable.size();
  }

  const BivariantTheory& H = e.H();
  const BarFunctor& bar = c.bar;
  Report& L = res.ledger;
  L = Report("extension ledger for " + c.name);

  Tally star;
  for (ObjId x = 0; x < static_cast<ObjId>(s.object_count()); ++x) {
    const MorId ptx = to_pt(F, x);
    if (e.gamma(ptx).matrix == c.maps[idx(x)].matrix)
      star.hit();
    else
      star.miss(Json{{"object", s.object_label(x)}});
  }
  star.emit(L, "gamma_star");
  L.append(check_pushdown_compat(e));

  // Pull-back stability and compatibility.
  Tally pb_closed, pb_gamma;
  for (MorId f : res.o_allowable) {
    const ModuleMap& gf = e.gamma(f);
    for (const Vec& a : res.Fprime_of(f).generators())
      for (SqId q : s.squares_with_right(f)) {
        const MorId fp = s.square(q).left;
        if (!e.o_allowable(fp)) continue;
        const Vec x = F.pullback(q, a);
        Json w{{"square", s.square_label(q)}, {"alpha", vec_str(a)}};
        if (res.Fprime_of(fp).contains(x))
          pb_closed.hit();
        else
          pb_closed.miss(w);
        const auto qb = bar.map_square(q);
        if (!qb || !H.pullback_table(*qb)) continue;
        const Vec lhs = e.gamma(fp)(x);
        const Vec rhs = H.pullback(*qb, gf(a));
        if (H.group(bar.mor(fp)).equal(lhs, rhs)) {
          pb_gamma.hit();
        } else {
          w["lhs"] = vec_str(lhs);
          w["rhs"] = vec_str(rhs);
          pb_gamma.miss(w);
        }
      }
  }
  pb_closed.emit(L, "Fprime_pullback_closed");
  pb_gamma.emit(L, "gamma_pullback");

  // Products.
  Tally pr_closed, pr_gamma, pt_law;
  for (MorId f : res.o_allowable) {
    const ObjId y = s.target(f);
    const ModuleMap& gf = e.gamma(f);
    // Elements satisfying the product condition against F_*(Y) only.
    std::vector<Submodule> parts{Submodule::full(F.ring(), rank_of(F, f))};
    const MorId pty = to_pt(F, y);
    for (std::size_t j = 0; j < rank_of(F, pty); ++j) {
      const Vec b = unit_vector(rank_of(F, pty), j);
      ModuleMap lhs = compose(c.maps[idx(s.source(f))], F.right_product(f, pty, b));
      ModuleMap rhs = compose(H.right_product(bar.mor(f), to_pt(H, bar.obj(y)), e.c(y, b)), gf);
      parts.push_back(kernel(difference(lhs, rhs)));
    }
    const Submodule pt_cond = intersect(parts);
    for (MorId g : s.morphisms_from(y)) {
      if (!e.o_allowable(g)) continue;
      const MorId gfm = s.compose(g, f);
      if (gfm < 0 || !e.o_allowable(gfm)) continue;
      const ModuleMap& gg = e.gamma(g);
      const ModuleMap& ggf = e.gamma(gfm);
      const Module& out = H.group(bar.mor(gfm));
      auto check = [&](Tally& closed, Tally& law, const Vec& a, const Vec& b) {
        const Vec p = F.product(f, a, g, b);
        Json w{{"morphisms", {s.morphism_label(f), s.morphism_label(g)}}, {"alpha", vec_str(a)}, {"beta", vec_str(b)}};
        if (&closed == &pr_closed) {
          if (res.Fprime_of(gfm).contains(p))
            closed.hit();
          else
            closed.miss(w);
        }
        const Vec lhs = ggf(p);
        const Vec rhs = H.product(bar.mor(f), gf(a), bar.mor(g), gg(b));
        if (out.equal(lhs, rhs)) {
          law.hit();
        } else {
          w["lhs"] = vec_str(lhs);
          w["rhs"] = vec_str(rhs);
          law.miss(w);
        }
      };
      for (const Vec& a : res.Fprime_of(f).generators())
        for (const Vec& b : res.Fprime_of(g).generators()) check(pr_closed, pr_gamma, a, b);
      Tally unused;
      for (const Vec& a : pt_cond.generators())
        for (std::size_t j = 0; j < rank_of(F, g); ++j) check(unused, pt_law, a, unit_vector(rank_of(F, g), j));
    }
  }
  pr_closed.emit(L, "Fprime_product_closed");
  pr_gamma.emit(L, "gamma_product");
  pt_law.emit(L, "gamma_product_point_condition");

  // Push-downs.
  Tally pd_closed, pd_gamma;
  for (MorId f = 0; f < static_cast<MorId>(s.morphism_count()); ++f) {
    if (!s.confined(f)) continue;
    for (MorId g : s.morphisms_from(s.target(f))) {
      if (!e.o_allowable(g)) continue;
      const MorId gfm = s.compose(g, f);
      if (gfm < 0 || !e.o_allowable(gfm)) continue;
      for (const Vec& a : res.Fprime_of(gfm).generators()) {
        const Vec q = F.pushdown(f, g, a);
        Json w{{"confined", s.morphism_label(f)}, {"morphism", s.morphism_label(g)}, {"alpha", vec_str(a)}};
        if (res.Fprime_of(g).contains(q))
          pd_closed.hit();
        else
          pd_closed.miss(w);
        const Vec lhs = e.gamma(g)(q);
        const Vec rhs = H.pushdown(bar.mor(f), bar.mor(g), e.gamma(gfm)(a));
        if (H.group(bar.mor(g)).equal(lhs, rhs)) {
          pd_gamma.hit();
        } else {
          w["lhs"] = vec_str(lhs);
          w["rhs"] = vec_str(rhs);
          pd_gamma.miss(w);
        }
      }
    }
  }
  pd_closed.emit(L, "Fprime_pushdown_closed");
  pd_gamma.emit(L, "gamma_pushdown");

  Tally full;
  for (ObjId x = 0; x < static_cast<ObjId>(s.object_count()); ++x) {
    const Submodule& m = res.Fprime_of(to_pt(F, x));
    if (m.contains(Submodule::full(m.ring(), m.ambient())))
      full.hit();
    else
      full.miss(Json{{"object", s.object_label(x)}, {"generators", m.size()}});
  }
  if (res.external_products) {
    full.emit(L, "Fprime_star_full");
  } else {
    auto& en = L.mark("Fprime_star_full", Status::Skipped, "external products are not respected");
    en.checked = full.checked;
    en.witness = full.witness;
  }
  if (not_evaluable > 0) {
    auto& en = L.mark("Fprime_conditions", Status::NotEvaluable, "conditions skipped for missing H data");
    en.checked = not_evaluable;
  }
  return res;
}

GammaCandidate candidate_from(const ExtensionResult& r) {
  const std::size_t n = r.engine->F().site().morphism_count();
  GammaCandidate c;
  c.name = "gamma";
  c.domain.resize(n);
  c.gamma.resize(n);
  for (MorId f : r.o_allowable) {
    c.domain[idx(f)] = r.Fprime_of(f);
    c.gamma[idx(f)] = r.gamma(f);
  }
  return c;
}

Report check_maximality(const ExtensionResult& r, const GammaCandidate& cand) {
  const Extender& e = *r.engine;
  const BivariantTheory& F = e.F();
  const BivariantTheory& H = e.H();
  const Site& s = F.site();
  const BarFunctor& bar = e.transform().bar;
  Report rep("maximality against " + cand.name);
  Tally cov, eq, contain, agree;
  std::uint64_t undefined = 0;
  for (MorId f : r.o_allowable) {
    const auto& dom = cand.domain.at(idx(f));
    const auto& g = cand.gamma.at(idx(f));
    if (!dom || !g) {
      ++undefined;
      continue;
    }
    const ObjId x = s.source(f), y = s.target(f);
    const MorId pty = to_pt(F, y);
    const Vec& ey = *e.orientation().e[idx(y)];
    const Vec cey = e.c(y, ey);
    const Module& out = H.group(to_pt(H, bar.obj(x)));
    const Module& tgt = H.group(bar.mor(f));
    if (y == s.final_object()) {
      const bool whole = dom->contains(Submodule::full(dom->ring(), dom->ambient()));
      bool same = true;
      for (std::size_t i = 0; i < rank_of(F, f) && same; ++i) {
        const Vec a = unit_vector(rank_of(F, f), i);
        same = tgt.equal((*g)(a), e.c(x, a));
      }
      if (whole && same)
        cov.hit();
      else
        cov.miss(Json{{"morphism", s.morphism_label(f)}, {"full_domain", whole}, {"equals_c", same}});
    }
    for (const Vec& a : dom->generators()) {
      const Vec lhs = e.c(x, F.product(f, a, pty, ey));
      const Vec ga = (*g)(a);
      const Vec rhs = H.product(bar.mor(f), ga, to_pt(H, bar.obj(y)), cey);
      Json w{{"morphism", s.morphism_label(f)}, {"alpha", vec_str(a)}};
      if (out.equal(lhs, rhs)) {
        eq.hit();
      } else {
        Json ww = w;
        ww["lhs"] = vec_str(lhs);
        ww["rhs"] = vec_str(rhs);
        ww["reason"] = "c(a * e_Y) != gamma(a) * c(e_Y); the strong orientation determines gamma uniquely";
        eq.miss(ww);
      }
      if (r.Fprime_of(f).contains(a))
        contain.hit();
      else
        contain.miss(w);
      const Vec mine = r.gamma(f)(a);
      if (tgt.equal(ga, mine)) {
        agree.hit();
      } else {
        w["candidate"] = vec_str(ga);
        w["gamma"] = vec_str(mine);
        agree.miss(w);
      }
    }
  }
  cov.emit(rep, "covariant_part");
  eq.emit(rep, "defining_equation");
  contain.emit(rep, "containment");
  agree.emit(rep, "agreement");
  if (undefined > 0) {
    auto& en = rep.mark("candidate_domain", Status::Skipped, "o-allowable maps where the candidate is undefined");
    en.checked = undefined;
  }
  return rep;
}

Report check_explicit_description(const ExtensionResult& r, ObjId y, const Vec& fundamental) {
  const Extender& e = *r.engine;
  const BivariantTheory& F = e.F();
  const BivariantTheory& H = e.H();
  const Site& s = F.site();
  const Site& hs = H.site();
  const BarFunctor& bar = e.transform().bar;
  if (H.commutativity() != Commutativity::Commutative)
    throw Error(ErrorKind::NotCommutative, H.name() + " is not declared commutative");
  if (!e.orientation().orientable(y)) throw Error(ErrorKind::NotOrientable, s.object_label(y) + " is not orientable");
  const ObjId yb = bar.obj(y);
  const OrientationCertificate cert = is_strong_orientation(H, yb, fundamental);
  if (!cert.strong)
    throw Error(ErrorKind::MissingCertificate, "fundamental class over " + hs.object_label(yb) + " is not strong");
  const MorId idy = hs.identity(yb);
  const auto inv = cert.inverses.find(idy);
  if (inv == cert.inverses.end()) throw Error(ErrorKind::NotAllowable, "identity of " + hs.object_label(yb));
  const Vec& ey = *e.orientation().e[idx(y)];
  const Vec cy = inv->second(e.c(y, ey));
  const auto u = ring_inverse(H, yb, cy);
  if (!u) throw Error(ErrorKind::NotInvertible, "class over " + hs.object_label(yb) + " is " + vec_str(cy));

  Report rep("explicit description over " + s.object_label(y));
  const MorId ptyb = to_pt(H, yb);
  const Vec back = H.product(idy, cy, ptyb, cert.h);
  if (H.group(ptyb).equal(back, e.c(y, ey)))
    rep.pass("normalization", 1, "class " + vec_str(cy) + ", inverse " + vec_str(*u));
  else
    rep.fail("normalization", 1, Json{{"class", vec_str(cy)}});

  Tally t;
  std::uint64_t missing = 0;
  const MorId pty = to_pt(F, y);
  for (MorId f : s.morphisms_into(y)) {
    if (!e.o_allowable(f)) continue;
    const ObjId x = s.source(f);
    const MorId fb = bar.mor(f);
    const ObjId xb = bar.obj(x);
    const auto sq = contravariant_square(hs, fb);
    if (!sq || !H.pullback_table(*sq)) {
      ++missing;
      continue;
    }
    const Vec v = H.pullback(*sq, *u);
    const Module& out = H.group(to_pt(H, xb));
    for (const Vec& a : r.Fprime_of(f).generators()) {
      const Vec lhs = H.product(fb, r.gamma(f)(a), ptyb, cert.h);
      const Vec rhs = H.product(hs.identity(xb), v, to_pt(H, xb), e.c(x, F.product(f, a, pty, ey)));
      if (out.equal(lhs, rhs))
        t.hit();
      else
        t.miss(Json{{"morphism", s.morphism_label(f)}, {"alpha", vec_str(a)}, {"lhs", vec_str(lhs)},
                    {"rhs", vec_str(rhs)}});
    }
  }
  t.emit(rep, "explicit_description");
  if (missing > 0) {
    auto& en = rep.mark("contravariant_pullback", Status::NotEvaluable, "maps without a listed identity square");
    en.checked = missing;
  }
  return rep;
}

namespace {

// Degree of a homogeneous element; 0 for ungraded theories.
int degree_of(const BivariantTheory& t, MorId f, const Vec& v) {
  if (!t.grading()) return 0;
  const auto& d = t.degrees(f);
  std::optional<int> deg;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (t.group(f).is_zero(unit_vector(v.size(), i)) || v[i].is_zero()) continue;
    const int di = t.grading()->reduce(d[i]);
    if (deg && *deg != di) throw Error(ErrorKind::InvalidArgument, "element is not homogeneous");
    deg = di;
  }
  return deg.value_or(0);
}

}  // namespace

Report reduce_product(const BivariantTheory& H, MorId f, MorId g, const Vec& orient_y, const Vec& orient_z) {
  const Site& s = H.site();
  if (H.commutativity() == Commutativity::None)
    throw Error(ErrorKind::NotCommutative, H.name() + " is neither commutative nor skew-commutative");
  const ObjId x = s.source(f), y = s.target(f), z = s.target(g);
  if (s.source(g) != y) throw Error(ErrorKind::NotComposable, "maps are not composable");
  const MorId ptx = map_to_point(s, x), pty = map_to_point(s, y), ptz = map_to_point(s, z);
  const bool graded_skew = H.commutativity() == Commutativity::Skew && H.grading();
  const int dy = graded_skew ? degree_of(H, pty, orient_y) : 0;
  const int dz = graded_skew ? degree_of(H, ptz, orient_z) : 0;
  if (graded_skew && (dy % 2 != 0 || dz % 2 != 0))
    throw Error(ErrorKind::OddDegreeOrientation, "strong orientations must have even degree");
  const auto cy = is_strong_orientation(H, y, orient_y);
  const auto cz = is_strong_orientation(H, z, orient_z);
  if (!cy.strong || !cz.strong) throw Error(ErrorKind::MissingCertificate, "orientation is not strong");
  const MorId idx_ = s.identity(x), idy = s.identity(y);
  const ModuleMap& dual_y = cy.inverses.at(idy);
  const auto sq = contravariant_square(s, f);
  if (!sq) throw Error(ErrorKind::SquareNotListed, "no square for the pull-back along " + s.morphism_label(f));
  const MorId gf = s.require_compose(g, f);
  const Module& hx = H.group(ptx);
  const CoeffRing& R = H.ring();
  auto sign = [&](int a, int b) { return graded_skew && ((a * b) % 2 != 0) ? Scalar(-1) : Scalar(1); };
  // a' (x) b: the cap of a' in H_*(X) with the pull-back of the dual of b in H_*(Y).
  auto odot = [&](const Vec& a1, int deg_a1, const Vec& b, int deg_b) {
    const Vec bd = dual_y(b);
    const Vec pulled = H.pullback(*sq, bd);
    return vec_scale(R, H.product(idx_, pulled, ptx, a1), sign(deg_b - dy, deg_a1));
  };

  Report rep("product reduction " + s.morphism_label(f) + ", " + s.morphism_label(g));
  Tally chain;
  const std::size_t na = H.group(f).rank(), nb = H.group(g).rank();
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      const Vec a = unit_vector(na, i), b = unit_vector(nb, j);
      const int da = graded_skew ? H.degrees(f)[i] : 0;
      const int db = graded_skew ? H.degrees(g)[j] : 0;
      const Vec lhs = H.product(gf, H.product(f, a, g, b), ptz, orient_z);
      const Vec bp = dual_y(H.product(g, b, ptz, orient_z));
      const Vec ap = H.product(f, a, pty, orient_y);
      const Vec rhs =
          vec_scale(R, H.product(idx_, H.pullback(*sq, bp), ptx, ap), sign(db + dz - dy, da + dy));
      if (hx.equal(lhs, rhs))
        chain.hit();
      else
        chain.miss(Json{{"alpha", i}, {"beta", j}, {"lhs", vec_str(lhs)}, {"rhs", vec_str(rhs)}});
    }
  chain.emit(rep, "reduction");

  if (z == s.final_object()) {
    Tally red, assoc;
    const std::size_t ny = H.group(pty).rank(), nx = hx.rank();
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < ny; ++j) {
        const Vec a = unit_vector(na, i), b = unit_vector(ny, j);
        const int da = graded_skew ? H.degrees(f)[i] : 0;
        const int db = graded_skew ? H.degrees(pty)[j] : 0;
        const Vec lhs = odot(H.product(f, a, pty, orient_y), da + dy, b, db);
        const Vec rhs = H.product(f, a, pty, b);
        if (hx.equal(lhs, rhs))
          red.hit();
        else
          red.miss(Json{{"alpha", i}, {"beta", j}, {"lhs", vec_str(lhs)}, {"rhs", vec_str(rhs)}});
      }
    const auto sq_id = contravariant_square(s, idy);
    for (std::size_t i = 0; i < nx && sq_id; ++i)
      for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t k = 0; k < ny; ++k) {
          const Vec a = unit_vector(nx, i), b = unit_vector(ny, j), cc = unit_vector(ny, k);
          const int da = graded_skew ? H.degrees(ptx)[i] : 0;
          const int db = graded_skew ? H.degrees(pty)[j] : 0;
          const int dc = graded_skew ? H.degrees(pty)[k] : 0;
          const Vec ab = odot(a, da, b, db);
          const Vec left = odot(ab, da + db - dy, cc, dc);
          const Vec bdual = dual_y(cc);
          const Vec bc = vec_scale(R, H.product(idy, H.pullback(*sq_id, bdual), pty, b), sign(dc - dy, db));
          const Vec right = odot(a, da, bc, db + dc - dy);
          if (hx.equal(left, right))
            assoc.hit();
          else
            assoc.miss(Json{{"a", i}, {"b", j}, {"c", k}, {"lhs", vec_str(left)}, {"rhs", vec_str(right)}});
        }
    const auto& one = H.unit(z);
    if (one && H.group(ptz).equal(orient_z, *one))
      red.emit(rep, "reduced_product");
    else
      rep.mark("reduced_product", Status::Skipped, "orientation of the point is not its unit");
    assoc.emit(rep, "reduced_associative");
  }
  return rep;
}

Report check_relative_orientation(const ExtensionResult& r, const RelativeOrientationData& d) {
  const Extender& e = *r.engine;
  const BivariantTheory& F = e.F();
  const BivariantTheory& H = e.H();
  const Site& s = F.site();
  const Site& hs = H.site();
  const BarFunctor& bar = e.transform().bar;
  const MorId f = d.f;
  const ObjId x = s.source(f), y = s.target(f);
  const MorId fb = bar.mor(f);
  const ObjId xb = bar.obj(x), yb = bar.obj(y);
  const MorId ptx = to_pt(F, x), pty = to_pt(F, y);
  const MorId ptxb = to_pt(H, xb), ptyb = to_pt(H, yb);
  auto fail = [](const std::string& what) { throw Error(ErrorKind::HypothesisFailure, what); };

  if (!e.orientation().orientable(y) || !F.group(pty).equal(d.e_y, *e.orientation().e[idx(y)]))
    fail("e_Y differs from the orientation datum");
  if (!F.group(ptx).equal(F.product(f, d.e_f, pty, d.e_y), d.e_x)) fail("e_f * e_Y = e_X does not hold");
  if (!H.group(ptxb).equal(H.product(fb, d.fbar_class, ptyb, d.fundamental_y), d.fundamental_x))
    fail("[fbar] * [Ybar] = [Xbar] does not hold");
  if (!is_strong_orientation(H, yb, d.fundamental_y).strong) fail("[Ybar] is not a strong orientation");
  const auto sq = contravariant_square(hs, fb);
  if (!sq || !H.pullback_table(*sq)) fail("no square for the pull-back along " + hs.morphism_label(fb));

  Report rep("relative orientation along " + s.morphism_label(f));
  const MorId idxb = hs.identity(xb), idyb = hs.identity(yb);
  const Vec nx = H.product(idxb, d.tangent_x, ptxb, d.fundamental_x);
  const Vec ny = H.product(idyb, d.tangent_y, ptyb, d.fundamental_y);
  const Vec cex = e.c(x, d.e_x), cey = e.c(y, d.e_y);
  if (H.group(ptxb).equal(cex, nx))
    rep.pass("normalization_x", 1);
  else
    rep.fail("normalization_x", 1, Json{{"lhs", vec_str(cex)}, {"rhs", vec_str(nx)}});
  if (H.group(ptyb).equal(cey, ny))
    rep.pass("normalization_y", 1);
  else
    rep.fail("normalization_y", 1, Json{{"lhs", vec_str(cey)}, {"rhs", vec_str(ny)}});

  const auto u = ring_inverse(H, yb, d.tangent_y);
  if (!u) throw Error(ErrorKind::NotInvertible, "tangent class over " + hs.object_label(yb));
  const Vec t = H.product(idxb, H.pullback(*sq, *u), idxb, d.tangent_x);
  const Vec gef = r.gamma(f)(d.e_f);
  const Vec chain_l = H.product(fb, gef, ptyb, d.fundamental_y);
  const Vec chain_r = H.product(idxb, t, ptxb, d.fundamental_x);
  if (H.group(ptxb).equal(chain_l, chain_r))
    rep.pass("chain", 1, "relative class " + vec_str(t));
  else
    rep.fail("chain", 1, Json{{"lhs", vec_str(chain_l)}, {"rhs", vec_str(chain_r)}});
  const Vec end_r = H.product(idxb, t, fb, d.fbar_class);
  if (H.group(fb).equal(gef, end_r))
    rep.pass("relative_orientation", 1);
  else
    rep.fail("relative_orientation", 1, Json{{"gamma", vec_str(gef)}, {"rhs", vec_str(end_r)}});
  return rep;
}

Report check_verdier_rr(const Extender& e, MorId f, const Vec& tangent) {
  const BivariantTheory& F = e.F();
  const BivariantTheory& H = e.H();
  const Site& s = F.site();
  const BarFunctor& bar = e.transform().bar;
  const ObjId x = s.source(f), y = s.target(f);
  const MorId fb = bar.mor(f);
  const ObjId xb = bar.obj(x), yb = bar.obj(y);
  const MorId pty = to_pt(F, y), ptxb = to_pt(H, xb), ptyb = to_pt(H, yb);
  const MorId idxb = H.site().identity(xb);
  Report rep("Verdier-Riemann-Roch along " + s.morphism_label(f));
  const auto& ef = F.canonical_orientation(f);
  const auto& efb = H.canonical_orientation(fb);
  if (!ef || !efb) {
    rep.mark("diagram", Status::NotEvaluable, "missing canonical orientation");
    return rep;
  }
  Tally t;
  const std::size_t n = rank_of(F, pty);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec b = unit_vector(n, i);
    const Vec lhs = e.c(x, F.product(f, *ef, pty, b));
    const Vec rhs = H.product(idxb, tangent, ptxb, H.product(fb, *efb, ptyb, e.c(y, b)));
    if (H.group(ptxb).equal(lhs, rhs))
      t.hit();
    else
      t.miss(Json{{"basis", i}, {"lhs", vec_str(lhs)}, {"rhs", vec_str(rhs)}});
  }
  t.emit(rep, "diagram");
  if (!e.o_allowable(f)) {
    rep.mark("relative_class", Status::Skipped, "map is not o-allowable");
    return rep;
  }
  const Vec lhs = e.gamma(f)(*ef);
  const Vec rhs = H.product(idxb, tangent, fb, *efb);
  if (H.group(fb).equal(lhs, rhs))
    rep.pass("relative_class", 1);
  else
    rep.fail("relative_class", 1, Json{{"gamma", vec_str(lhs)}, {"rhs", vec_str(rhs)}});
  return rep;
}

}  // namespace bvw
