#include "bvw/instances/instances.hpp"

#include "bvw/error.hpp"

#include <algorithm>
#include <functional>

namespace bvw {

namespace {

const ConcreteModel& require_model(const Site& s) {
  if (!s.model()) throw Error(ErrorKind::InvalidArgument, "instance needs a site with a concrete model");
  return *s.model();
}

int card(const ConcreteModel& m, ObjId x) { return m.cardinality[static_cast<std::size_t>(x)]; }
const std::vector<int>& table(const ConcreteModel& m, MorId f) { return m.table[static_cast<std::size_t>(f)]; }

RingData pointwise_ring(CoeffRing ring, std::size_t n) {
  Module mod = Module::free(ring, n);
  BilinearMap mul(mod, mod, mod);
  for (std::size_t k = 0; k < n; ++k) mul.at(k, k, k) = Scalar(1);
  return {mod, std::move(mul), Vec(n, Scalar(1))};
}

// Basis index of every point: the point itself, or its orbit.
using PointBasis = std::vector<std::vector<int>>;

SimpleFunctorData function_instance(const SitePtr& site, CoeffRing ring, const PointBasis& basis,
                                    const std::vector<std::size_t>& rank,
                                    const std::function<Scalar(MorId, int)>& weight) {
  const Site& s = *site;
  const ConcreteModel& m = require_model(s);
  SimpleFunctorData d;
  d.site = site;
  d.ring = ring;
  for (ObjId x = 0; x < static_cast<ObjId>(s.object_count()); ++x)
    d.rings.push_back(pointwise_ring(ring, rank[static_cast<std::size_t>(x)]));
  d.pushforward.resize(s.morphism_count());
  for (MorId f = 0; f < static_cast<MorId>(s.morphism_count()); ++f) {
    const auto x = static_cast<std::size_t>(s.source(f)), y = static_cast<std::size_t>(s.target(f));
    const auto& t = table(m, f);
    Matrix pull(ring, rank[x], rank[y]);
    for (std::size_t p = 0; p < t.size(); ++p)
      pull(static_cast<std::size_t>(basis[x][p]), static_cast<std::size_t>(basis[y][static_cast<std::size_t>(t[p])])) = Scalar(1);
    d.pullback.emplace_back(d.rings[y].module, d.rings[x].module, pull);
    if (!s.confined(f)) continue;
    // Value at a representative point of each target basis element.
    std::vector<int> rep(rank[y], -1);
    for (int q = card(m, s.target(f)) - 1; q >= 0; --q) rep[static_cast<std::size_t>(basis[y][static_cast<std::size_t>(q)])] = q;
    Matrix push(ring, rank[y], rank[x]);
    for (std::size_t p = 0; p < t.size(); ++p) {
      const auto by = static_cast<std::size_t>(basis[y][static_cast<std::size_t>(t[p])]);
      if (rep[by] != t[p]) continue;
      auto& e = push(by, static_cast<std::size_t>(basis[x][p]));
      e = ring.add(e, ring.normalize(weight(f, static_cast<int>(p))));
    }
    d.pushforward[static_cast<std::size_t>(f)] = ModuleMap(d.rings[x].module, d.rings[y].module, push);
  }
  return d;
}

PointBasis identity_basis(const Site& s, std::vector<std::size_t>& rank) {
  const ConcreteModel& m = require_model(s);
  PointBasis b;
  for (ObjId x = 0; x < static_cast<ObjId>(s.object_count()); ++x) {
    std::vector<int> idx(static_cast<std::size_t>(card(m, x)));
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    rank.push_back(idx.size());
    b.push_back(std::move(idx));
  }
  return b;
}

}  // namespace

SimpleFunctorData counting_instance(const SitePtr& site, CoeffRing ring) {
  std::vector<std::size_t> rank;
  PointBasis b = identity_basis(*site, rank);
  return function_instance(site, ring, b, rank, [](MorId, int) { return Scalar(1); });
}

SimpleFunctorData euler_instance(const SitePtr& site, CoeffRing ring) {
  const ConcreteModel& m = require_model(*site);
  for (ObjId x = 0; x < static_cast<ObjId>(site->object_count()); ++x)
    if (m.dims[static_cast<std::size_t>(x)].size() != static_cast<std::size_t>(card(m, x)))
      throw Error(ErrorKind::InvalidArgument, "euler instance needs dimensions on " + site->object_label(x));
  std::vector<std::size_t> rank;
  PointBasis b = identity_basis(*site, rank);
  const Site& s = *site;
  return function_instance(site, ring, b, rank, [&](MorId f, int p) {
    const auto& dx = m.dims[static_cast<std::size_t>(s.source(f))];
    const auto& dy = m.dims[static_cast<std::size_t>(s.target(f))];
    const int q = table(m, f)[static_cast<std::size_t>(p)];
    return Scalar((dx[static_cast<std::size_t>(p)] - dy[static_cast<std::size_t>(q)]) % 2 == 0 ? 1 : -1);
  });
}

Scalar euler_integral(const GradedFinSet& x, const Vec& alpha, CoeffRing ring) {
  if (alpha.size() != x.dim.size()) throw Error(ErrorKind::InvalidArgument, "function length does not match the set");
  Scalar total = ring.zero();
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    Scalar v = ring.normalize(alpha[i]);
    total = x.dim[i] % 2 == 0 ? ring.add(total, v) : ring.sub(total, v);
  }
  return total;
}

std::vector<int> orbits(const std::vector<int>& involution) {
  std::vector<int> orbit(involution.size(), -1);
  int next = 0;
  for (std::size_t p = 0; p < involution.size(); ++p) {
    if (orbit[p] >= 0) continue;
    orbit[p] = next;
    orbit[static_cast<std::size_t>(involution[p])] = next;
    ++next;
  }
  return orbit;
}

SimpleFunctorData invariant_instance(const SitePtr& site, CoeffRing ring) {
  const Site& s = *site;
  const ConcreteModel& m = require_model(s);
  PointBasis b;
  std::vector<std::size_t> rank;
  for (ObjId x = 0; x < static_cast<ObjId>(s.object_count()); ++x) {
    const auto& inv = m.involution[static_cast<std::size_t>(x)];
    if (inv.size() != static_cast<std::size_t>(card(m, x)))
      throw Error(ErrorKind::InvalidArgument, "invariant instance needs an involution on " + s.object_label(x));
    b.push_back(orbits(inv));
    rank.push_back(b.back().empty() ? 0 : static_cast<std::size_t>(*std::max_element(b.back().begin(), b.back().end()) + 1));
  }
  return function_instance(site, ring, b, rank, [](MorId, int) { return Scalar(1); });
}

BarFunctor fixed_points_functor(const SitePtr& isite, const SitePtr& fsite) {
  const Site& s = *isite;
  const Site& t = *fsite;
  const ConcreteModel& m = require_model(s);
  const ConcreteModel& tm = require_model(t);
  BarFunctor bar{isite, fsite, {}, {}};
  std::vector<std::vector<int>> fixed;
  for (ObjId x = 0; x < static_cast<ObjId>(s.object_count()); ++x) {
    const auto& inv = m.involution[static_cast<std::size_t>(x)];
    std::vector<int> pts;
    for (std::size_t p = 0; p < inv.size(); ++p)
      if (inv[p] == static_cast<int>(p)) pts.push_back(static_cast<int>(p));
    ObjId image = -1;
    for (ObjId y = 0; y < static_cast<ObjId>(t.object_count()); ++y)
      if (card(tm, y) == static_cast<int>(pts.size())) {
        image = y;
        break;
      }
    if (image < 0)
      throw Error(ErrorKind::InvalidArgument, "no object with " + std::to_string(pts.size()) + " points for " + s.object_label(x));
    bar.object_map.push_back(image);
    fixed.push_back(std::move(pts));
  }
  for (MorId f = 0; f < static_cast<MorId>(s.morphism_count()); ++f) {
    const auto& src = fixed[static_cast<std::size_t>(s.source(f))];
    const auto& tgt = fixed[static_cast<std::size_t>(s.target(f))];
    std::vector<int> restricted;
    for (int p : src) {
      const int q = table(m, f)[static_cast<std::size_t>(p)];
      restricted.push_back(static_cast<int>(std::find(tgt.begin(), tgt.end(), q) - tgt.begin()));
    }
    auto g = tm.find_function(bar.obj(s.source(f)), bar.obj(s.target(f)), restricted);
    if (!g) throw Error(ErrorKind::InvalidArgument, "restriction of " + s.morphism_label(f) + " is not in the target site");
    bar.morphism_map.push_back(*g);
  }
  return bar;
}

namespace {

CovariantTransform transform_by(const std::string& name, const TheoryPtr& F, const TheoryPtr& H, const BarFunctor& bar,
                                const std::function<Matrix(ObjId, std::size_t, std::size_t)>& matrix) {
  CovariantTransform c{name, F, H, bar, {}};
  const Site& s = F->site();
  for (ObjId x = 0; x < static_cast<ObjId>(s.object_count()); ++x) {
    const Module& src = F->group(map_to_point(s, x));
    const Module& tgt = H->group(map_to_point(H->site(), bar.obj(x)));
    c.maps.emplace_back(src, tgt, matrix(x, tgt.rank(), src.rank()));
  }
  require_transform_shapes(c);
  return c;
}

}  // namespace

CovariantTransform identity_transform(const TheoryPtr& F) {
  return transform_by("identity", F, F, identity_functor(F->site_ptr()),
                      [&](ObjId, std::size_t r, std::size_t) { return Matrix::identity(F->ring(), r); });
}

CovariantTransform mod2_transform(const TheoryPtr& F, const TheoryPtr& H) {
  if (F->site_ptr() != H->site_ptr()) throw Error(ErrorKind::InvalidArgument, "mod2 transform needs one site");
  return transform_by("mod2", F, H, identity_functor(F->site_ptr()),
                      [&](ObjId, std::size_t r, std::size_t) { return Matrix::identity(F->ring(), r); });
}

CovariantTransform scaled_transform(const TheoryPtr& F, const Scalar& u) {
  if (F->ring().normalize(u).is_zero()) throw Error(ErrorKind::InvalidArgument, "scale must be nonzero");
  return transform_by("scaled", F, F, identity_functor(F->site_ptr()), [&](ObjId, std::size_t r, std::size_t) {
    return scale(Matrix::identity(F->ring(), r), F->ring().normalize(u));
  });
}

CovariantTransform smith_transform(const TheoryPtr& F, const TheoryPtr& H, const BarFunctor& bar) {
  const Site& s = F->site();
  const ConcreteModel& m = require_model(s);
  return transform_by("smith", F, H, bar, [&](ObjId x, std::size_t r, std::size_t n) {
    const auto& inv = m.involution[static_cast<std::size_t>(x)];
    const auto orb = orbits(inv);
    Matrix c(F->ring(), r, n);
    std::size_t fixed = 0;
    for (std::size_t p = 0; p < inv.size(); ++p)
      if (inv[p] == static_cast<int>(p)) c(fixed++, static_cast<std::size_t>(orb[p])) = Scalar(1);
    return c;
  });
}

OrientationDatum unit_orientation(const BivariantTheory& F, const Scalar& k) {
  const Site& s = F.site();
  OrientationDatum o{"units", {}};
  for (ObjId y = 0; y < static_cast<ObjId>(s.object_count()); ++y) {
    const auto& u = F.canonical_orientation(map_to_point(s, y));
    if (!u) throw Error(ErrorKind::InvalidArgument, "theory has no canonical orientation over " + s.object_label(y));
    o.e.push_back(y == s.final_object() ? *u : vec_scale(F.ring(), *u, F.ring().normalize(k)));
  }
  return o;
}

}  // namespace bvw
