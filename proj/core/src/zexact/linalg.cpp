#include "bvw/zexact/linalg.hpp"

#include "bvw/error.hpp"

namespace bvw {

namespace {

struct PivotPos {
  std::size_t i, j;
  bool found = false;
};

// Smallest-norm nonzero entry in row t or column t of the trailing block.
PivotPos cross_pivot(const Matrix& d, std::size_t t) {
  const CoeffRing& ring = d.ring();
  PivotPos best{t, t, false};
  BigInt best_norm;
  auto consider = [&](std::size_t i, std::size_t j) {
    if (d(i, j).is_zero()) return;
    BigInt n = ring.norm(d(i, j));
    if (!best.found || n < best_norm) {
      best = {i, j, true};
      best_norm = n;
    }
  };
  for (std::size_t i = t; i < d.rows(); ++i) consider(i, t);
  for (std::size_t j = t + 1; j < d.cols(); ++j) consider(t, j);
  return best;
}

PivotPos block_pivot(const Matrix& d, std::size_t t) {
  const CoeffRing& ring = d.ring();
  PivotPos best{t, t, false};
  BigInt best_norm;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      if (d(i, j).is_zero()) continue;
      BigInt n = ring.norm(d(i, j));
      if (!best.found || n < best_norm) {
        best = {i, j, true};
        best_norm = n;
        if (n == 1) return best;
      }
    }
  return best;
}

}  // namespace

SmithForm diagonalize(const Matrix& m) {
  const CoeffRing ring = m.ring();
  SmithForm s{m, Matrix::identity(ring, m.rows()), Matrix::identity(ring, m.cols()), 0};
  Matrix& d = s.d;
  const std::size_t limit = std::min(m.rows(), m.cols());
  std::size_t t = 0;
  for (; t < limit; ++t) {
    PivotPos p = block_pivot(d, t);
    if (!p.found) break;
    d.swap_rows(t, p.i);
    s.u.swap_rows(t, p.i);
    d.swap_cols(t, p.j);
    s.v.swap_cols(t, p.j);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (d(i, t).is_zero()) continue;
        auto [q, r] = ring.divmod(d(i, t), d(t, t));
        Scalar nq = ring.neg(q);
        d.add_row_multiple(i, t, nq);
        s.u.add_row_multiple(i, t, nq);
        if (!r.is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (d(t, j).is_zero()) continue;
        auto [q, r] = ring.divmod(d(t, j), d(t, t));
        Scalar nq = ring.neg(q);
        d.add_col_multiple(j, t, nq);
        s.v.add_col_multiple(j, t, nq);
        if (!r.is_zero()) clean = false;
      }
      if (!clean) {
        PivotPos c = cross_pivot(d, t);
        d.swap_rows(t, c.i);
        s.u.swap_rows(t, c.i);
        d.swap_cols(t, c.j);
        s.v.swap_cols(t, c.j);
        continue;
      }
      if (ring.kind() == RingKind::Integers) {
        bool fixed = false;
        for (std::size_t i = t + 1; i < d.rows() && !fixed; ++i)
          for (std::size_t j = t + 1; j < d.cols(); ++j)
            if (!ring.divides(d(t, t), d(i, j))) {
              d.add_row_multiple(t, i, ring.one());
              s.u.add_row_multiple(t, i, ring.one());
              fixed = true;
              break;
            }
        if (fixed) continue;
      }
      break;
    }
    Scalar f = ring.unit_normal_factor(d(t, t));
    if (!(f == ring.one())) {
      d.scale_row(t, f);
      s.u.scale_row(t, f);
    }
  }
  s.rank = t;
  return s;
}

SmithForm smith_normal_form(const Matrix& m) {
  if (m.ring().kind() != RingKind::Integers)
    throw Error(ErrorKind::InvalidArgument, "Smith normal form requires integer coefficients");
  return diagonalize(m);
}

std::vector<Vec> nullspace(const Matrix& m) {
  SmithForm s = diagonalize(m);
  std::vector<Vec> out;
  for (std::size_t j = s.rank; j < m.cols(); ++j) out.push_back(s.v.column(j));
  return out;
}

std::optional<Vec> solve_matrix(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw Error(ErrorKind::InvalidArgument, "right-hand side length mismatch");
  const CoeffRing& ring = m.ring();
  SmithForm s = diagonalize(m);
  Vec c = mat_vec(s.u, normalize_vec(ring, b));
  Vec z(m.cols());
  for (std::size_t i = 0; i < s.rank; ++i) {
    if (!ring.divides(s.d(i, i), c[i])) return std::nullopt;
    z[i] = ring.divmod(c[i], s.d(i, i)).first;
  }
  for (std::size_t i = s.rank; i < m.rows(); ++i)
    if (!c[i].is_zero()) return std::nullopt;
  return mat_vec(s.v, z);
}

namespace {

bool is_z_to_fp(const ModuleMap& map) {
  return map.source.ring().kind() == RingKind::Integers && map.target.ring().kind() == RingKind::PrimeField;
}

void require_supported(const ModuleMap& map) {
  if (map.source.ring() == map.target.ring() || is_z_to_fp(map)) return;
  throw Error(ErrorKind::UnsupportedRingPair, map.source.ring().name() + " -> " + map.target.ring().name());
}

Matrix augmented(const ModuleMap& map) {
  return hstack(map.matrix, map.target.relations().transpose().cast(map.target.ring()));
}

}  // namespace

bool well_defined(const ModuleMap& map) {
  const Matrix& rel = map.source.relations();
  for (std::size_t r = 0; r < rel.rows(); ++r)
    if (!map.target.is_zero(map(rel.row(r)))) return false;
  return true;
}

void require_well_defined(const ModuleMap& map) {
  if (!well_defined(map)) throw Error(ErrorKind::IllFormedMap, "matrix does not respect the source relations");
}

std::optional<Vec> solve(const ModuleMap& map, const Vec& b) {
  require_supported(map);
  auto x = solve_matrix(augmented(map), b);
  if (!x) return std::nullopt;
  x->resize(map.source.rank());
  // Residues of F_p lift to their representatives in [0, p).
  return x;
}

IsoResult is_isomorphism(const ModuleMap& map) {
  require_well_defined(map);
  if (!(map.source.ring() == map.target.ring()))
    throw Error(ErrorKind::UnsupportedRingPair, "isomorphism test needs one coefficient ring");
  const std::size_t n = map.source.rank(), m = map.target.rank();
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < m; ++i) {
    auto x = solve(map, unit_vector(m, i));
    if (!x) return {};
    cols.push_back(std::move(*x));
  }
  Submodule k = kernel(map);
  if (!map.source.relation_span().contains(k)) return {};
  ModuleMap inv(map.target, map.source, Matrix::from_columns(map.source.ring(), n, cols));
  for (std::size_t j = 0; j < n; ++j)
    if (!map.source.equal(inv(map(unit_vector(n, j))), unit_vector(n, j))) return {};
  for (std::size_t i = 0; i < m; ++i)
    if (!map.target.equal(map(inv(unit_vector(m, i))), unit_vector(m, i))) return {};
  return {true, std::move(inv)};
}

Submodule kernel(const ModuleMap& map) {
  require_supported(map);
  const std::size_t n = map.source.rank();
  std::vector<Vec> gens;
  for (Vec v : nullspace(augmented(map))) {
    v.resize(n);
    gens.push_back(std::move(v));
  }
  if (is_z_to_fp(map)) {
    const Scalar p(map.target.ring().characteristic());
    for (std::size_t i = 0; i < n; ++i) {
      Vec e(n);
      e[i] = p;
      gens.push_back(std::move(e));
    }
  }
  return Submodule::span(map.source.ring(), n, gens);
}

Submodule intersect(const std::vector<Submodule>& parts) {
  if (parts.empty()) throw Error(ErrorKind::InvalidArgument, "intersection of an empty family");
  Submodule acc = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) {
    const Submodule& b = parts[k];
    if (b.ambient() != acc.ambient() || !(b.ring() == acc.ring()))
      throw Error(ErrorKind::InvalidArgument, "submodules live in different ambient modules");
    if (acc.is_zero() || b.is_zero()) {
      acc = Submodule(acc.ring(), acc.ambient());
      continue;
    }
    const CoeffRing& ring = acc.ring();
    Matrix ga = acc.basis().transpose();
    Matrix gb = scale(b.basis().transpose(), Scalar(-1));
    std::vector<Vec> gens;
    for (const Vec& w : nullspace(hstack(ga, gb))) {
      Vec a(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(acc.size()));
      gens.push_back(mat_vec(ga, a));
    }
    acc = Submodule::span(ring, acc.ambient(), gens);
  }
  return acc;
}

Module normalize(const Module& m) {
  return Module(m.ring(), m.rank(), m.relation_span().basis());
}

ModuleMap compose(const ModuleMap& b, const ModuleMap& a) {
  if (a.target.rank() != b.source.rank()) throw Error(ErrorKind::InvalidArgument, "maps are not composable");
  return ModuleMap(a.source, b.target, b.matrix * a.matrix);
}

}  // namespace bvw

namespace bvw {

bool well_defined(const BilinearMap& map) {
  const std::size_t nl = map.left.rank(), nr = map.right.rank();
  const Matrix& lr = map.left.relations();
  const Matrix& rr = map.right.relations();
  for (std::size_t r = 0; r < lr.rows(); ++r)
    for (std::size_t j = 0; j < nr; ++j)
      if (!map.target.is_zero(map(lr.row(r), unit_vector(nr, j)))) return false;
  for (std::size_t r = 0; r < rr.rows(); ++r)
    for (std::size_t i = 0; i < nl; ++i)
      if (!map.target.is_zero(map(unit_vector(nl, i), rr.row(r)))) return false;
  return true;
}

void require_well_defined(const BilinearMap& map) {
  if (!well_defined(map)) throw Error(ErrorKind::IllFormedMap, "product does not respect the factor relations");
}

}  // namespace bvw
