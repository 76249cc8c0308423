#include "bvw/zexact/module.hpp"

#include "bvw/error.hpp"

namespace bvw {

namespace {

// Quotient used when clearing an entry above a pivot: floor division over Z
// (so the remainder lands in [0, pivot)), exact division over a field.
Scalar above_quotient(const CoeffRing& ring, const Scalar& a, const Scalar& pivot) {
  if (ring.kind() != RingKind::Integers) return ring.mul(a, *ring.inverse(pivot));
  BigInt q = a.num / pivot.num;
  if (a.num - q * pivot.num < 0) q -= 1;
  return Scalar(q);
}

void echelonize(Matrix& m, std::vector<std::size_t>& pivots) {
  const CoeffRing ring = m.ring();
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    for (;;) {
      std::size_t best = m.rows();
      for (std::size_t i = r; i < m.rows(); ++i) {
        if (m(i, c).is_zero()) continue;
        if (best == m.rows() || ring.norm(m(i, c)) < ring.norm(m(best, c))) best = i;
      }
      if (best == m.rows()) break;
      m.swap_rows(r, best);
      bool clear = true;
      for (std::size_t i = r + 1; i < m.rows(); ++i) {
        if (m(i, c).is_zero()) continue;
        auto [q, rem] = ring.divmod(m(i, c), m(r, c));
        m.add_row_multiple(i, r, ring.neg(q));
        if (!rem.is_zero()) clear = false;
      }
      if (clear) break;
    }
    if (r >= m.rows() || m(r, c).is_zero()) continue;
    m.scale_row(r, ring.unit_normal_factor(m(r, c)));
    for (std::size_t i = 0; i < r; ++i) {
      if (m(i, c).is_zero()) continue;
      m.add_row_multiple(i, r, ring.neg(above_quotient(ring, m(i, c), m(r, c))));
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix trimmed(ring, r, m.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) trimmed(i, j) = m(i, j);
  m = std::move(trimmed);
}

}  // namespace

Submodule::Submodule(CoeffRing ring, std::size_t ambient) : ambient_(ambient), basis_(ring, 0, ambient) {}

Submodule Submodule::span(CoeffRing ring, std::size_t ambient, const std::vector<Vec>& generators) {
  Matrix m(ring, generators.size(), ambient);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].size() != ambient) throw Error(ErrorKind::InvalidArgument, "generator length mismatch");
    for (std::size_t j = 0; j < ambient; ++j) m(i, j) = ring.normalize(generators[i][j]);
  }
  return row_span(m);
}

Submodule Submodule::row_span(const Matrix& rows) {
  Submodule s(rows.ring(), rows.cols());
  s.basis_ = rows;
  echelonize(s.basis_, s.pivots_);
  return s;
}

Submodule Submodule::full(CoeffRing ring, std::size_t ambient) {
  return row_span(Matrix::identity(ring, ambient));
}

std::vector<Vec> Submodule::generators() const {
  std::vector<Vec> out;
  out.reserve(basis_.rows());
  for (std::size_t i = 0; i < basis_.rows(); ++i) out.push_back(basis_.row(i));
  return out;
}

Vec Submodule::reduce(const Vec& v) const {
  if (v.size() != ambient_) throw Error(ErrorKind::InvalidArgument, "vector length mismatch");
  const CoeffRing& ring = basis_.ring();
  Vec out = normalize_vec(ring, v);
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    std::size_t c = pivots_[r];
    if (out[c].is_zero()) continue;
    Scalar q = above_quotient(ring, out[c], basis_(r, c));
    if (q.is_zero()) continue;
    Scalar nq = ring.neg(q);
    for (std::size_t j = c; j < ambient_; ++j) ring.fma(out[j], nq, basis_(r, j));
  }
  return out;
}

bool Submodule::contains(const Vec& v) const { return vec_is_zero(reduce(v)); }

bool Submodule::contains(const Submodule& other) const {
  for (std::size_t i = 0; i < other.basis_.rows(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

Module::Module(CoeffRing ring, std::size_t rank) : Module(ring, rank, Matrix(ring, 0, rank)) {}

Module::Module(CoeffRing ring, std::size_t rank, Matrix relations)
    : ring_(ring), rank_(rank), relations_(relations.cast(ring)) {
  if (relations_.cols() != rank_ && relations_.rows() > 0)
    throw Error(ErrorKind::InvalidArgument, "relation width does not match rank");
  if (relations_.rows() == 0) relations_ = Matrix(ring, 0, rank_);
  relation_span_ = std::make_shared<const Submodule>(Submodule::row_span(relations_));
}

bool Module::equal(const Vec& a, const Vec& b) const {
  if (!has_relations()) return normalize_vec(ring_, a) == normalize_vec(ring_, b);
  return relation_span_->contains(vec_sub(ring_, a, b));
}

bool Module::is_zero(const Vec& v) const {
  if (!has_relations()) return vec_is_zero(normalize_vec(ring_, v));
  return relation_span_->contains(v);
}

Vec Module::reduce(const Vec& v) const { return relation_span_->reduce(v); }

ModuleMap::ModuleMap(Module s, Module t, Matrix m) : source(std::move(s)), target(std::move(t)) {
  if (m.rows() != target.rank() || m.cols() != source.rank())
    throw Error(ErrorKind::InvalidArgument,
                "map matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                    std::to_string(target.rank()) + "x" + std::to_string(source.rank()));
  if (common_ring(source.ring(), target.ring()) != target.ring())
    throw Error(ErrorKind::UnsupportedRingPair, source.ring().name() + " -> " + target.ring().name());
  matrix = m.cast(target.ring());
}

Vec ModuleMap::operator()(const Vec& x) const { return mat_vec(matrix, x); }

BilinearMap::BilinearMap(Module l, Module r, Module t)
    : left(std::move(l)), right(std::move(r)), target(std::move(t)),
      tensor(target.rank() * left.rank() * right.rank()) {}

Vec BilinearMap::operator()(const Vec& a, const Vec& b) const {
  const CoeffRing& ring = target.ring();
  const std::size_t nl = left.rank(), nr = right.rank();
  Vec out(target.rank());
  for (std::size_t i = 0; i < nl; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < nr; ++j) {
      if (b[j].is_zero()) continue;
      Scalar ab = ring.mul(ring.normalize(a[i]), ring.normalize(b[j]));
      for (std::size_t k = 0; k < out.size(); ++k) {
        const Scalar& t = tensor[(k * nl + i) * nr + j];
        if (!t.is_zero()) ring.fma(out[k], t, ab);
      }
    }
  }
  return out;
}

Matrix BilinearMap::right_multiplication(const Vec& b) const {
  const CoeffRing& ring = target.ring();
  Matrix m(ring, target.rank(), left.rank());
  for (std::size_t i = 0; i < left.rank(); ++i) m.set_column(i, (*this)(unit_vector(left.rank(), i), b));
  return m;
}

Matrix BilinearMap::left_multiplication(const Vec& a) const {
  const CoeffRing& ring = target.ring();
  Matrix m(ring, target.rank(), right.rank());
  for (std::size_t j = 0; j < right.rank(); ++j) m.set_column(j, (*this)(a, unit_vector(right.rank(), j)));
  return m;
}

}  // namespace bvw
