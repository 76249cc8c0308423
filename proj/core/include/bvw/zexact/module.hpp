#pragma once

#include "bvw/zexact/matrix.hpp"

#include <memory>
#include <vector>

namespace bvw {

// Span of finitely many vectors in ring^n, held in canonical echelon form:
// Hermite normal form over Z, reduced row echelon form over a field.
class Submodule {
 public:
  Submodule() = default;
  Submodule(CoeffRing ring, std::size_t ambient);

  static Submodule span(CoeffRing ring, std::size_t ambient, const std::vector<Vec>& generators);
  static Submodule row_span(const Matrix& rows);
  static Submodule full(CoeffRing ring, std::size_t ambient);

  const CoeffRing& ring() const { return basis_.ring(); }
  std::size_t ambient() const { return ambient_; }
  // Canonical generators, one per row.
  const Matrix& basis() const { return basis_; }
  std::vector<Vec> generators() const;
  std::size_t size() const { return basis_.rows(); }
  bool is_zero() const { return basis_.rows() == 0; }

  // Canonical representative of v modulo the span.
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const;
  bool contains(const Submodule& other) const;

  friend bool operator==(const Submodule& a, const Submodule& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

// Finitely presented module ring^n / rowspan(relations).
class Module {
 public:
  Module() : Module(CoeffRing::integers(), 0) {}
  Module(CoeffRing ring, std::size_t rank);
  Module(CoeffRing ring, std::size_t rank, Matrix relations);

  static Module free(CoeffRing ring, std::size_t rank) { return Module(ring, rank); }

  const CoeffRing& ring() const { return ring_; }
  std::size_t rank() const { return rank_; }
  const Matrix& relations() const { return relations_; }
  bool has_relations() const { return relations_.rows() > 0; }
  const Submodule& relation_span() const { return *relation_span_; }

  bool equal(const Vec& a, const Vec& b) const;
  bool is_zero(const Vec& v) const;
  Vec reduce(const Vec& v) const;

  friend bool operator==(const Module& a, const Module& b) {
    return a.ring_ == b.ring_ && a.rank_ == b.rank_ && a.relations_ == b.relations_;
  }

 private:
  CoeffRing ring_;
  std::size_t rank_;
  Matrix relations_;
  std::shared_ptr<const Submodule> relation_span_;
};

// Linear map on ambient coordinates; the matrix lives in the target ring and
// has target.rank() rows and source.rank() columns.
struct ModuleMap {
  Module source;
  Module target;
  Matrix matrix;

  ModuleMap() = default;
  ModuleMap(Module s, Module t, Matrix m);

  Vec operator()(const Vec& x) const;
};

// Bilinear map left x right -> target; tensor index (k, i, j) flattened as
// (k * left.rank() + i) * right.rank() + j.
struct BilinearMap {
  Module left;
  Module right;
  Module target;
  std::vector<Scalar> tensor;

  BilinearMap() = default;
  BilinearMap(Module l, Module r, Module t);

  Scalar& at(std::size_t k, std::size_t i, std::size_t j) {
    return tensor[(k * left.rank() + i) * right.rank() + j];
  }
  const Scalar& at(std::size_t k, std::size_t i, std::size_t j) const {
    return tensor[(k * left.rank() + i) * right.rank() + j];
  }
  Vec operator()(const Vec& a, const Vec& b) const;
  // Matrices of a -> a*b and b -> a*b.
  Matrix right_multiplication(const Vec& b) const;
  Matrix left_multiplication(const Vec& a) const;
};

}  // namespace bvw
