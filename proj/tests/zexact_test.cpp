#include <doctest.h>

#include "bvw/error.hpp"
#include "bvw/zexact/linalg.hpp"

#include <cstdint>
#include <numeric>
#include <random>

using namespace bvw;

namespace {

const CoeffRing ZZ = CoeffRing::integers();
const CoeffRing QQ = CoeffRing::rationals();

Matrix imat(const std::vector<std::vector<long long>>& rows, CoeffRing ring = ZZ) {
  std::vector<std::vector<Scalar>> r;
  for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
  return Matrix::from_rows(ring, r);
}

Vec ivec(std::initializer_list<long long> xs) { return Vec(xs.begin(), xs.end()); }

long long to_ll(const Scalar& s) { return static_cast<long long>(s.num); }

// Leibniz determinant; independent of the library's elimination code.
long long det(const std::vector<std::vector<long long>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  long long total = 0;
  do {
    long long term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= a[i][perm[i]];
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    total += (inversions % 2 ? -term : term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

std::vector<std::vector<long long>> to_ll(const Matrix& m) {
  std::vector<std::vector<long long>> out(m.rows(), std::vector<long long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = to_ll(m(i, j));
  return out;
}

// gcd of all k x k minors, the k-th determinantal divisor.
long long determinantal_divisor(const std::vector<std::vector<long long>>& a, std::size_t k) {
  const std::size_t r = a.size(), c = a.empty() ? 0 : a[0].size();
  long long g = 0;
  std::vector<int> rs(r, 0), cs(c, 0);
  std::fill(rs.end() - static_cast<std::ptrdiff_t>(k), rs.end(), 1);
  do {
    std::fill(cs.begin(), cs.end(), 0);
    std::fill(cs.end() - static_cast<std::ptrdiff_t>(k), cs.end(), 1);
    do {
      std::vector<std::vector<long long>> sub;
      for (std::size_t i = 0; i < r; ++i) {
        if (!rs[i]) continue;
        std::vector<long long> row;
        for (std::size_t j = 0; j < c; ++j)
          if (cs[j]) row.push_back(a[i][j]);
        sub.push_back(row);
      }
      g = std::gcd(g, std::llabs(det(sub)));
    } while (std::next_permutation(cs.begin(), cs.end()));
  } while (std::next_permutation(rs.begin(), rs.end()));
  return g;
}

void check_smith(const Matrix& m) {
  SmithForm s = smith_normal_form(m);
  CHECK(s.u * m * s.v == s.d);
  CHECK(std::llabs(det(to_ll(s.u))) == 1);
  CHECK(std::llabs(det(to_ll(s.v))) == 1);
  auto d = to_ll(s.d);
  auto a = to_ll(m);
  long long prefix = 1;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (j != i) CHECK(d[i][j] == 0);
    CHECK(d[i][i] >= 0);
    if (i + 1 < std::min(m.rows(), m.cols()) && d[i][i] != 0) CHECK(d[i + 1][i + 1] % d[i][i] == 0);
    prefix *= d[i][i];
    CHECK(prefix == determinantal_divisor(a, i + 1));
  }
}

template <class F>
void for_each_box(std::size_t n, long long lo, long long hi, F&& f) {
  Vec v(n, Scalar(lo));
  std::vector<long long> raw(n, lo);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) v[i] = Scalar(raw[i]);
    f(v, raw);
    std::size_t k = 0;
    while (k < n && raw[k] == hi) raw[k++] = lo;
    if (k == n) return;
    ++raw[k];
  }
}

}  // namespace

TEST_CASE("scalar arithmetic is exact in each coefficient ring") {
  CHECK(QQ.add(Scalar(1, 2), Scalar(1, 3)) == Scalar(5, 6));
  CHECK(QQ.mul(Scalar(2, 3), Scalar(3, 4)) == Scalar(1, 2));
  auto f7 = CoeffRing::prime_field(7);
  CHECK(f7.normalize(Scalar(-1)) == Scalar(6));
  CHECK(*f7.inverse(Scalar(3)) == Scalar(5));
  CHECK(f7.normalize(Scalar(1, 2)) == Scalar(4));
  CHECK_THROWS_AS(CoeffRing::prime_field(4), Error);
  CHECK_THROWS_AS(ZZ.normalize(Scalar(1, 2)), Error);
  CHECK(parse_scalar("-6/4") == Scalar(-3, 2));
  BigInt big = BigInt(1) << 200;
  CHECK(ZZ.mul(Scalar(big), Scalar(big)).num == (BigInt(1) << 400));
}

TEST_CASE("smith normal form: identity, zero and the 2x2 example") {
  SmithForm id = smith_normal_form(Matrix::identity(ZZ, 2));
  CHECK(id.d == Matrix::identity(ZZ, 2));
  CHECK(id.u == Matrix::identity(ZZ, 2));
  CHECK(id.v == Matrix::identity(ZZ, 2));

  SmithForm z = smith_normal_form(imat({{0}}));
  CHECK(z.d == imat({{0}}));

  Matrix m = imat({{2, 4}, {6, 8}});
  SmithForm s = smith_normal_form(m);
  // Oracle: d1 is the gcd of all entries and d1*d2 is |det|.
  long long d1 = std::gcd(std::gcd(2LL, 4LL), std::gcd(6LL, 8LL));
  long long d2 = std::llabs(det({{2, 4}, {6, 8}})) / d1;
  CHECK(s.d == imat({{d1, 0}, {0, d2}}));
  CHECK(s.d == imat({{2, 0}, {0, 4}}));
  check_smith(m);
  CHECK_THROWS_AS(smith_normal_form(Matrix::identity(QQ, 2)), Error);
}

TEST_CASE("smith normal form on random integer matrices") {
  std::mt19937 rng(20261016);
  std::uniform_int_distribution<int> entry(-6, 6), dim(1, 4);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t r = static_cast<std::size_t>(dim(rng)), c = static_cast<std::size_t>(dim(rng));
    std::vector<std::vector<long long>> a(r, std::vector<long long>(c));
    for (auto& row : a)
      for (auto& x : row) x = entry(rng);
    check_smith(imat(a));
  }
}

TEST_CASE("solve follows the zero-free-parameter rule") {
  Module z2 = Module::free(ZZ, 2), z1 = Module::free(ZZ, 1);
  ModuleMap id(z2, z2, Matrix::identity(ZZ, 2));
  CHECK(*solve(id, ivec({3, 5})) == ivec({3, 5}));

  ModuleMap twice(z1, z1, imat({{2}}));
  CHECK_FALSE(solve(twice, ivec({3})).has_value());

  ModuleMap sum(z2, z1, imat({{1, 1}}));
  // Oracle: brute-force search shows solutions exist in a small box.
  int found = 0;
  for (long long x = -10; x <= 10; ++x)
    for (long long y = -10; y <= 10; ++y)
      if (x + y == 4) ++found;
  CHECK(found > 0);
  auto x = solve(sum, ivec({4}));
  REQUIRE(x.has_value());
  CHECK(to_ll((*x)[0]) + to_ll((*x)[1]) == 4);
  CHECK(*x == ivec({4, 0}));
}

TEST_CASE("solve respects target relations") {
  Module z3(ZZ, 1, imat({{3}}));
  Module z1 = Module::free(ZZ, 1);
  ModuleMap twice(z1, z3, imat({{2}}));
  auto x = solve(twice, ivec({1}));
  REQUIRE(x.has_value());
  CHECK(((to_ll((*x)[0]) * 2 - 1) % 3 + 3) % 3 == 0);
}

TEST_CASE("is_isomorphism with certificates") {
  Module z1 = Module::free(ZZ, 1);
  auto neg = is_isomorphism(ModuleMap(z1, z1, imat({{-1}})));
  REQUIRE(neg.is_iso);
  CHECK(neg.inverse->matrix == imat({{-1}}));
  CHECK_FALSE(is_isomorphism(ModuleMap(z1, z1, imat({{2}}))).is_iso);

  // Oracle: exhaustion over residues mod 3 shows 2*2 = 4 = 1.
  int inverse_residue = -1;
  for (int r = 0; r < 3; ++r)
    if ((2 * r) % 3 == 1) inverse_residue = r;
  CHECK(inverse_residue == 2);

  auto f3 = CoeffRing::prime_field(3);
  Module m3 = Module::free(f3, 1);
  auto two = is_isomorphism(ModuleMap(m3, m3, imat({{2}}, f3)));
  REQUIRE(two.is_iso);
  CHECK(two.inverse->matrix(0, 0) == Scalar(inverse_residue));

  Module zmod3(ZZ, 1, imat({{3}}));
  auto two_z = is_isomorphism(ModuleMap(zmod3, zmod3, imat({{2}})));
  REQUIRE(two_z.is_iso);
  CHECK(zmod3.equal(two_z.inverse->matrix.column(0), ivec({inverse_residue})));

  Module zmod2(ZZ, 1, imat({{2}}));
  CHECK_THROWS_AS(is_isomorphism(ModuleMap(zmod2, zmod3, imat({{1}}))), Error);
}

TEST_CASE("kernel examples") {
  Module z2 = Module::free(ZZ, 2), z1 = Module::free(ZZ, 1);
  Submodule k = kernel(ModuleMap(z2, z1, imat({{1, 1}})));
  CHECK(k == Submodule::span(ZZ, 2, {ivec({1, -1})}));
  CHECK(kernel(ModuleMap(z2, z2, Matrix::identity(ZZ, 2))).is_zero());

  // Oracle: residues x with x mod 2 == 0 over a window.
  Module zmod2(ZZ, 1, imat({{2}}));
  Submodule k2 = kernel(ModuleMap(z1, zmod2, imat({{1}})));
  for (long long x = -9; x <= 9; ++x) CHECK(k2.contains(ivec({x})) == (x % 2 == 0));
  CHECK(k2 == Submodule::span(ZZ, 1, {ivec({2})}));

  auto f2 = CoeffRing::prime_field(2);
  Submodule k3 = kernel(ModuleMap(z1, Module::free(f2, 1), imat({{1}}, f2)));
  CHECK(k3 == Submodule::span(ZZ, 1, {ivec({2})}));
}

TEST_CASE("intersect examples") {
  auto a = Submodule::span(ZZ, 2, {ivec({1, 0})});
  auto b = Submodule::span(ZZ, 2, {ivec({0, 1})});
  CHECK(intersect({a, b}).is_zero());

  auto c = Submodule::span(ZZ, 2, {ivec({2, 0}), ivec({0, 1})});
  auto d = Submodule::span(ZZ, 2, {ivec({1, 0}), ivec({0, 2})});
  Submodule cd = intersect({c, d});
  CHECK(cd == Submodule::span(ZZ, 2, {ivec({2, 0}), ivec({0, 2})}));
  CHECK(cd == intersect({d, c}));
  // Oracle: membership in each factor is a parity test on one coordinate.
  for_each_box(2, -6, 6, [&](const Vec& v, const std::vector<long long>& raw) {
    bool in_c = raw[0] % 2 == 0, in_d = raw[1] % 2 == 0;
    CHECK(cd.contains(v) == (in_c && in_d));
  });
  CHECK(intersect({c}) == c);
}

TEST_CASE("kernel and intersect agree with brute force on random maps") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-3, 3), dim(1, 4), modulus(0, 3);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t n = static_cast<std::size_t>(dim(rng));
    auto random_map = [&](std::vector<std::vector<long long>>& a, std::vector<long long>& mods) {
      std::size_t m = static_cast<std::size_t>(dim(rng));
      a.assign(m, std::vector<long long>(n));
      for (auto& row : a)
        for (auto& x : row) x = entry(rng);
      mods.assign(m, 0);
      std::vector<std::vector<long long>> rel;
      for (std::size_t i = 0; i < m; ++i) {
        mods[i] = modulus(rng);
        if (mods[i] == 1) mods[i] = 0;
        if (mods[i] > 1) {
          std::vector<long long> row(m, 0);
          row[i] = mods[i];
          rel.push_back(row);
        }
      }
      Matrix relm = rel.empty() ? Matrix(ZZ, 0, m) : imat(rel);
      return ModuleMap(Module::free(ZZ, n), Module(ZZ, m, relm), imat(a));
    };
    auto in_kernel = [&](const std::vector<std::vector<long long>>& a, const std::vector<long long>& mods,
                         const std::vector<long long>& x) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        long long s = 0;
        for (std::size_t j = 0; j < n; ++j) s += a[i][j] * x[j];
        if (mods[i] == 0 ? s != 0 : s % mods[i] != 0) return false;
      }
      return true;
    };
    std::vector<std::vector<long long>> a1, a2;
    std::vector<long long> m1, m2;
    ModuleMap f1 = random_map(a1, m1), f2 = random_map(a2, m2);
    Submodule k1 = kernel(f1), k2 = kernel(f2);
    Submodule both = intersect({k1, k2});
    for_each_box(n, -3, 3, [&](const Vec& v, const std::vector<long long>& raw) {
      bool o1 = in_kernel(a1, m1, raw), o2 = in_kernel(a2, m2, raw);
      CHECK(k1.contains(v) == o1);
      CHECK(both.contains(v) == (o1 && o2));
    });
    // Solutions reported by solve really solve.
    for_each_box(n, -1, 1, [&](const Vec& v, const std::vector<long long>&) {
      Vec b = f1(v);
      auto x = solve(f1, b);
      REQUIRE(x.has_value());
      CHECK(f1.target.equal(f1(*x), b));
    });
  }
}

TEST_CASE("rational and prime-field elimination") {
  Matrix m = imat({{1, 2}, {3, 4}}, QQ);
  SmithForm s = diagonalize(m);
  CHECK(s.u * m * s.v == s.d);
  CHECK(s.d == Matrix::identity(QQ, 2));
  Module q2 = Module::free(QQ, 2);
  auto iso = is_isomorphism(ModuleMap(q2, q2, m));
  REQUIRE(iso.is_iso);
  CHECK(iso.inverse->matrix == imat({{-4, 2}, {3, -1}}, QQ) * Matrix::diagonal(QQ, {Scalar(1, 2), Scalar(1, 2)}));
  auto f2 = CoeffRing::prime_field(2);
  CHECK(nullspace(imat({{1, 1}}, f2)).size() == 1);
}

TEST_CASE("normalize keeps the quotient") {
  Module m(ZZ, 2, imat({{2, 4}, {6, 8}}));
  Module n = normalize(m);
  for_each_box(2, -4, 4, [&](const Vec& v, const std::vector<long long>&) { CHECK(m.is_zero(v) == n.is_zero(v)); });
}
