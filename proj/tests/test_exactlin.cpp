#include <doctest.h>

#include <random>

#include "hopfcup/exactlin.hpp"

using namespace hopfcup;

namespace {

using Dense = std::vector<std::vector<Scalar>>;

Dense random_dense(std::mt19937& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4), keep(0, 2);
  Dense m(r, std::vector<Scalar>(c, 0));
  for (auto& row : m)
    for (auto& x : row)
      if (keep(rng) == 0) x = Scalar(num(rng), den(rng)), x.canonicalize();
  return m;
}

Dense dense_mul(const Dense& a, const Dense& b) {
  Dense r(a.size(), std::vector<Scalar>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b[0].size(); ++j)
      for (std::size_t k = 0; k < b.size(); ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

// Bar complex of a finite group with trivial rational coefficients,
// degrees 0..top: C_n = k[G^n].
ComplexWindow bar_complex(const std::vector<std::vector<int>>& mul, int top) {
  int g = static_cast<int>(mul.size());
  ComplexWindow c;
  c.dir = -1;
  c.lo = 0;
  c.hi = top;
  std::vector<std::size_t> size(top + 1, 1);
  for (int n = 1; n <= top; ++n) size[n] = size[n - 1] * g;
  for (int n = 0; n <= top; ++n) c.spaces[n] = FreeSpace::range(size[n]);
  for (int n = 1; n <= top; ++n) {
    LinMap d(c.spaces[n], c.spaces[n - 1]);
    for (std::size_t x = 0; x < size[n]; ++x) {
      std::vector<int> t(n);
      std::size_t r = x;
      for (int k = n; k-- > 0;) t[k] = r % g, r /= g;
      auto enc = [&](const std::vector<int>& v) {
        std::size_t e = 0;
        for (int a : v) e = e * g + a;
        return e;
      };
      for (int i = 0; i <= n; ++i) {
        std::vector<int> u;
        if (i == 0) u.assign(t.begin() + 1, t.end());
        else if (i == n) u.assign(t.begin(), t.end() - 1);
        else {
          for (int k = 0; k < n; ++k) {
            if (k == i - 1) u.push_back(mul[t[k]][t[k + 1]]), ++k;
            else u.push_back(t[k]);
          }
        }
        d.add_to(enc(u), x, i % 2 ? -1 : 1);
      }
    }
    c.d[n] = d;
  }
  return c;
}

}  // namespace

TEST_CASE("scalars stay reduced") {
  Scalar a(6, 4);
  a.canonicalize();
  CHECK(scalar_str(a) == "3/2");
  CHECK(scalar_str(parse_scalar("-10/4")) == "-5/2");
  CHECK(scalar_str(Scalar(1, 3) + Scalar(2, 3)) == "1/1");
}

TEST_CASE("labels order canonically") {
  FreeSpace s({Label::sym("b"), Label::integer(3), Label::tuple({Label::integer(1)}), Label::sym("a")});
  CHECK(s.label(0) == Label::integer(3));
  CHECK(s.label(1) == Label::sym("a"));
  CHECK(s.label(3).is_tuple());
  CHECK_THROWS_AS(FreeSpace({Label::integer(1), Label::integer(1)}), StructuralError);
  auto p = FreeSpace::product({FreeSpace::range(2), FreeSpace::range(3)});
  CHECK(p.dim() == 6);
  CHECK(p.index_of(Label::tuple({Label::integer(1), Label::integer(2)})) == 5);
  CHECK(FreeSpace(p.labels()) == p);
}

TEST_CASE("compose: trivial cases and dense oracle") {
  auto v = FreeSpace::range(3);
  CHECK(compose(LinMap::identity(v), LinMap::identity(v)) == LinMap::identity(v));
  CHECK(compose(LinMap::zero(v, v), LinMap::identity(v)).is_zero());
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Dense a = random_dense(rng, 4, 5), b = random_dense(rng, 5, 3);
    CHECK(compose(LinMap::from_rows(a), LinMap::from_rows(b)) == LinMap::from_rows(dense_mul(a, b)));
  }
  CHECK_THROWS_AS(compose(LinMap::identity(v), LinMap::identity(FreeSpace::range(2))), StructuralError);
}

TEST_CASE("kernel_image") {
  auto v = FreeSpace::range(2);
  auto ki = kernel_image(LinMap::identity(v));
  CHECK(ki.kernel.size() == 0);
  CHECK(ki.image.size() == 2);
  ki = kernel_image(LinMap::zero(v, v));
  CHECK(ki.kernel.size() == 2);
  CHECK(ki.image.empty());
  auto f = LinMap::from_rows({{1, 2}, {2, 4}});
  ki = kernel_image(f);
  REQUIRE(ki.kernel.size() == 1);
  CHECK(ki.image.size() == 1);
  // Proportional to (-2, 1).
  const Vec& k = ki.kernel[0];
  CHECK(k.at(0) == -2 * k.at(1));
  CHECK(f.apply(k).empty());
}

TEST_CASE("rank-nullity on random maps") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = LinMap::from_rows(random_dense(rng, 1 + trial % 5, 1 + trial % 7));
    auto ki = kernel_image(f);
    CHECK(ki.kernel.size() + ki.image.size() == f.domain().dim());
    CHECK(rank(f) == ki.image.size());
    for (const auto& k : ki.kernel) CHECK(f.apply(k).empty());
  }
}

TEST_CASE("quotient and subspace") {
  auto v = FreeSpace::range(3);
  Quotient q(v, {Vec{{0, 1}, {1, -1}}});
  CHECK(q.space().dim() == 2);
  CHECK(compose(q.projection(), q.section()) == LinMap::identity(q.space()));
  CHECK(q.project(Vec{{0, 1}}) == q.project(Vec{{1, 1}}));
  Subspace s(v, {Vec{{0, 1}, {2, 1}}});
  CHECK(s.coordinates(Vec{{0, 3}, {2, 3}}).value() == Vec{{0, 3}});
  CHECK(!s.coordinates(Vec{{1, 1}}));
}

TEST_CASE("homology of small complexes") {
  ComplexWindow z;
  z.dir = -1;
  z.lo = 0;
  z.hi = 2;
  z.lo_exact = z.hi_exact = true;
  for (int n = 0; n <= 2; ++n) z.spaces[n] = FreeSpace();
  for (int n = 0; n <= 2; ++n) CHECK(homology_at(z, n).dim == 0);

  ComplexWindow c;
  c.dir = -1;
  c.lo = 0;
  c.hi = 1;
  c.lo_exact = c.hi_exact = true;
  c.spaces[0] = c.spaces[1] = FreeSpace::range(1);
  c.d[1] = LinMap::identity(FreeSpace::range(1));
  CHECK(homology_at(c, 0).dim == 0);
  CHECK(homology_at(c, 1).dim == 0);

  auto bar = bar_complex({{0, 1}, {1, 0}}, 4);
  std::string w;
  CHECK(bar.check_d_squared(&w));
  std::vector<std::size_t> expect = {1, 0, 0, 0};
  for (int n = 0; n <= 3; ++n) {
    auto h = homology_at(bar, n);
    CHECK(h.dim == expect[n]);
    CHECK(!h.tainted);
  }
  CHECK(homology_at(bar, 4).tainted);
}

TEST_CASE("homology is invariant under basis permutation") {
  auto bar = bar_complex({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, 3);
  // Relabel degree 2 by reversing the basis order.
  std::size_t d2 = bar.spaces[2].dim();
  std::vector<Vec> perm(d2);
  for (std::size_t j = 0; j < d2; ++j) perm[j] = unit_vec(d2 - 1 - j);
  LinMap p(bar.spaces[2], bar.spaces[2], perm);
  ComplexWindow b2 = bar;
  b2.d[2] = compose(bar.d[2], p);
  b2.d[3] = compose(p, bar.d[3]);
  for (int n = 0; n <= 2; ++n) CHECK(homology_at(bar, n).dim == homology_at(b2, n).dim);
}

TEST_CASE("classify cycles") {
  auto bar = bar_complex({{0, 1}, {1, 0}}, 3);
  auto h0 = homology_at(bar, 0);
  REQUIRE(h0.dim == 1);
  CHECK(h0.classify(Vec{{0, 5}}) == Vec{{0, 5}});
  // A boundary classifies to zero.
  auto h1 = homology_at(bar, 1);
  Vec bd = bar.d[2].apply(unit_vec(3));
  CHECK(h1.classify(bd).empty());
  auto h2 = homology_at(bar, 2);
  CHECK_THROWS_AS(h2.classify(unit_vec(3)), StructuralError);
}

TEST_CASE("connecting maps") {
  auto k = FreeSpace::range(1);
  auto k2 = FreeSpace::range(2);
  auto window = [](std::map<int, FreeSpace> sp, std::map<int, LinMap> d) {
    ComplexWindow c;
    c.dir = -1;
    c.lo = 0;
    c.hi = 1;
    c.lo_exact = c.hi_exact = true;
    c.spaces = std::move(sp);
    c.d = std::move(d);
    return c;
  };
  SUBCASE("zero differentials") {
    ShortExactSequence s;
    s.a = window({{0, k}, {1, k}}, {});
    s.b = window({{0, k2}, {1, k2}}, {});
    s.c = window({{0, k}, {1, k}}, {});
    LinMap i(k, k2, {unit_vec(0)}), p(k2, k, {Vec{}, unit_vec(0)});
    s.i = {{0, i}, {1, i}};
    s.p = {{0, p}, {1, p}};
    check_exact(s);
    CHECK(connecting_map(s, 1).is_zero());
  }
  SUBCASE("split sequence") {
    ShortExactSequence s;
    LinMap one = LinMap::identity(k);
    s.a = window({{0, k}, {1, k}}, {{1, one}});
    s.c = window({{0, k}, {1, k}}, {{1, one}});
    s.b = window({{0, k2}, {1, k2}}, {{1, LinMap::identity(k2)}});
    LinMap i(k, k2, {unit_vec(0)}), p(k2, k, {Vec{}, unit_vec(0)});
    s.i = {{0, i}, {1, i}};
    s.p = {{0, p}, {1, p}};
    check_exact(s);
    CHECK(connecting_map(s, 1).is_zero());
  }
  SUBCASE("nontrivial: k -> k cone") {
    // A = k in degree 0, C = k in degree 1, B = (k -id-> k).
    auto zero = FreeSpace();
    ShortExactSequence s;
    s.a = window({{0, k}, {1, zero}}, {});
    s.c = window({{0, zero}, {1, k}}, {});
    s.b = window({{0, k}, {1, k}}, {{1, LinMap::identity(k)}});
    s.i = {{0, LinMap::identity(k)}, {1, LinMap(zero, k)}};
    s.p = {{0, LinMap(k, zero)}, {1, LinMap::identity(k)}};
    check_exact(s);
    auto del = connecting_map(s, 1);
    CHECK(del.domain().dim() == 1);
    CHECK(del.codomain().dim() == 1);
    CHECK(rank(del) == 1);
  }
  SUBCASE("exactness violation") {
    ShortExactSequence s;
    s.a = window({{0, k}, {1, k}}, {});
    s.b = window({{0, k2}, {1, k2}}, {});
    s.c = window({{0, k}, {1, k}}, {});
    LinMap i(k, k2, {unit_vec(0)}), p(k2, k, {unit_vec(0), Vec{}});
    s.i = {{0, i}, {1, i}};
    s.p = {{0, p}, {1, p}};
    CHECK_THROWS_AS(check_exact(s), StructuralError);
  }
}

TEST_CASE("json form") {
  auto f = LinMap::from_rows({{Scalar(1, 2), 0}, {0, -3}});
  auto j = f.to_json();
  CHECK(j["entries"][0][2] == "1/2");
  CHECK(j["entries"][1][2] == "-3/1");
  CHECK(Label::from_json(Label::tuple({Label::integer(1), Label::sym("x")}).to_json()) ==
        Label::tuple({Label::integer(1), Label::sym("x")}));
}
