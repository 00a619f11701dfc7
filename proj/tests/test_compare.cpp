#include <doctest.h>

#include "algebra_fixture.hpp"
#include "hopfcup/compare.hpp"

using namespace hopfcup;
using namespace hopfcup::fixture;

TEST_CASE("Chevalley-Eilenberg complex") {
  for (std::size_t d = 1; d <= 3; ++d) {
    ChevalleyComplex ce(LieAlgebraData::abelian(d));
    CHECK(ce.window().check_d_squared());
    std::string w;
    CHECK_MESSAGE(ce.check_cup_chain_map(&w), w);
    std::vector<std::size_t> want;
    for (std::size_t n = 0; n <= d; ++n) want.push_back(binomial(static_cast<int>(d), static_cast<int>(n)));
    CHECK(ce.homology_dims() == want);
  }
  ChevalleyComplex h3(LieAlgebraData::heisenberg());
  CHECK(h3.window().check_d_squared());
  std::string w;
  CHECK_MESSAGE(h3.check_cup_chain_map(&w), w);
  CHECK(h3.homology_dims() == std::vector<std::size_t>{1, 2, 2, 1});
  // d(x ^ y) = [x, y] = z
  CHECK(h3.d(2).col(0) == h3.wedge({2}));
  CHECK(h3.wedge({1, 0}) == Vec{{0, Scalar(-1)}});
  CHECK(h3.wedge({1, 1}).empty());
  // cup on a generator: x -> 1 (x) x + x (x) 1
  CHECK(h3.cup(1).col(0).size() == 2);
}

TEST_CASE("antisymmetrization") {
  auto l = LieAlgebraData::abelian(2);
  auto u = enveloping_truncated(l, 2);
  LinMap a1 = antisymmetrize(l, u, 1);
  for (std::size_t i = 0; i < 2; ++i) CHECK(a1.col(i) == pbw_word(u, l, {static_cast<int>(i)}));

  LinMap a2 = antisymmetrize(l, u, 2);
  REQUIRE(a2.domain().dim() == 1);
  std::size_t x = pbw_word(u, l, {0}).begin()->first, y = pbw_word(u, l, {1}).begin()->first, d = u.dim();
  CHECK(a2.col(0) == Vec{{x * d + y, Scalar(1, 2)}, {y * d + x, Scalar(-1, 2)}});

  for (auto lie : {LieAlgebraData::abelian(3), LieAlgebraData::heisenberg()}) {
    auto uu = enveloping_truncated(lie, 3);
    std::size_t hd = uu.dim();
    for (int n = 0; n <= 3; ++n) {
      LinMap a = antisymmetrize(lie, uu, n);
      CHECK(rank(a) == a.domain().dim());
      std::vector<std::size_t> rad(n, hd);
      for (std::size_t c = 0; c < a.domain().dim(); ++c)
        for (const auto& [e, s] : a.col(c))
          for (auto leg : digits_of(e, rad)) CHECK(uu.counit_table[leg] == 0);
    }
  }
  CHECK_THROWS_AS(antisymmetrize(l, enveloping_truncated(l, 1), 2), CapOverflow);
}

TEST_CASE("Lie comparison diagram") {
  for (std::size_t d = 1; d <= 3; ++d) {
    auto l = LieAlgebraData::abelian(d);
    for (int n = 0; n <= static_cast<int>(d); ++n) {
      auto r = lie_diagram_check(l, n, static_cast<int>(d));
      CHECK_MESSAGE(r.sh_ok(), r.sh_witness);
      CHECK(r.sh_instances == binomial(static_cast<int>(d), n));
      if (n + 2 <= static_cast<int>(d)) {
        CHECK(r.shp_checked);
        CHECK_MESSAGE(r.shp_match(), r.shp_witness);
      }
    }
  }
  auto h = LieAlgebraData::heisenberg();
  for (int n = 0; n <= 3; ++n) {
    auto r = lie_diagram_check(h, n, 3);
    CHECK_MESSAGE(r.sh_ok(), r.sh_witness);
  }
  auto r1 = lie_diagram_check(h, 1, 3);
  CHECK(r1.shp_checked);
  CHECK(r1.shp_instances == 1);
  CHECK_MESSAGE(r1.shp_match(), r1.shp_witness);
  CHECK(r1.to_json()["sh_prime"]["match"] == true);
}

TEST_CASE("bar complex") {
  BarComplex b(FiniteGroup::symmetric3(), 3);
  CHECK(b.window().check_d_squared());
  std::string w;
  CHECK_MESSAGE(b.check_coproduct_chain_map(&w), w);
  CHECK(b.window().space(2).dim() == 36);
  // d(g, h) = h - gh + g
  Vec want = unit_vec(2);
  axpy(want, -1, unit_vec(b.group().mul[1][2]));
  axpy(want, 1, unit_vec(1));
  CHECK(b.window().diff_from(2).col(1 * 6 + 2) == want);
}

TEST_CASE("theta against the bar complex") {
  for (const auto& g : {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()}) {
    GroupTheta t = group_theta(g, 3);
    for (int n = 0; n <= 3; ++n) {
      std::size_t d = 1;
      for (int k = 0; k < n; ++k) d *= g.order();
      CHECK(t.theta[n].domain().dim() == d);
      // b transported
      if (n >= 1)
        CHECK(compose(t.theta[n - 1], hochschild_b(t.chains.module, n)) == compose(t.bar.window().diff_from(n), t.theta[n]));
    }
  }
  // reduced Hopf Hochschild homology of kC3 is rational group homology
  GroupTheta t = group_theta(FiniteGroup::cyclic(3), 4);
  auto hh = homology_report(normalize(t.chains.module).mixed.hochschild_window());
  std::vector<std::size_t> dims;
  for (int n = 0; n <= 3; ++n) dims.push_back(hh.degrees.at(n).dim);
  CHECK(dims == std::vector<std::size_t>{1, 0, 0, 0});
  for (int n = 0; n <= 3; ++n) CHECK(homology_at(t.bar.window(), n).dim == dims[n]);
}

TEST_CASE("group comparison diagram") {
  for (const auto& g : {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()})
    for (int n = 0; n <= 2; ++n) {
      auto r = group_diagram_check(g, n, 3);
      CHECK_MESSAGE(r.failures == 0, r.witness);
      std::size_t d = 1;
      for (int k = 0; k < n; ++k) d *= g.order();
      CHECK(r.tuples == d);
      CHECK(r.hh_checked);
      CHECK(r.hh_agrees);
      CHECK(r.ok());
    }
}

TEST_CASE("internal product formula on abelian groups") {
  GroupTheta t = group_theta(FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)), 3);
  for (auto [p, q] : {std::pair{0, 0}, {1, 1}, {1, 2}, {2, 1}}) {
    auto r = check_internal_formula(t, p, q);
    CHECK_MESSAGE(r.failures == 0, r.witness);
  }
  CHECK_THROWS_AS(check_internal_formula(group_theta(FiniteGroup::symmetric3(), 2), 1, 1), StructuralError);
}
