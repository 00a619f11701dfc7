#include <doctest.h>

#include "algebra_fixture.hpp"
#include "hopfcup/coproducts.hpp"

using namespace hopfcup;
using namespace hopfcup::fixture;

namespace {

struct Setup {
  HopfAlgebra h;
  SAYDModule m;
  PsiMap psi;
};

Setup cohomological(const FiniteGroup& g, bool sign) {
  auto h = group_algebra(g);
  auto m = sign ? mpi_module(h, group_sign(g), unit_group_like(h)) : trivial_module(h, SaydSide::RightLeft);
  auto psi = diagonal_psi(m);
  return {h, m, psi};
}

Setup homological(const FiniteGroup& g) {
  auto h = group_algebra(g);
  auto m = trivial_module(h, SaydSide::LeftLeft);
  auto psi = diagonal_psi(m);
  return {h, m, psi};
}

std::size_t dim_of(const CoproductResult& r) { return r.classes.domain().dim(); }

}  // namespace

TEST_CASE("rho is a map of cocyclic modules") {
  auto s = cohomological(FiniteGroup::cyclic(2), false);
  for (const auto& a : PhiRho(s.h, s.m, s.psi, 3).check()) CHECK_MESSAGE(a.passed, a.name << ": " << a.witness);

  auto c2 = group_algebra(FiniteGroup::cyclic(2));
  auto graded = conjugation_module(FiniteGroup::cyclic(2), {0, 1}, SaydSide::RightLeft);
  CHECK(all_passed(PhiRho(c2, graded, diagonal_psi(graded), 2).check()));

  // degree 0: psi on the coefficients
  PhiRho r0(s.h, s.m, s.psi, 1);
  CHECK(r0.map(0).col(0) == unit_vec(0));
}

TEST_CASE("rho with a nontrivial character") {
  // tau twists by delta on the source and by delta^2 on the diagonal, so
  // only the cosimplicial structure is preserved
  for (const auto& g : {FiniteGroup::cyclic(2), FiniteGroup::symmetric3()}) {
    auto s = cohomological(g, true);
    auto rep = PhiRho(s.h, s.m, s.psi, 3).check();
    REQUIRE(rep.size() == 3);
    CHECK(rep[0].passed);
    CHECK(rep[1].passed);
    CHECK(!rep[2].passed);
    CHECK(rep[2].witness.rfind("tau in degree 1 ", 0) == 0);
  }
}

TEST_CASE("rho gates") {
  auto c2 = group_algebra(FiniteGroup::cyclic(2));
  auto graded = conjugation_module(FiniteGroup::cyclic(2), {0, 1}, SaydSide::RightLeft);
  auto bad = diagonal_psi(graded);
  // e_g -> e_g (x) e_g + e_1 (x) e_1 breaks colinearity
  bad.psi.set(0, 1, 1);
  CHECK_THROWS_AS(PhiRho(c2, graded, bad, 2), StructuralError);

  auto skew = c2;
  skew.comul_table[1] = {{1, 0, Scalar(1)}};
  auto k = trivial_module(c2, SaydSide::RightLeft);
  CHECK_THROWS_AS(PhiRho(skew, k, diagonal_psi(k), 2), StructuralError);

  // homological side: psi must commute with the action
  auto g = FiniteGroup::symmetric3();
  std::vector<int> transpositions;
  for (int a = 0; a < g.order(); ++a)
    if (a != g.identity && g.mul[a][a] == g.identity) transpositions.push_back(a);
  auto s3 = group_algebra(g);
  auto conj = conjugation_module(g, transpositions, SaydSide::LeftLeft);
  auto good = diagonal_psi(conj);
  CHECK_NOTHROW(ChainCoproduct(s3, conj, good, 1));
  auto constant = good;
  for (std::size_t t = 1; t < 3; ++t) {
    constant.psi.set(t * 3 + t, t, 0);
    constant.psi.set(0, t, 1);
  }
  CHECK_THROWS_AS(ChainCoproduct(s3, conj, constant, 1), StructuralError);
}

TEST_CASE("Sh rho against the explicit shuffle formula") {
  for (const auto& g : {FiniteGroup::cyclic(2), FiniteGroup::symmetric3()}) {
    auto s = cohomological(g, true);
    PhiRho rho(s.h, s.m, s.psi, 3);
    auto r = check_shuffle_formula(rho);
    CHECK_MESSAGE(r.passed, r.witness);
    std::size_t d = g.order();
    CHECK(r.instances == 1 + 2 * d + 3 * d * d + 4 * d * d * d);
  }
}

TEST_CASE("coproduct on Hopf Hochschild cohomology") {
  for (bool sign : {false, true})
    for (int order : {2, 3}) {
      if (sign && order == 3) continue;
      auto s = cohomological(FiniteGroup::cyclic(order), sign);
      CochainCoproduct cp(s.h, s.m, s.psi, 3);
      std::map<int, CoproductResult> res;
      for (int n = 0; n <= 2; ++n) {
        res[n] = cp.hh(n);
        CHECK_MESSAGE(res[n].ok(), res[n].witness);
      }
      auto check = check_coalgebra([&](int n) { return res.at(n).classes; },
                                   [&](int n) { return dim_of(res.at(n)); }, 2);
      CHECK_MESSAGE(check.coassociative, check.witness);
      CHECK_MESSAGE(check.cocommutative, check.witness);
      if (!sign) {
        // the unit class goes to class (x) class
        REQUIRE(dim_of(res[0]) == 1);
        CHECK(res[0].classes.col(0) == unit_vec(0));
      }
    }
}

TEST_CASE("coalgebra axioms detect a broken coproduct") {
  // H^0 = k, H^1 = k^2 with a deliberately non-cocommutative, non-coassociative map
  auto dims = [](int n) -> std::size_t { return n == 0 ? 1 : n == 1 ? 2 : 0; };
  auto cop = [&](int n) {
    std::vector<std::pair<long long, FreeSpace>> parts;
    for (int p = 0; p <= n; ++p) parts.emplace_back(p, FreeSpace::range(dims(p) * dims(n - p)));
    FreeSpace cod = FreeSpace::direct_sum(parts);
    std::vector<Vec> cols(dims(n));
    if (n == 0) cols[0] = unit_vec(0);
    if (n == 1) {
      cols[0] = unit_vec(0);  // x -> x (x) 1 only
      cols[1] = {{0, 1}, {3, 1}};
    }
    return LinMap(FreeSpace::range(dims(n)), cod, cols);
  };
  auto r = check_coalgebra(cop, dims, 1);
  CHECK(!r.cocommutative);
}

TEST_CASE("coproduct on Hopf cyclic cohomology") {
  auto s = cohomological(FiniteGroup::cyclic(2), false);
  CochainCoproduct cp(s.h, s.m, s.psi, 5);
  CHECK_THROWS_AS(cp.hc(3), CapOverflow);
  for (int n = 0; n <= 2; ++n) {
    auto r = cp.hc(n);
    CHECK_MESSAGE(r.chain_map, r.witness);
    CHECK(r.rep_independent);
    // the connecting-map composite vanishes by exactness of the Kunneth sequence
    CHECK(r.classes.is_zero());
    std::size_t target = 0;
    for (const auto& [p, q] : r.bidegrees) target += (p % 2 == 0) * (q % 2 == 0);
    CHECK(r.classes.codomain().dim() == target);
  }
}

TEST_CASE("coproduct on periodic cohomology") {
  auto s = cohomological(FiniteGroup::cyclic(2), false);
  CochainCoproduct cp(s.h, s.m, 6 > 0 ? s.psi : s.psi, 6);
  auto even = cp.hp(0);
  CHECK_MESSAGE(even.ok(), even.witness);
  REQUIRE(dim_of(even) == 1);
  CHECK(even.component(0).col(0) == unit_vec(0));
  CHECK(even.component(1).domain().dim() == 1);
  CHECK(even.component(1).codomain().dim() == 0);
  auto odd = cp.hp(1);
  CHECK(dim_of(odd) == 0);

  CochainCoproduct small(s.h, s.m, s.psi, 4);
  CHECK(small.hp(0).inconclusive);
}

TEST_CASE("coproducts on Hopf cyclic homology") {
  for (int order : {2, 3}) {
    auto s = homological(FiniteGroup::cyclic(order));
    ChainCoproduct cp(s.h, s.m, s.psi, 3);
    for (const auto& a : cp.check_rho()) CHECK_MESSAGE(a.passed, a.name << ": " << a.witness);
    for (int n = 0; n <= 2; ++n) {
      auto hh = cp.hh(n), hc = cp.hc(n);
      CHECK_MESSAGE(hh.ok(), hh.witness);
      CHECK_MESSAGE(hc.ok(), hc.witness);
      if (n == 0) {
        CHECK(hh.classes.col(0) == unit_vec(0));
        CHECK(hc.classes.col(0) == unit_vec(0));
      }
    }
  }
}

TEST_CASE("cross and star products on kC2, kC3") {
  auto a = hopf_cyclic_module(group_algebra(FiniteGroup::cyclic(2)),
                              trivial_module(group_algebra(FiniteGroup::cyclic(2)), SaydSide::LeftLeft), 4);
  auto b = hopf_cyclic_module(group_algebra(FiniteGroup::cyclic(3)),
                              trivial_module(group_algebra(FiniteGroup::cyclic(3)), SaydSide::LeftLeft), 4);
  CupProducts ab(a, b), ba(b, a);
  std::string w;
  for (auto [p, q] : {std::pair{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}})
    CHECK_MESSAGE(ab.check_b_cross(p, q, &w), p << "," << q << " " << w);
  // every instance is 0 = 0 here
  for (auto [p, q] : {std::pair{0, 0}, {1, 1}, {2, 0}, {0, 2}, {2, 1}, {1, 2}}) {
    auto r = ab.rabt_sign(p, q);
    CHECK(r.instances > 0);
    CHECK(r.nonzero == 0);
  }
  for (auto [p, q] : {std::pair{0, 0}, {0, 2}, {2, 0}}) {
    auto c = check_star_commutative(ab, ba, p, q);
    CHECK_MESSAGE(c.passed, c.witness);
    CHECK(c.pairs == 1);
  }
  auto k = kunneth_maps(ab.ez().na().mixed, ab.ez().nb().mixed);
  std::size_t pairs = 0;
  for (auto [p, q] : {std::pair{0, 0}, {0, 2}, {2, 0}}) {
    auto c = check_star_connecting(ab, k, p, q);
    CHECK_MESSAGE(c.sign == 1, c.witness);
    pairs += c.pairs;
  }
  CHECK(pairs >= 3);
}

TEST_CASE("star product on algebras") {
  CupProducts ab(dual_numbers(4), dual_numbers(4));
  auto k = kunneth_maps(ab.ez().na().mixed, ab.ez().nb().mixed);
  std::size_t nonzero = 0;
  for (auto [p, q] : {std::pair{0, 0}, {2, 0}, {0, 2}}) {
    auto c = check_star_connecting(ab, k, p, q);
    CHECK_MESSAGE(c.sign == 1, c.witness);
    CHECK(c.pairs == 4);
    nonzero += c.nonzero_images;
  }
  CHECK(nonzero >= 2);
  for (auto [p, q] : {std::pair{0, 0}, {0, 2}, {2, 0}}) {
    auto c = check_star_commutative(ab, ab, p, q);
    CHECK_MESSAGE(c.passed, c.witness);
  }

  // b(Bx x y) + B(Bx x y') = -(B(bx + Bx') x y + (-1)^p Bx x (by + By'))
  CupProducts ut(upper_triangular(4), dual_numbers(4));
  std::size_t nz = 0;
  for (auto [p, q] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0, 2}, {2, 0}}) {
    auto r = ut.rabt_sign(p, q);
    CHECK_MESSAGE(r.sign != 1, p << "," << q << " " << r.witness);
    if (r.nonzero) CHECK(r.sign == -1);
    nz += r.nonzero;
  }
  CHECK(nz > 0);
  std::string w;
  for (auto [p, q] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}})
    CHECK_MESSAGE(ut.check_b_cross(p, q, &w), w);
  CHECK_MESSAGE(ut.check_sh_prime_vanishes(0, 0, &w), w);
}

TEST_CASE("internal product on kC2 x C2") {
  auto g = FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  auto h = group_algebra(g);
  auto c = hopf_cyclic(h, trivial_module(h, SaydSide::LeftLeft), 3);
  std::string w;
  CHECK_MESSAGE(check_internal_commutative(h, c, 1, 1, &w), w);
  CHECK_MESSAGE(check_internal_commutative(h, c, 0, 1, &w), w);

  auto s3 = group_algebra(FiniteGroup::symmetric3());
  auto cs = hopf_cyclic(s3, trivial_module(s3, SaydSide::LeftLeft), 2);
  CHECK_THROWS_AS(internal_cross(s3, cs, 0, 0, unit_vec(0), unit_vec(0)), StructuralError);
}

TEST_CASE("cross product into the tensor Hopf algebra") {
  auto c2 = group_algebra(FiniteGroup::cyclic(2)), c3 = group_algebra(FiniteGroup::cyclic(3));
  auto m2 = trivial_module(c2, SaydSide::LeftLeft), m3 = trivial_module(c3, SaydSide::LeftLeft);
  LinMap x = cross_product(c2, m2, c3, m3, 0, 0, 2);
  REQUIRE(x.domain().dim() == 1);
  CHECK(x.codomain().dim() == 1);
  CHECK(!x.is_zero());
}
