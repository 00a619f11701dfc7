#include <doctest.h>

#include <random>

#include "hopfcup/hopf.hpp"

using namespace hopfcup;

namespace {

// Δ∘S versus (S⊗S)∘flip∘Δ and ε∘S versus ε.
bool antipode_anti_coalgebra(const HopfAlgebra& h) {
  std::size_t n = h.dim();
  for (std::size_t a = 0; a < n; ++a) {
    if (h.counit(h.antipode_table[a]) != h.counit_table[a]) return false;
    Vec lhs = h.comul(h.antipode_table[a]), rhs;
    for (const auto& [p, q, s] : h.comul_table[a])
      for (const auto& [x, u] : h.antipode_table[q])
        for (const auto& [y, v] : h.antipode_table[p]) axpy(rhs, s * u * v, unit_vec(x * n + y));
    if (lhs != rhs) return false;
  }
  return true;
}

const AxiomResult& axiom(const AxiomReport& r, const std::string& name) {
  for (const auto& a : r)
    if (a.name == name) return a;
  throw std::runtime_error("no axiom " + name);
}

}  // namespace

TEST_CASE("group algebras") {
  auto triv = group_algebra(FiniteGroup::cyclic(1));
  CHECK(triv.dim() == 1);
  CHECK(triv.antipode_table[0] == unit_vec(0));

  auto c2 = group_algebra(FiniteGroup::cyclic(2));
  CHECK(c2.dim() == 2);
  CHECK(c2.antipode_map() == LinMap::identity(c2.carrier));
  CHECK(c2.is_cocommutative());
  CHECK(c2.is_commutative());

  auto g = FiniteGroup::symmetric3();
  auto s3 = group_algebra(g);
  CHECK(s3.dim() == 6);
  CHECK(s3.is_cocommutative());
  CHECK(!s3.is_commutative());
  // Two transpositions that do not commute.
  int t1 = -1, t2 = -1;
  for (int a = 0; a < 6; ++a)
    if (a != g.identity && g.mul[a][a] == g.identity) (t1 < 0 ? t1 : t2) = a;
  REQUIRE(t2 >= 0);
  CHECK(g.mul[t1][t2] != g.mul[t2][t1]);

  for (const auto& grp : {FiniteGroup::cyclic(3), FiniteGroup::symmetric3(),
                          FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2))}) {
    auto h = group_algebra(grp);
    CHECK(all_passed(check_hopf_axioms(h)));
    CHECK(h.is_commutative() == grp.abelian());
    CHECK(antipode_anti_coalgebra(h));
  }
}

TEST_CASE("non-group tables are rejected") {
  CHECK_THROWS_WITH_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), doctest::Contains("inverse"), StructuralError);
  CHECK_THROWS_WITH_AS(FiniteGroup::from_table({{1, 0}, {0, 0}}), doctest::Contains("associativity"),
                       StructuralError);
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 2}, {1, 0}}), StructuralError);
}

TEST_CASE("tensor products of Hopf algebras") {
  auto c2 = group_algebra(FiniteGroup::cyclic(2));
  auto triv = group_algebra(FiniteGroup::cyclic(1));
  auto t = tensor_hopf(c2, triv);
  CHECK(t.dim() == 2);
  CHECK(t.mul_map().cols() == c2.mul_map().cols());
  CHECK(t.comul_map().cols() == c2.comul_map().cols());
  CHECK(t.antipode_table == c2.antipode_table);

  auto c2c2 = tensor_hopf(c2, c2);
  auto v4 = group_algebra(FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)));
  CHECK(c2c2.dim() == 4);
  CHECK(c2c2.mul_map().cols() == v4.mul_map().cols());
  CHECK(c2c2.comul_map().cols() == v4.comul_map().cols());
  CHECK(c2c2.counit_table == v4.counit_table);
  CHECK(c2c2.antipode_table == v4.antipode_table);
  CHECK(all_passed(check_hopf_axioms(c2c2)));

  auto mixed = tensor_hopf(c2, group_algebra(FiniteGroup::symmetric3()));
  CHECK(mixed.is_cocommutative());
  CHECK(!mixed.is_commutative());
  CHECK(all_passed(check_hopf_axioms(mixed)));
}

TEST_CASE("truncated enveloping algebras") {
  auto u = enveloping_truncated(LieAlgebraData::abelian(1), 3);
  CHECK(u.dim() == 4);
  std::size_t x = pbw_index(u, {1}), x2 = pbw_index(u, {2}), one = pbw_index(u, {0});
  CHECK(u.mul(x, x) == unit_vec(x2));
  Vec expect;
  expect[x2 * 4 + one] = 1;
  expect[x * 4 + x] = 2;
  expect[one * 4 + x2] = 1;
  CHECK(u.comul(x2) == expect);
  CHECK(u.mul(one, one) == unit_vec(one));
  CHECK_THROWS_AS(u.mul(x2, x2), CapOverflow);
  try {
    u.mul(x2, x2);
  } catch (const CapOverflow& e) {
    CHECK(e.degree == 4);
  }

  auto h = enveloping_truncated(LieAlgebraData::heisenberg(), 2);
  std::size_t hx = pbw_index(h, {1, 0, 0}), hy = pbw_index(h, {0, 1, 0}), hz = pbw_index(h, {0, 0, 1}),
              hxy = pbw_index(h, {1, 1, 0});
  CHECK(h.mul(hy, hx) == Vec{{hxy, 1}, {hz, -1}});
  CHECK(h.antipode(unit_vec(hx)) == Vec{{hx, -1}});

  auto ab2 = enveloping_truncated(LieAlgebraData::abelian(2), 2);
  auto rep = check_hopf_axioms(ab2);
  CHECK(all_passed(rep));
  CHECK(axiom(rep, "associativity").skipped > 0);
  CHECK(antipode_anti_coalgebra(ab2));

  auto h3 = enveloping_truncated(LieAlgebraData::heisenberg(), 3);
  CHECK(all_passed(check_hopf_axioms(h3)));
  CHECK(antipode_anti_coalgebra(h3));
  CHECK(h3.is_cocommutative());
  CHECK(!h3.is_commutative());
}

TEST_CASE("straightening is confluent on random triples") {
  auto lie = LieAlgebraData::heisenberg();
  auto u = enveloping_truncated(lie, 6);
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> gen(0, 2), len(0, 2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> a(len(rng)), b(len(rng)), c(len(rng));
    for (auto* w : {&a, &b, &c})
      for (auto& g : *w) g = gen(rng);
    Vec va = pbw_word(u, lie, a), vb = pbw_word(u, lie, b), vc = pbw_word(u, lie, c);
    std::vector<int> abc = a;
    abc.insert(abc.end(), b.begin(), b.end());
    abc.insert(abc.end(), c.begin(), c.end());
    CHECK(u.mul(u.mul(va, vb), vc) == u.mul(va, u.mul(vb, vc)));
    CHECK(u.mul(u.mul(va, vb), vc) == pbw_word(u, lie, abc));
  }
}

TEST_CASE("Lie data validation") {
  auto bad = LieAlgebraData::abelian(2);
  bad.bracket[0][1] = Vec{{0, 1}};
  CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("antisymmetry"), StructuralError);
  // so(3)-like brackets with a wrong sign break Jacobi.
  auto j = LieAlgebraData::abelian(3);
  j.bracket[0][1] = Vec{{2, 1}}, j.bracket[1][0] = Vec{{2, -1}};
  j.bracket[1][2] = Vec{{0, 1}}, j.bracket[2][1] = Vec{{0, -1}};
  j.bracket[2][0] = Vec{{0, 1}}, j.bracket[0][2] = Vec{{0, -1}};
  CHECK_THROWS_WITH_AS(j.validate(), doctest::Contains("Jacobi"), StructuralError);
}

TEST_CASE("corrupted antipode is detected") {
  auto c2 = group_algebra(FiniteGroup::cyclic(2));
  c2.antipode_table[1] = unit_vec(0);
  c2.antipode_inv_table[1] = unit_vec(0);
  auto rep = check_hopf_axioms(c2);
  CHECK(!axiom(rep, "antipode").passed);
  CHECK(axiom(rep, "antipode").witness == "1");
}

TEST_CASE("modular pairs in involution") {
  for (const auto& h : {group_algebra(FiniteGroup::cyclic(2)), group_algebra(FiniteGroup::symmetric3()),
                        enveloping_truncated(LieAlgebraData::heisenberg(), 2)})
    CHECK(check_modular_pair_in_involution(h, counit_character(h), unit_group_like(h)));

  auto c2 = group_algebra(FiniteGroup::cyclic(2));
  Character sign{{1, -1}};
  CHECK(is_character(c2, sign));
  CHECK(check_modular_pair_in_involution(c2, sign, unit_group_like(c2)));
  // The sign character with sigma the generator: delta(sigma) = -1.
  std::string w;
  CHECK(!check_modular_pair_in_involution(c2, sign, GroupLike{unit_vec(1)}, &w));
  CHECK(w == "delta(sigma) != 1");
  CHECK_THROWS_AS(check_modular_pair_in_involution(c2, Character{{1, 2}}, unit_group_like(c2)), StructuralError);
}
