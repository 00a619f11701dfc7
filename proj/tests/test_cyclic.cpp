#include <doctest.h>

#include "algebra_fixture.hpp"
#include "hopfcup/cyclic.hpp"

using namespace hopfcup;
using namespace hopfcup::fixture;

namespace {

std::vector<std::size_t> dims(const HomologyReport& r, bool untainted_only = true) {
  std::vector<std::size_t> d;
  for (const auto& [n, h] : r.degrees)
    if (!untainted_only || !h.tainted) d.push_back(h.dim);
  return d;
}

const AxiomResult& axiom(const AxiomReport& r, const std::string& name) {
  for (const auto& a : r)
    if (a.name == name) return a;
  throw std::runtime_error("no axiom " + name);
}

}  // namespace

TEST_CASE("cyclic identities") {
  for (const auto& c : {one_point_module(4), dual_numbers(4), upper_triangular(3)})
    CHECK(all_passed(check_cyclic_identities(c)));
  auto bad = dual_numbers(3);
  bad.cyc[2].set(0, 1, 1);
  auto rep = check_cyclic_identities(bad);
  CHECK(!axiom(rep, "cyclic_order").passed);
  CHECK(axiom(rep, "cyclic_order").witness == "n=2");

  auto co = CocyclicModule::from_dual(upper_triangular(3));
  CHECK(all_passed(check_cocyclic_identities(co)));
  auto back = co.dual();
  CHECK(back.d(2, 1) == upper_triangular(3).d(2, 1));
}

TEST_CASE("b and B") {
  auto c = dual_numbers(4);
  // b(x (x) x) = x^2 - x^2 = 0, b(1 (x) x) = x - x = 0, b(x (x) 1) = 0 in degree 1.
  auto b1 = hochschild_b(c, 1);
  CHECK(b1.is_zero());
  auto t = upper_triangular(3);
  // b(e12 (x) e22) = e12 e22 - e22 e12 = e12.
  Vec v = hochschild_b(t, 1).apply(unit_vec(1 * 3 + 2));
  CHECK(v == unit_vec(1));
  CHECK(hochschild_b(t, 1).apply(unit_vec(2 * 3 + 1)) == Vec{{1, -1}});

  for (const auto& m : {unnormalized_mixed(c), unnormalized_mixed(t), normalize(c).mixed, normalize(t).mixed}) {
    std::string w;
    CHECK_MESSAGE(check_mixed(m, &w), w);
    CHECK_MESSAGE(check_mixed(m.transpose(), &w), w);
  }
  // B on degree 0 of k[x]/x^2: B(a) = 1 (x) a with the unnormalized (1 - lambda) correction.
  auto B0 = connes_B(c, 0);
  CHECK(B0.apply(unit_vec(1)) == Vec{{0 * 2 + 1, 1}, {1 * 2 + 0, 1}});
  auto nb = normalize(c);
  CHECK(nb.mixed.B.at(0).apply(unit_vec(nb.quot[0].space().index_of(Label::tuple({Label::integer(1)})))).size() == 1);
}

TEST_CASE("normalization") {
  auto c = dual_numbers(4);
  auto nm = normalize(c);
  CHECK(nm.quot[0].space().dim() == 2);
  // Normalized A (x) Abar^n has dim 2 * 1^n.
  for (int n = 1; n <= 4; ++n) CHECK(nm.quot[n].space().dim() == 2);
  auto hu = homology_report(unnormalized_mixed(c).hochschild_window());
  auto hn = homology_report(nm.mixed.hochschild_window());
  CHECK(dims(hu) == dims(hn));
  CHECK(dims(hu).size() == 4);
  CHECK(dims(hu)[0] == 2);

  // A degenerate chain is zero in the normalized complex, and B kills it.
  auto s = c.s(1, 0).apply(unit_vec(3));
  CHECK(nm.quot[2].is_zero(s));
  CHECK(nm.quot[3].is_zero(connes_B(c, 2).apply(s)));

  auto t = upper_triangular(3);
  auto ht = homology_report(normalize(t).mixed.hochschild_window());
  CHECK(dims(ht) == std::vector<std::size_t>{2, 0, 0});
  CHECK(dims(homology_report(unnormalized_mixed(t).hochschild_window())) == std::vector<std::size_t>{2, 0, 0});
}

TEST_CASE("Tot window and S") {
  auto pt = tot_window(normalize(one_point_module(5)).mixed);
  std::string w;
  CHECK_MESSAGE(check_tot(pt, &w), w);
  // Normalized point: k in degree 0 only, so HC = k[u].
  CHECK(dims(homology_report(pt.tot)) == std::vector<std::size_t>{1, 0, 1, 0, 1});
  auto ptu = tot_window(unnormalized_mixed(one_point_module(5)));
  CHECK(check_tot(ptu));
  CHECK(dims(homology_report(ptu.tot)) == std::vector<std::size_t>{1, 0, 1, 0, 1});

  auto m = normalize(upper_triangular(4)).mixed;
  auto tw = tot_window(m);
  CHECK(check_tot(tw));
  CHECK(tw.tot.space(0).dim() == m.space(0).dim());
  CHECK(tw.tot.space(1).dim() == m.space(1).dim());
  CHECK(tw.tot.space(4).dim() == m.space(4).dim() + m.space(2).dim() + m.space(0).dim());
  CHECK(dims(homology_report(tw.tot)) == std::vector<std::size_t>{2, 0, 2, 0});

  auto co = tot_window(m.transpose());
  CHECK(check_tot(co));
  CHECK(co.tot.space(2).dim() == m.space(2).dim() + m.space(0).dim());
  CHECK(dims(homology_report(co.tot)) == std::vector<std::size_t>{2, 0, 2, 0});
  // S is the inclusion cohomologically and the projection homologically.
  CHECK(co.S.at(0) == tw.S.at(2).transpose());
}

TEST_CASE("diagonal and tensor") {
  auto c = upper_triangular(3);
  auto d = diagonal(c, one_point_module(3));
  CHECK(all_passed(check_cyclic_identities(d)));
  for (int n = 0; n <= 3; ++n) CHECK(d.space(n).dim() == c.space(n).dim());
  CHECK(d.d(2, 1).cols() == c.d(2, 1).cols());
  CHECK(d.t(3).cols() == c.t(3).cols());
  auto dd = diagonal(dual_numbers(3), c);
  CHECK(all_passed(check_cyclic_identities(dd)));
  for (int n = 0; n <= 3; ++n) CHECK(dd.space(n).dim() == dual_numbers(3).space(n).dim() * c.space(n).dim());
  CHECK_THROWS_AS(diagonal(c, one_point_module(2)), StructuralError);

  auto ma = normalize(dual_numbers(4)).mixed, mb = normalize(upper_triangular(4)).mixed;
  auto tm = tensor_mixed(ma, mb);
  std::string w;
  CHECK_MESSAGE(check_mixed(tm, &w), w);
  CHECK(check_tot(tot_window(tm)));
  CHECK(check_mixed(tensor_mixed(ma.transpose(), mb.transpose())));

  // Sign audit in degree (1,1): b(x (x) y) = bx (x) y - x (x) by.
  auto inc = tensor_summand_inclusion(ma, mb, 1, 1);
  for (std::size_t x = 0; x < ma.space(1).dim(); ++x)
    for (std::size_t y = 0; y < mb.space(1).dim(); ++y) {
      Vec got = tm.b.at(2).apply(inc.apply(unit_vec(x * mb.space(1).dim() + y)));
      Vec want;
      for (const auto& [x2, s] : ma.b.at(1).col(x))
        axpy(want, s, tensor_summand_inclusion(ma, mb, 0, 1).apply(unit_vec(x2 * mb.space(1).dim() + y)));
      for (const auto& [y2, s] : mb.b.at(1).col(y))
        axpy(want, -s, tensor_summand_inclusion(ma, mb, 1, 0).apply(unit_vec(x * mb.space(0).dim() + y2)));
      CHECK(got == want);
    }

  // Tensor with k in degree 0.
  auto pt = normalize(one_point_module(4)).mixed;
  auto tp = tensor_mixed(ma, pt);
  for (int n = 0; n <= 4; ++n) CHECK(tp.space(n).dim() == ma.space(n).dim());
  CHECK(dims(homology_report(tp.hochschild_window())) == dims(homology_report(ma.hochschild_window())));
}
