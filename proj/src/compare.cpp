#include "hopfcup/compare.hpp"

#include <algorithm>
#include <numeric>

namespace hopfcup {

namespace {

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> c(k);
  std::iota(c.begin(), c.end(), 0);
  if (k > n) return out;
  while (true) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

std::string tuple_str(const std::vector<std::size_t>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

// (sign, first, second) monomial indices of cup_Lie on one monomial, bidegree (p, n-p).
struct CupTerm {
  int sign;
  std::size_t a, b;
};

// Placement of x (x) y from C_p (x) C'_q in a Kunneth target given as a list
// of blocks tagged by p, each of size dim_p * dim_q.
std::vector<std::size_t> block_offsets(const std::vector<std::size_t>& sizes) {
  std::vector<std::size_t> off(sizes.size() + 1, 0);
  for (std::size_t i = 0; i < sizes.size(); ++i) off[i + 1] = off[i] + sizes[i];
  return off;
}

}  // namespace

// ------------------------------------------------------------------ Lie side

ChevalleyComplex::ChevalleyComplex(LieAlgebraData l) : l_(std::move(l)) {
  l_.validate();
  int d = top();
  for (int n = 0; n <= d; ++n) monos_.push_back(combinations(d, n));
  w_.dir = -1;
  w_.lo = 0;
  w_.hi = d;
  w_.lo_exact = true;
  w_.hi_exact = true;
  for (int n = 0; n <= d; ++n) w_.spaces[n] = FreeSpace::range(monos_[n].size());
  for (int n = 1; n <= d; ++n) {
    std::vector<Vec> cols;
    for (const auto& m : monos_[n]) {
      Vec col;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          std::vector<int> rest;
          for (int c = 0; c < n; ++c)
            if (c != a && c != b) rest.push_back(m[c]);
          // positions are 1-based in the sign
          Scalar s = (a + b + 2 + 1) % 2 ? -1 : 1;
          axpy(col, s, wedge_front(l_.bracket[m[a]][m[b]], rest));
        }
      cols.push_back(std::move(col));
    }
    w_.d[n] = LinMap(w_.spaces[n], w_.spaces[n - 1], std::move(cols));
  }
  t_ = tensor_windows(w_, w_, d);
}

Vec ChevalleyComplex::wedge(const std::vector<int>& word) const {
  std::vector<int> w = word;
  int sign = 1;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j + 1 < w.size() - i; ++j) {
      if (w[j] == w[j + 1]) return {};
      if (w[j] > w[j + 1]) {
        std::swap(w[j], w[j + 1]);
        sign = -sign;
      }
    }
  for (std::size_t j = 0; j + 1 < w.size(); ++j)
    if (w[j] == w[j + 1]) return {};
  const auto& ms = monos_.at(w.size());
  auto it = std::lower_bound(ms.begin(), ms.end(), w);
  Vec v;
  v[static_cast<std::size_t>(it - ms.begin())] = sign;
  return v;
}

Vec ChevalleyComplex::wedge_front(const Vec& v, const std::vector<int>& word) const {
  Vec out;
  for (const auto& [c, s] : v) {
    std::vector<int> w{static_cast<int>(c)};
    w.insert(w.end(), word.begin(), word.end());
    axpy(out, s, wedge(w));
  }
  return out;
}

namespace {

std::vector<CupTerm> cup_terms(const ChevalleyComplex& ce, const std::vector<int>& m, int p) {
  int n = static_cast<int>(m.size());
  std::vector<CupTerm> out;
  for (const auto& s : shuffles(p, n - p)) {
    std::vector<int> x, y;
    for (int k = 0; k < n; ++k) (k < p ? x : y).push_back(m[s.sigma[k] - 1]);
    // increasing already, since sigma is increasing on each block
    Vec wx = ce.wedge(x), wy = ce.wedge(y);
    out.push_back({s.sign * static_cast<int>(sgn(wx.begin()->second)) * static_cast<int>(sgn(wy.begin()->second)),
                   wx.begin()->first, wy.begin()->first});
  }
  return out;
}

}  // namespace

LinMap ChevalleyComplex::cup(int n) const {
  std::vector<Vec> cols;
  for (const auto& m : monos_.at(n)) {
    Vec col;
    for (int p = 0; p <= n; ++p) {
      LinMap inc = window_pair_inclusion(w_, w_, n, p);
      std::size_t dq = monos_.at(n - p).size();
      for (const auto& t : cup_terms(*this, m, p)) axpy(col, t.sign, inc.apply(unit_vec(t.a * dq + t.b)));
    }
    cols.push_back(std::move(col));
  }
  return LinMap(w_.space(n), t_.space(n), std::move(cols));
}

bool ChevalleyComplex::check_cup_chain_map(std::string* witness) const {
  for (int n = 1; n <= top(); ++n)
    if (compose(t_.diff_from(n), cup(n)) != compose(cup(n - 1), d(n))) {
      if (witness) *witness = "cup_Lie is not a chain map at degree " + std::to_string(n);
      return false;
    }
  return true;
}

std::vector<std::size_t> ChevalleyComplex::homology_dims() const {
  std::vector<std::size_t> d;
  for (int n = 0; n <= top(); ++n) d.push_back(homology_at(w_, n).dim);
  return d;
}

LinMap antisymmetrize(const LieAlgebraData& l, const HopfAlgebra& u, int n) {
  if (n > u.cap) throw CapOverflow(n, u.cap);
  ChevalleyComplex ce(l);
  if (n > ce.top()) throw StructuralError("antisymmetrize: degree above dim g");
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < l.dim(); ++i) gens.push_back(pbw_word(u, l, {static_cast<int>(i)}));
  std::size_t hd = u.dim();
  Scalar fact = 1;
  for (int k = 2; k <= n; ++k) fact *= k;
  std::vector<Vec> cols;
  for (const auto& m : ce.monomials(n)) {
    Vec col;
    std::vector<int> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    do {
      Vec acc{{0, Scalar(perm_sign(pi)) / fact}};
      for (int k = 0; k < n; ++k) acc = kron_vec(acc, gens[m[pi[k]]], hd);
      axpy(col, 1, acc);
    } while (std::next_permutation(pi.begin(), pi.end()));
    cols.push_back(std::move(col));
  }
  return LinMap(FreeSpace::range(ce.monomials(n).size()), FreeSpace::range(ipow(hd, n)), std::move(cols));
}

Json LieDiagramReport::to_json() const {
  return Json{{"lie", lie},
              {"degree", degree},
              {"sh", {{"instances", sh_instances}, {"failures", sh_failures}, {"witness", sh_witness}}},
              {"sh_prime",
               {{"checked", shp_checked},
                {"instances", shp_instances},
                {"lhs_nonzero", shp_lhs_nonzero},
                {"rhs_nonzero", shp_rhs_nonzero},
                {"match", shp_match()},
                {"witness", shp_witness}}}};
}

LieDiagramReport lie_diagram_check(const LieAlgebraData& l, int n, int cap) {
  if (n > cap) throw CapOverflow(n, cap);
  ChevalleyComplex ce(l);
  if (n > ce.top()) throw StructuralError("lie diagram: degree above dim g");
  HopfAlgebra u = enveloping_truncated(l, cap);
  SAYDModule k = trivial_module(u, SaydSide::RightLeft);
  PhiRho rho(u, k, diagonal_psi(k), cap);
  const CyclicOps& o = rho.ops();
  std::size_t hd = u.dim();

  LieDiagramReport r;
  r.lie = l.generators.empty() ? "0" : std::to_string(l.dim()) + " generators";
  r.degree = n;
  std::vector<LinMap> a;
  for (int p = 0; p <= n; ++p) a.push_back(antisymmetrize(l, u, p));
  LinMap an = a[n];
  for (std::size_t w = 0; w < ce.monomials(n).size(); ++w) {
    ++r.sh_instances;
    Vec v = rho.apply(n, an.col(w));
    for (int p = 0; p <= n; ++p) {
      int q = n - p;
      Vec lhs;
      for (const auto& t : sh_terms(p, q)) axpy(lhs, 1, apply_term(o, o, t, v));
      Vec rhs;
      std::size_t dq = ipow(hd, q);
      for (const auto& t : cup_terms(ce, ce.monomials(n)[w], p))
        axpy(rhs, t.sign, kron_vec(a[p].col(t.a), a[q].col(t.b), dq));
      if (lhs != rhs) {
        if (r.sh_failures == 0)
          r.sh_witness = "monomial " + std::to_string(w) + " bidegree (" + std::to_string(p) + "," +
                         std::to_string(q) + ")";
        ++r.sh_failures;
        break;
      }
    }
  }

  int m = n + 2;
  if (m <= cap && m <= ce.top()) {
    r.shp_checked = true;
    LinMap am = antisymmetrize(l, u, m), a1 = antisymmetrize(l, u, n + 1);
    for (std::size_t w = 0; w < ce.monomials(m).size(); ++w) {
      ++r.shp_instances;
      Vec v = rho.apply(m, am.col(w));
      bool lhs_zero = true;
      for (int i = 1; i <= m - 1; ++i)
        for (const auto& t : shp_terms(i, m - i))
          if (!apply_term(o, o, t, v).empty()) lhs_zero = false;
      Vec rhs = a1.apply(ce.d(m).col(w));
      if (!lhs_zero) ++r.shp_lhs_nonzero;
      if (!rhs.empty()) ++r.shp_rhs_nonzero;
      if ((!lhs_zero || !rhs.empty()) && r.shp_witness.empty())
        r.shp_witness = "monomial " + std::to_string(w) + (lhs_zero ? "" : " sh' side nonzero") +
                        (rhs.empty() ? "" : " A d_Lie side nonzero");
    }
  }
  return r;
}

// ---------------------------------------------------------------- group side

BarComplex::BarComplex(FiniteGroup g, int cap) : g_(std::move(g)), cap_(cap) {
  if (cap < 0) throw StructuralError("bar complex: negative cap");
  std::size_t go = g_.order();
  w_.dir = -1;
  w_.lo = 0;
  w_.hi = cap;
  w_.lo_exact = true;
  w_.hi_exact = false;
  for (int n = 0; n <= cap; ++n) w_.spaces[n] = FreeSpace::range(ipow(go, n));
  for (int n = 1; n <= cap; ++n) {
    std::vector<Vec> cols(w_.spaces[n].dim());
    for (std::size_t e = 0; e < cols.size(); ++e)
      for (int i = 0; i <= n; ++i) axpy(cols[e], i % 2 ? -1 : 1, face(n, i, e));
    w_.d[n] = LinMap(w_.spaces[n], w_.spaces[n - 1], std::move(cols));
  }
  t_ = tensor_windows(w_, w_, cap);
}

Vec BarComplex::face(int n, int i, std::size_t e) const {
  std::vector<std::size_t> rad(n, g_.order());
  auto t = digits_of(e, rad);
  std::vector<std::size_t> out;
  if (i == 0) {
    out.assign(t.begin() + 1, t.end());
  } else if (i == n) {
    out.assign(t.begin(), t.end() - 1);
  } else {
    out.assign(t.begin(), t.begin() + i - 1);
    out.push_back(g_.mul[t[i - 1]][t[i]]);
    out.insert(out.end(), t.begin() + i + 1, t.end());
  }
  rad.pop_back();
  return unit_vec(index_of_digits(out, rad));
}

LinMap BarComplex::coproduct(int n) const {
  std::size_t go = g_.order();
  std::vector<Vec> cols(ipow(go, n));
  for (int k = 0; k <= n; ++k) {
    LinMap inc = window_pair_inclusion(w_, w_, n, k);
    // a tuple's index is already (first k entries) * |G|^{n-k} + (the rest)
    for (std::size_t e = 0; e < cols.size(); ++e) axpy(cols[e], 1, inc.apply(unit_vec(e)));
  }
  return LinMap(w_.space(n), t_.space(n), std::move(cols));
}

bool BarComplex::check_coproduct_chain_map(std::string* witness) const {
  for (int n = 1; n <= cap_; ++n)
    if (compose(t_.diff_from(n), coproduct(n)) != compose(coproduct(n - 1), w_.diff_from(n))) {
      if (witness) *witness = "cup_Gr is not a chain map at degree " + std::to_string(n);
      return false;
    }
  return true;
}

GroupTheta group_theta(const FiniteGroup& g, int cap) {
  HopfAlgebra h = group_algebra(g);
  GroupTheta t{g, h, hopf_cyclic(h, trivial_module(h, SaydSide::LeftLeft), cap), BarComplex(g, cap), {}, {}};
  std::size_t go = g.order();
  for (int n = 0; n <= cap; ++n) {
    const Subspace& k = t.chains.spaces.at(n).kernel;
    std::vector<std::size_t> rad(n + 1, go), bar_rad(n, go);
    rad.push_back(1);
    FreeSpace bs = t.bar.window().space(n);
    std::vector<Vec> cols;
    for (const auto& b : k.basis()) {
      Vec col;
      for (const auto& [e, c] : b) {
        auto d = digits_of(e, rad);
        axpy(col, c, unit_vec(index_of_digits(std::vector<std::size_t>(d.begin() + 1, d.end() - 1), bar_rad)));
      }
      cols.push_back(std::move(col));
    }
    LinMap th(k.space(), bs, std::move(cols));
    std::vector<Vec> inv;
    for (std::size_t e = 0; e < bs.dim(); ++e) {
      auto d = digits_of(e, bar_rad);
      std::optional<Vec> found;
      for (std::size_t g0 = 0; g0 < go && !found; ++g0) {
        std::vector<std::size_t> key{g0};
        key.insert(key.end(), d.begin(), d.end());
        key.push_back(0);
        found = k.coordinates(unit_vec(index_of_digits(key, rad)));
      }
      if (!found) throw StructuralError("theta: no cotensor tuple over " + tuple_str(d));
      inv.push_back(std::move(*found));
    }
    LinMap ti(bs, k.space(), std::move(inv));
    if (compose(th, ti) != LinMap::identity(bs) || compose(ti, th) != LinMap::identity(k.space()))
      throw StructuralError("theta is not bijective in degree " + std::to_string(n));
    t.theta.push_back(th);
    t.inverse.push_back(ti);
  }
  for (int n = 1; n <= cap; ++n)
    for (int i = 0; i <= n; ++i) {
      LinMap lhs = compose(t.theta[n - 1], t.chains.module.faces[n][i]);
      for (std::size_t e = 0; e < t.bar.window().space(n).dim(); ++e) {
        Vec x = t.inverse[n].col(e);
        if (lhs.apply(x) != t.bar.face(n, i, e))
          throw StructuralError("theta: face " + std::to_string(i) + " differs on " +
                                tuple_str(digits_of(e, std::vector<std::size_t>(n, go))));
      }
    }
  return t;
}

Json GroupDiagramReport::to_json() const {
  return Json{{"group", group},
              {"degree", degree},
              {"tuples", tuples},
              {"failures", failures},
              {"witness", witness},
              {"corrections", {{"in_window", corrections_in_window}, {"nonzero", corrections_nonzero}}},
              {"hh", {{"checked", hh_checked}, {"agrees", hh_agrees}, {"dims", hh_dims}, {"bar_dims", bar_dims}}}};
}

GroupDiagramReport group_diagram_check(const FiniteGroup& g, int n, int cap) {
  if (n > cap) throw CapOverflow(n, cap);
  GroupTheta t = group_theta(g, cap);
  SAYDModule k = trivial_module(t.h, SaydSide::LeftLeft);
  ChainCoproduct cc(t.h, k, diagonal_psi(k), cap);
  const CyclicModule& c = cc.module().module;
  OpsPtr ops = module_ops(c);
  const BarComplex& bar = t.bar;

  GroupDiagramReport r;
  r.group = "order " + std::to_string(g.order());
  r.degree = n;
  LinMap rho = cc.rho(n), cop = bar.coproduct(n);
  for (std::size_t e = 0; e < c.space(n).dim(); ++e) {
    ++r.tuples;
    Vec v = rho.col(e), lhs;
    for (const auto& term : aw_terms(n)) {
      int p = term.tx(), q = term.ty();
      Vec img = apply_term(*ops, *ops, term, v);
      std::size_t dq = c.space(q).dim(), bq = bar.window().space(q).dim();
      LinMap inc = window_pair_inclusion(bar.window(), bar.window(), n, p);
      for (const auto& [idx, s] : img)
        axpy(lhs, s, inc.apply(kron_vec(t.theta[p].col(idx / dq), t.theta[q].col(idx % dq), bq)));
    }
    if (lhs != cop.apply(t.theta[n].col(e))) {
      if (r.failures == 0) r.witness = "basis " + std::to_string(e);
      ++r.failures;
    }
  }
  for (int kk = 1; n + 2 * kk <= cap; ++kk) {
    ++r.corrections_in_window;
    if (!compose(cc.ez().aw_series(kk, n), cc.rho_bar(n)).is_zero()) ++r.corrections_nonzero;
  }

  if (n + 1 <= cap) {
    r.hh_checked = true;
    const NormalizedModule& na = cc.ez().na();
    std::vector<LinMap> proj;
    std::vector<Homology> hn, hb;
    for (int d = 0; d <= n; ++d) {
      hn.push_back(homology_at(na.mixed.hochschild_window(), d));
      hb.push_back(homology_at(bar.window(), d));
      proj.push_back(induced_map(hb[d], hn[d], compose(na.quot.at(d).projection(), t.inverse[d])));
      r.hh_dims.push_back(hn[d].dim);
      r.bar_dims.push_back(hb[d].dim);
    }
    CoproductResult res = cc.hh(n);
    LinMap kb = kunneth_windows(bar.window(), bar.window(), bar.tensor(), n);
    Homology ht = homology_at(bar.tensor(), n);
    std::vector<std::size_t> sizes;
    for (int p = 0; p <= n; ++p) sizes.push_back(hn[p].dim * hn[n - p].dim);
    auto off = block_offsets(sizes);
    r.hh_agrees = r.hh_dims == r.bar_dims && res.ok();
    for (std::size_t z = 0; z < hb[n].dim && r.hh_agrees; ++z) {
      auto split = solve(kb, ht.classify(cop.apply(hb[n].reps[z])));
      if (!split) {
        r.hh_agrees = false;
        break;
      }
      // (P (x) P) applied blockwise
      Vec mapped;
      std::vector<std::size_t> bsizes;
      for (int p = 0; p <= n; ++p) bsizes.push_back(hb[p].dim * hb[n - p].dim);
      auto boff = block_offsets(bsizes);
      for (const auto& [idx, s] : *split) {
        int p = 0;
        while (idx >= boff[p + 1]) ++p;
        std::size_t local = idx - boff[p], dq = hb[n - p].dim;
        Vec x = kron_vec(proj[p].col(local / dq), proj[n - p].col(local % dq), hn[n - p].dim);
        for (const auto& [j, u] : x) axpy(mapped, s * u, unit_vec(off[p] + j));
      }
      if (mapped != res.classes.apply(proj[n].col(z))) r.hh_agrees = false;
    }
  }
  return r;
}

InternalFormulaCheck check_internal_formula(const GroupTheta& t, int p, int q) {
  if (!t.group.abelian()) throw StructuralError("internal product formula: group is not abelian");
  int n = p + q;
  if (n > t.bar.cap()) throw CapOverflow(n, t.bar.cap());
  std::size_t go = t.group.order();
  std::vector<std::size_t> rp(p, go), rq(q, go), rn(n, go);
  InternalFormulaCheck r;
  for (std::size_t a = 0; a < ipow(go, p); ++a)
    for (std::size_t b = 0; b < ipow(go, q); ++b) {
      ++r.instances;
      Vec z = internal_cross(t.h, t.chains, p, q, t.inverse[p].col(a), t.inverse[q].col(b));
      Vec got = t.theta[n].apply(z);
      auto da = digits_of(a, rp), db = digits_of(b, rq);
      Vec want;
      for (const auto& s : shuffles(p, q)) {
        std::vector<std::size_t> tup(n);
        for (int k = 0; k < n; ++k) tup[s.sigma[k] - 1] = k < p ? da[k] : db[k - p];
        axpy(want, s.sign, unit_vec(index_of_digits(tup, rn)));
      }
      if (got != want) {
        if (r.failures == 0) r.witness = tuple_str(da) + " x " + tuple_str(db);
        ++r.failures;
      }
    }
  return r;
}

}  // namespace hopfcup
