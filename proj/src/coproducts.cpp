#include "hopfcup/coproducts.hpp"

#include <algorithm>

namespace hopfcup {

namespace {

std::vector<std::size_t> pres_radices(std::size_t mdim, std::size_t hdim, int n) {
  std::vector<std::size_t> r{mdim};
  for (int k = 0; k < n; ++k) r.push_back(hdim);
  return r;
}

std::string key_str(const std::vector<std::size_t>& k) {
  std::string s = "(";
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s + ")";
}

// Expands a list of per-slot term lists into all products.
void expand(const std::vector<std::vector<std::pair<std::size_t, Scalar>>>& slots, std::size_t at,
            std::vector<std::size_t>& key, const Scalar& c, MultiVec& out) {
  if (at == slots.size()) {
    add_term(out, key, c);
    return;
  }
  for (const auto& [d, s] : slots[at]) {
    key[at] = d;
    expand(slots, at + 1, key, c * s, out);
  }
}

Vec encode_multi(const MultiVec& t, const std::vector<std::size_t>& rad) {
  Vec out;
  for (const auto& [k, c] : t) axpy(out, c, unit_vec(index_of_digits(k, rad)));
  return out;
}

std::vector<std::pair<std::size_t, Scalar>> comul_terms(const HopfAlgebra& h, std::size_t a) {
  std::vector<std::pair<std::size_t, Scalar>> r;
  for (const auto& [p, q, c] : h.comul_table[a]) r.emplace_back(p * h.dim() + q, c);
  return r;
}

std::vector<std::pair<std::size_t, Scalar>> psi_terms(const PsiMap& psi, std::size_t m) {
  std::vector<std::pair<std::size_t, Scalar>> r;
  for (const auto& [xy, c] : psi.psi.col(m)) r.emplace_back(xy, c);
  return r;
}

// (f (x) g)(v) for v in A (x) B with index x * db + y.
Vec pair_apply(const std::function<Vec(std::size_t)>& f, const std::function<Vec(std::size_t)>& g,
               std::size_t db, std::size_t dout_b, const Vec& v) {
  Vec out;
  for (const auto& [idx, c] : v) {
    Vec fx = f(idx / db), gy = g(idx % db);
    for (const auto& [i, s] : fx)
      for (const auto& [j, t] : gy) axpy(out, c * s * t, unit_vec(i * dout_b + j));
  }
  return out;
}

Vec sum_basis(const FreeSpace& s) {
  Vec v;
  for (std::size_t i = 0; i < s.dim(); ++i) v[i] = 1;
  return v;
}

// Direct sum tagged by p of range(dim_p * dim_{n-p}).
FreeSpace bidegree_space(const std::vector<std::pair<int, std::size_t>>& parts) {
  std::vector<std::pair<long long, FreeSpace>> ps;
  for (const auto& [p, d] : parts) ps.emplace_back(p, FreeSpace::range(d));
  return FreeSpace::direct_sum(ps);
}

std::vector<std::pair<int, int>> bidegrees_of(int n) {
  std::vector<std::pair<int, int>> b;
  for (int p = 0; p <= n; ++p) b.emplace_back(p, n - p);
  return b;
}

// Classes of `target` solved through the Kunneth map j.
Vec through_kunneth(const LinMap& j, const Vec& cls, const std::string& what) {
  auto s = solve(j, cls);
  if (!s) throw StructuralError(what + ": class outside the Kunneth image");
  return *s;
}

LinMap swap_tensor(const FreeSpace& ab, std::size_t da, std::size_t db, const FreeSpace& ba) {
  std::vector<Vec> cols(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) cols[i * db + j] = unit_vec(j * da + i);
  return LinMap(ab, ba, std::move(cols));
}

}  // namespace

// ------------------------------------------------------------ results

LinMap CoproductResult::component(int p) const {
  const FreeSpace& cod = classes.codomain();
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < cod.dim(); ++i)
    if (cod.label(i).items().at(0).as_int() == p) rows.push_back(i);
  std::vector<Vec> cols(classes.domain().dim());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows.size(); ++r) {
      Scalar v = classes.entry(rows[r], c);
      if (sgn(v) != 0) cols[c][r] = v;
    }
  return LinMap(classes.domain(), FreeSpace::range(rows.size()), std::move(cols));
}

Json CoproductResult::to_json() const {
  Json j;
  j["kind"] = kind;
  j["degree"] = degree;
  Json b = Json::array();
  for (const auto& [p, q] : bidegrees) b.push_back({p, q});
  j["bidegrees"] = b;
  j["classes"] = classes.to_json();
  j["chain"] = chain.to_json();
  j["chain_map"] = chain_map;
  j["rep_independent"] = rep_independent;
  j["inconclusive"] = inconclusive;
  if (!witness.empty()) j["witness"] = witness;
  return j;
}

// -------------------------------------------------------------- PhiRho

PhiRho::PhiRho(const HopfAlgebra& h, const SAYDModule& m, const PsiMap& psi, int cap)
    : h_(h), m_(m), psi_(psi), cap_(cap) {
  if (!h.is_cocommutative()) throw StructuralError("phi_rho: " + h.name + " is not cocommutative");
  std::string w;
  if (!check_psi_coaction(psi, m, h, &w)) throw StructuralError("phi_rho: psi fails the coaction gate at " + w);
  ops_ = cm_presentation(h, m, cap);
}

Vec PhiRho::apply(int n, const Vec& v) const {
  std::size_t hd = h_.dim(), md = m_.dim();
  auto rad = pres_radices(md, hd, n), big = pres_radices(md * md, hd * hd, n);
  MultiVec acc;
  for (const auto& [e, s] : v) {
    auto key = digits_of(e, rad);
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> slots{psi_terms(psi_, key[0])};
    for (int l = 1; l <= n; ++l) slots.push_back(comul_terms(h_, key[l]));
    std::vector<std::size_t> k(slots.size());
    expand(slots, 0, k, s, acc);
  }
  return omega_presentation(hd, hd, md, md, n, encode_multi(acc, big));
}

LinMap PhiRho::map(int n) const {
  FreeSpace s = ops_->space(n);
  std::vector<Vec> cols(s.dim());
  for (std::size_t e = 0; e < cols.size(); ++e) cols[e] = apply(n, unit_vec(e));
  return LinMap(s, FreeSpace::tensor(s, s), std::move(cols));
}

AxiomReport PhiRho::check() const {
  AxiomResult cf("rho_coface"), cd("rho_codegeneracy"), cy("rho_tau");
  const CyclicOps& o = *ops_;
  auto compare = [&](AxiomResult& r, const Vec& lhs, const Vec& rhs, const std::string& where) {
    if (r.passed && lhs != rhs) {
      r.passed = false;
      r.witness = where;
    }
  };
  for (int n = 1; n <= cap_; ++n) {
    std::size_t dn = o.dim(n);
    for (int i = 0; i <= n; ++i)
      for (std::size_t e = 0; e < o.dim(n - 1); ++e) {
        auto f = [&](std::size_t x) { return o.face(n, i, x); };
        Vec lhs = apply(n, o.face(n, i, e));
        Vec rhs = pair_apply(f, f, o.dim(n - 1), dn, apply(n - 1, unit_vec(e)));
        compare(cf, lhs, rhs, "coface " + std::to_string(i) + " into degree " + std::to_string(n) + " on basis " +
                                  std::to_string(e));
      }
  }
  for (int n = 0; n < cap_; ++n) {
    std::size_t dn = o.dim(n);
    for (int i = 0; i <= n; ++i)
      for (std::size_t e = 0; e < o.dim(n + 1); ++e) {
        auto f = [&](std::size_t x) { return o.degen(n, i, x); };
        Vec lhs = apply(n, o.degen(n, i, e));
        Vec rhs = pair_apply(f, f, o.dim(n + 1), dn, apply(n + 1, unit_vec(e)));
        compare(cd, lhs, rhs, "codegeneracy " + std::to_string(i) + " into degree " + std::to_string(n) +
                                  " on basis " + std::to_string(e));
      }
  }
  for (int n = 0; n <= cap_; ++n) {
    std::size_t dn = o.dim(n);
    for (std::size_t e = 0; e < dn; ++e) {
      auto f = [&](std::size_t x) { return o.cyc(n, x); };
      Vec lhs = apply(n, o.cyc(n, e));
      Vec rhs = pair_apply(f, f, dn, dn, apply(n, unit_vec(e)));
      compare(cy, lhs, rhs, "tau in degree " + std::to_string(n) + " on basis " + std::to_string(e));
    }
  }
  return {cf, cd, cy};
}

ShuffleFormulaCheck check_shuffle_formula(const PhiRho& rho) {
  const CyclicOps& o = rho.ops();
  if (o.dim(0) != 1) throw StructuralError("shuffle formula: coefficients must be one-dimensional");
  FreeSpace s1 = o.space(1);
  std::size_t hd = s1.dim();
  ShuffleFormulaCheck r;
  for (int n = 0; n <= rho.cap(); ++n) {
    auto rad = pres_radices(1, hd, n);
    for (std::size_t e = 0; e < o.dim(n); ++e) {
      auto key = digits_of(e, rad);
      Vec v = rho.apply(n, unit_vec(e));
      for (int p = 0; p <= n; ++p) {
        int q = n - p;
        Vec generic;
        for (const auto& t : sh_terms(p, q)) axpy(generic, 1, apply_term(o, o, t, v));
        Vec expl;
        for (const auto& s : shuffles(p, q)) {
          std::vector<std::size_t> x{0}, y{0};
          for (int k = 0; k < p; ++k) x.push_back(key[s.sigma[k]]);
          for (int k = p; k < n; ++k) y.push_back(key[s.sigma[k]]);
          axpy(expl, s.sign,
               unit_vec(index_of_digits(x, pres_radices(1, hd, p)) * o.dim(q) +
                        index_of_digits(y, pres_radices(1, hd, q))));
        }
        ++r.instances;
        if (r.passed && generic != expl) {
          r.passed = false;
          r.witness = "n=" + std::to_string(n) + " p=" + std::to_string(p) + " basis " + key_str(key);
        }
      }
    }
  }
  return r;
}

// ------------------------------------------------------ cohomology side

CochainCoproduct::CochainCoproduct(const HopfAlgebra& h, const SAYDModule& m, const PsiMap& psi, int cap)
    : rho_(h, m, psi, cap) {
  chains_ = materialize_cocyclic(rho_.ops()).dual();
  ez_ = std::make_unique<EzPair>(chains_, chains_);
  src_ = ez_->na().mixed.transpose();
  diag_ = ez_->diag().transpose();
  tensor_ = tensor_mixed(src_, src_);
  MixedComplex t = ez_->tensor().transpose();
  for (const auto& [n, f] : t.b)
    if (!(tensor_.b.at(n) == f)) throw StructuralError("tensor of cochains differs from the transposed tensor");
}

LinMap CochainCoproduct::rho_bar(int n) const {
  const Quotient &qa = ez_->na().quot.at(n), &qd = ez_->np().quot.at(n);
  LinMap r = rho_.map(n);
  LinMap full = LinMap(qa.ambient(), qd.ambient(), r.cols());
  LinMap up = compose(full, qa.projection().transpose());
  LinMap down = compose(qd.section().transpose(), up);
  if (!(compose(qd.projection().transpose(), down) == up))
    throw StructuralError("rho does not preserve normalized cochains in degree " + std::to_string(n));
  return down;
}

LinMap CochainCoproduct::sh_rho(int n) const {
  LinMap f = compose(ez_->sh(n).transpose(), rho_bar(n));
  return LinMap(f.domain(), tensor_.space(n), f.cols());
}

CoproductResult CochainCoproduct::hh(int n) const {
  if (n + 1 > rho_.cap()) throw CapOverflow(n + 1, rho_.cap());
  CoproductResult r;
  r.kind = "HH^";
  r.degree = n;
  r.bidegrees = bidegrees_of(n);
  LinMap f = sh_rho(n);
  r.chain = f;
  r.chain_map = compose(tensor_.b_from(n), f) == compose(sh_rho(n + 1), src_.b_from(n));
  if (!r.chain_map) r.witness = "Sh rho is not a cochain map at degree " + std::to_string(n);
  Homology hs = homology_at(src_.hochschild_window(), n);
  Homology ht = homology_at(tensor_.hochschild_window(), n);
  LinMap j = kunneth_hh(src_, src_, n);
  std::vector<Vec> cols;
  r.rep_independent = true;
  Vec shift = n >= 1 ? src_.b_from(n - 1).apply(sum_basis(src_.space(n - 1))) : Vec{};
  for (const auto& z : hs.reps) {
    Vec c = through_kunneth(j, ht.classify(f.apply(z)), "HH coproduct");
    Vec z2 = z;
    axpy(z2, 1, shift);
    if (through_kunneth(j, ht.classify(f.apply(z2)), "HH coproduct") != c) r.rep_independent = false;
    cols.push_back(std::move(c));
  }
  r.classes = LinMap(hs.space, j.domain(), std::move(cols));
  return r;
}

namespace {

SMap rho_smap(const MixedComplex& src, const MixedComplex& dst, const std::function<LinMap(int)>& f) {
  SMap s;
  s.src = src;
  s.dst = dst;
  s.comps.resize(1);
  for (int n = 0; n <= src.cap; ++n) s.comps[0][n] = f(n);
  return s;
}

Vec push_S(const TotWindow& w, Vec v, int from, int to) {
  for (int n = from; n != to; n += 2 * w.dir()) v = w.S.at(n).apply(v);
  return v;
}

}  // namespace

CoproductResult CochainCoproduct::hc(int n) const {
  int cap = rho_.cap();
  // varsigma lands in degree n + 2 of the shifted pair complex, which needs
  // its outgoing differential
  if (n + 3 > cap) throw CapOverflow(n + 3, cap);
  CoproductResult r;
  r.kind = "HC^";
  r.degree = n;
  r.bidegrees = bidegrees_of(n);
  SMap rs = rho_smap(src_, diag_, [&](int k) { return rho_bar(k); });
  SMap comp = compose_smap(sh_tilde(*ez_).transpose(), rs);
  r.chain_map = smap_check(comp, &r.witness);
  TotWindow ts = tot_window(src_), tt = tot_window(comp.dst);
  LinMap f = smap_tot(comp, ts, tt, n);
  r.chain = f;
  Homology hs = homology_at(ts.tot, n), ht = homology_at(tt.tot, n);
  LinMap g = induced_map(hs, ht, f);

  KunnethMaps km = kunneth_maps(ez_->na().mixed, ez_->nb().mixed);
  Homology hc = homology_at(km.coses.c, n);
  LinMap to_cos = induced_map(ht, hc, LinMap::identity(tt.tot.space(n)));
  LinMap v = compose(km.varsigma(n), compose(to_cos, g));

  // H^{n+2} of the shifted pair complex is the pair complex in degree n.
  TotWindow ta = tot_window(src_);
  ComplexWindow pair = tensor_windows(ta.tot, ta.tot, cap);
  LinMap j = kunneth_windows(ta.tot, ta.tot, pair, n);
  Homology hpair = homology_at(pair, n), ha = homology_at(km.coses.a, n + 2);
  std::vector<Vec> lcols;
  for (const auto& rep : ha.reps) lcols.push_back(through_kunneth(j, hpair.classify(rep), "HC coproduct"));
  LinMap l(ha.space, j.domain(), std::move(lcols));
  r.classes = compose(l, v);

  r.rep_independent = true;
  Vec shift = n >= 1 ? ts.tot.diff_from(n - 1).apply(sum_basis(ts.tot.space(n - 1))) : Vec{};
  for (const auto& z : hs.reps) {
    Vec z2 = z;
    axpy(z2, 1, shift);
    if (ht.classify(f.apply(z2)) != ht.classify(f.apply(z))) r.rep_independent = false;
  }
  return r;
}

namespace {

struct HpReps {
  std::vector<int> degree;
  std::vector<Vec> reps;
};

// Classes of HC^s whose images under S^k in the top degree t of the parity
// span the stable image; s is the lowest degree that reaches it.
HpReps hp_reps(const TotWindow& w, int parity, int top, std::size_t dim) {
  HpReps r;
  if (dim == 0) return r;
  Homology ht = homology_at(w.tot, top);
  for (int s = parity; s <= top; s += 2) {
    Homology hs = homology_at(w.tot, s);
    std::vector<Vec> images, chosen;
    for (const auto& z : hs.reps) {
      Vec img = ht.classify(push_S(w, z, s, top));
      images.push_back(img);
      std::vector<Vec> trial;
      for (const auto& c : chosen) trial.push_back(ht.classify(push_S(w, c, s, top)));
      trial.push_back(img);
      LinMap m(FreeSpace::range(trial.size()), ht.space, trial);
      if (rank(m) == trial.size()) chosen.push_back(z);
      if (chosen.size() == dim) break;
    }
    if (chosen.size() == dim) {
      for (auto& c : chosen) {
        r.degree.push_back(s);
        r.reps.push_back(std::move(c));
      }
      return r;
    }
  }
  throw StructuralError("HP representatives not found below degree " + std::to_string(top));
}

int top_of_parity(int cap, int parity) {
  int t = cap - 1;
  if ((t & 1) != parity) --t;
  return t;
}

}  // namespace

CoproductResult CochainCoproduct::hp(int parity) const {
  int cap = rho_.cap();
  CoproductResult r;
  r.kind = "HP^";
  r.degree = parity;
  for (int e1 = 0; e1 < 2; ++e1) r.bidegrees.emplace_back(e1, (parity + e1) & 1);
  CyclicInvariants inv;
  try {
    inv = hh_hc_hp(chains_, true);
  } catch (const StructuralError& e) {
    r.inconclusive = true;
    r.witness = e.what();
    return r;
  }
  if (!inv.hp[0].stabilized || !inv.hp[1].stabilized) {
    r.inconclusive = true;
    r.witness = "HP window not stabilized at caps " + std::to_string(cap - 2) + ", " + std::to_string(cap);
    return r;
  }
  SMap rs = rho_smap(src_, diag_, [&](int k) { return rho_bar(k); });
  SMap comp = compose_smap(sh_tilde(*ez_).transpose(), rs);
  r.chain_map = smap_check(comp, &r.witness);
  TotWindow ts = tot_window(src_), tt = tot_window(comp.dst);

  std::array<HpReps, 2> reps;
  for (int e = 0; e < 2; ++e) reps[e] = hp_reps(ts, e, top_of_parity(cap, e), inv.hp[e].dim);
  int top = top_of_parity(cap, parity);
  Homology htop = homology_at(tt.tot, top);

  // nabla on products of representatives, pushed to the top degree
  std::vector<std::pair<int, std::size_t>> parts;
  std::vector<Vec> ncols;
  for (int e1 = 0; e1 < 2; ++e1) {
    int e2 = (parity + e1) & 1;
    parts.emplace_back(e1, reps[e1].reps.size() * reps[e2].reps.size());
    for (std::size_t a = 0; a < reps[e1].reps.size(); ++a)
      for (std::size_t b = 0; b < reps[e2].reps.size(); ++b) {
        int s1 = reps[e1].degree[a], s2 = reps[e2].degree[b], s = s1 + s2;
        if (s + 1 > cap || s > top) throw CapOverflow(s + 1, cap);
        Vec acc;
        for (int k1 = 0; s1 - 2 * k1 >= 0; ++k1)
          for (int k2 = 0; s2 - 2 * k2 >= 0; ++k2) {
            int i = s1 - 2 * k1, jd = s2 - 2 * k2;
            Vec x = ts.projection(s1, k1).apply(reps[e1].reps[a]);
            Vec y = ts.projection(s2, k2).apply(reps[e2].reps[b]);
            if (x.empty() || y.empty()) continue;
            Vec t = tensor_summand_inclusion(src_, src_, i, jd).apply(kron_vec(x, y, src_.space(jd).dim()));
            axpy(acc, 1, tt.inclusion(s, k1 + k2).apply(t));
          }
        ncols.push_back(htop.classify(push_S(tt, acc, s, top)));
      }
  }
  LinMap nabla(bidegree_space(parts), htop.space, std::move(ncols));

  std::vector<Vec> cols;
  r.rep_independent = true;
  const auto& mine = reps[parity];
  for (std::size_t a = 0; a < mine.reps.size(); ++a) {
    int s = mine.degree[a];
    LinMap f = smap_tot(comp, ts, tt, s);
    if (a == 0) r.chain = f;
    Vec c = through_kunneth(nabla, htop.classify(push_S(tt, f.apply(mine.reps[a]), s, top)), "HP coproduct");
    if (s + 2 <= top) {
      Vec z2 = push_S(ts, mine.reps[a], s, s + 2);
      LinMap f2 = smap_tot(comp, ts, tt, s + 2);
      Vec c2 = through_kunneth(nabla, htop.classify(push_S(tt, f2.apply(z2), s + 2, top)), "HP coproduct");
      if (c2 != c) r.rep_independent = false;
    }
    cols.push_back(std::move(c));
  }
  r.classes = LinMap(FreeSpace::range(mine.reps.size()), nabla.domain(), std::move(cols));
  return r;
}

CoproductResult hh_coproduct(const HopfAlgebra& h, const SAYDModule& m, const PsiMap& psi, int n, int cap) {
  return CochainCoproduct(h, m, psi, cap).hh(n);
}
CoproductResult hc_coproduct(const HopfAlgebra& h, const SAYDModule& m, const PsiMap& psi, int n, int cap) {
  return CochainCoproduct(h, m, psi, cap).hc(n);
}
CoproductResult hp_coproduct(const HopfAlgebra& h, const SAYDModule& m, const PsiMap& psi, int parity, int cap) {
  return CochainCoproduct(h, m, psi, cap).hp(parity);
}

// ------------------------------------------------------ coalgebra axioms

namespace {

struct Blocks {
  std::vector<int> tags;
  std::vector<std::size_t> off;
};

Blocks blocks_of(const FreeSpace& s) {
  Blocks b;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    int p = static_cast<int>(s.label(i).items().at(0).as_int());
    if (b.tags.empty() || b.tags.back() != p) {
      b.tags.push_back(p);
      b.off.push_back(i);
    }
  }
  return b;
}

}  // namespace

CoalgebraCheck check_coalgebra(const std::function<LinMap(int)>& cop, const std::function<std::size_t(int)>& dims,
                               int top) {
  CoalgebraCheck r;
  std::map<int, LinMap> c;
  for (int n = 0; n <= top; ++n) c[n] = cop(n);
  // entry of x under cop(n) in summand (p, n-p) at (i, j)
  auto coeff = [&](int n, std::size_t x, int p, std::size_t i, std::size_t j) -> Scalar {
    const LinMap& m = c.at(n);
    Blocks b = blocks_of(m.codomain());
    for (std::size_t k = 0; k < b.tags.size(); ++k)
      if (b.tags[k] == p) return m.entry(b.off[k] + i * dims(n - p) + j, x);
    return Scalar(0);
  };
  for (int n = 0; n <= top; ++n)
    for (std::size_t x = 0; x < dims(n); ++x) {
      // coassociativity on H^a (x) H^b (x) H^c
      for (int a = 0; a <= n; ++a)
        for (int b = 0; a + b <= n; ++b) {
          int cc = n - a - b;
          for (std::size_t i = 0; i < dims(a); ++i)
            for (std::size_t j = 0; j < dims(b); ++j)
              for (std::size_t k = 0; k < dims(cc); ++k) {
                Scalar left = 0, right = 0;
                for (std::size_t u = 0; u < dims(a + b); ++u)
                  left += coeff(n, x, a + b, u, k) * coeff(a + b, u, a, i, j);
                for (std::size_t u = 0; u < dims(b + cc); ++u)
                  right += coeff(n, x, a, i, u) * coeff(b + cc, u, b, j, k);
                if (left != right && r.coassociative) {
                  r.coassociative = false;
                  r.witness = "coassociativity at degree " + std::to_string(n) + " class " + std::to_string(x) +
                              " into (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(cc) +
                              ")";
                }
              }
        }
      // graded cocommutativity
      for (int p = 0; p <= n; ++p) {
        int q = n - p;
        Scalar sg = ((p * q) & 1) ? -1 : 1;
        for (std::size_t i = 0; i < dims(p); ++i)
          for (std::size_t j = 0; j < dims(q); ++j)
            if (coeff(n, x, p, i, j) != sg * coeff(n, x, q, j, i) && r.cocommutative) {
              r.cocommutative = false;
              if (r.witness.empty())
                r.witness = "cocommutativity at degree " + std::to_string(n) + " class " + std::to_string(x);
            }
      }
    }
  return r;
}

// -------------------------------------------------------- homology side

ChainCoproduct::ChainCoproduct(const HopfAlgebra& h, const SAYDModule& m, const PsiMap& psi, int cap)
    : h_(h), m_(m), psi_(psi) {
  if (!h.is_cocommutative()) throw StructuralError("coproduct: " + h.name + " is not cocommutative");
  std::string w;
  if (!check_psi_action(psi, m, h, &w)) throw StructuralError("coproduct: psi fails the action gate at " + w);
  hc_ = hopf_cyclic(h, m, cap);
  ez_ = std::make_unique<EzPair>(hc_.module, hc_.module);
}

LinMap ChainCoproduct::rho(int n) const {
  {
    std::lock_guard<std::mutex> g(mu_);
    auto it = rho_memo_.find(n);
    if (it != rho_memo_.end()) return it->second;
  }
  const Subspace& k = hc_.spaces.at(n).kernel;
  std::size_t hd = h_.dim(), md = m_.dim();
  std::vector<std::size_t> rad(n + 1, hd), big(n + 1, hd * hd);
  rad.push_back(md);
  big.push_back(md * md);
  std::vector<Vec> kb;
  std::size_t ad = k.ambient().dim();
  for (const auto& x : k.basis())
    for (const auto& y : k.basis()) kb.push_back(kron_vec(x, y, ad));
  Subspace target(FreeSpace::tensor(k.ambient(), k.ambient()), kb);
  std::vector<Vec> cols;
  for (const auto& v : k.basis()) {
    MultiVec acc;
    for (const auto& [e, s] : v) {
      auto key = digits_of(e, rad);
      std::vector<std::vector<std::pair<std::size_t, Scalar>>> slots;
      for (int l = 0; l <= n; ++l) slots.push_back(comul_terms(h_, key[l]));
      slots.push_back(psi_terms(psi_, key[n + 1]));
      std::vector<std::size_t> kk(slots.size());
      expand(slots, 0, kk, s, acc);
    }
    Vec w = omega_cyclic_ambient(hd, hd, md, md, n, encode_multi(acc, big));
    auto c = target.coordinates(w);
    if (!c) throw StructuralError("rho leaves the cotensor product in degree " + std::to_string(n));
    cols.push_back(std::move(*c));
  }
  FreeSpace s = hc_.module.space(n);
  LinMap r(s, FreeSpace::tensor(s, s), std::move(cols));
  std::lock_guard<std::mutex> g(mu_);
  rho_memo_.emplace(n, r);
  return r;
}

LinMap ChainCoproduct::rho_bar(int n) const {
  const Quotient &qa = ez_->na().quot.at(n), &qd = ez_->np().quot.at(n);
  LinMap r = rho(n);
  LinMap full(qa.ambient(), qd.ambient(), r.cols());
  for (const auto& rel : qa.relations())
    if (!qd.is_zero(full.apply(rel)))
      throw StructuralError("rho does not preserve degenerate chains in degree " + std::to_string(n));
  return compose(qd.projection(), compose(full, qa.section()));
}

AxiomReport ChainCoproduct::check_rho() const {
  AxiomResult fr("rho_face"), dr("rho_degeneracy"), tr("rho_t");
  const CyclicModule& c = hc_.module;
  CyclicModule d = diagonal(c, c);
  auto at = [&](int n) { return LinMap(c.space(n), d.space(n), rho(n).cols()); };
  auto cmp = [](AxiomResult& r, const LinMap& a, const LinMap& b, const std::string& w) {
    if (r.passed && !(a == b)) {
      r.passed = false;
      r.witness = w;
    }
  };
  for (int n = 1; n <= c.cap; ++n)
    for (int i = 0; i <= n; ++i)
      cmp(fr, compose(d.d(n, i), at(n)), compose(at(n - 1), c.d(n, i)),
          "face " + std::to_string(i) + " in degree " + std::to_string(n));
  for (int n = 0; n < c.cap; ++n)
    for (int i = 0; i <= n; ++i)
      cmp(dr, compose(d.s(n, i), at(n)), compose(at(n + 1), c.s(n, i)),
          "degeneracy " + std::to_string(i) + " in degree " + std::to_string(n));
  for (int n = 0; n <= c.cap; ++n)
    cmp(tr, compose(d.t(n), at(n)), compose(at(n), c.t(n)), "t in degree " + std::to_string(n));
  return {fr, dr, tr};
}

CoproductResult ChainCoproduct::hh(int n) const {
  int cap = ez_->cap();
  if (n + 1 > cap) throw CapOverflow(n + 1, cap);
  const MixedComplex& src = ez_->na().mixed;
  const MixedComplex& t = ez_->tensor();
  CoproductResult r;
  r.kind = "HH~";
  r.degree = n;
  r.bidegrees = bidegrees_of(n);
  auto f_at = [&](int k) { return compose(ez_->aw(k), rho_bar(k)); };
  LinMap f = f_at(n);
  r.chain = f;
  r.chain_map = n == 0 || compose(t.b_from(n), f) == compose(f_at(n - 1), src.b_from(n));
  if (!r.chain_map) r.witness = "AW rho is not a chain map at degree " + std::to_string(n);
  Homology hs = homology_at(src.hochschild_window(), n), ht = homology_at(t.hochschild_window(), n);
  LinMap j = kunneth_hh(src, ez_->nb().mixed, n);
  Vec shift = src.b_from(n + 1).apply(sum_basis(src.space(n + 1)));
  std::vector<Vec> cols;
  r.rep_independent = true;
  for (const auto& z : hs.reps) {
    Vec c = through_kunneth(j, ht.classify(f.apply(z)), "homology coproduct");
    Vec z2 = z;
    axpy(z2, 1, shift);
    if (through_kunneth(j, ht.classify(f.apply(z2)), "homology coproduct") != c) r.rep_independent = false;
    cols.push_back(std::move(c));
  }
  r.classes = LinMap(hs.space, j.domain(), std::move(cols));
  return r;
}

CoproductResult ChainCoproduct::hc(int n) const {
  int cap = ez_->cap();
  if (n + 1 > cap) throw CapOverflow(n + 1, cap);
  const MixedComplex& src = ez_->na().mixed;
  CoproductResult r;
  r.kind = "HC~";
  r.degree = n;
  for (int i = 0; i <= n; ++i) r.bidegrees.emplace_back(i, n - i);
  SMap rs = rho_smap(src, ez_->diag(), [&](int k) { return rho_bar(k); });
  SMap comp = compose_smap(aw_tilde(*ez_), rs);
  r.chain_map = smap_check(comp, &r.witness);
  KunnethMaps km = kunneth_maps(src, ez_->nb().mixed);
  TotWindow ts = tot_window(src);
  LinMap f = compose(km.I.at(n), smap_tot(comp, ts, km.tt, n));
  r.chain = f;
  Homology hs = homology_at(ts.tot, n), hp = homology_at(km.pair, n);
  LinMap j = kunneth_windows(km.ta.tot, km.tb.tot, km.pair, n);
  Vec shift = ts.tot.diff_from(n + 1).apply(sum_basis(ts.tot.space(n + 1)));
  std::vector<Vec> cols;
  r.rep_independent = true;
  for (const auto& z : hs.reps) {
    Vec c = through_kunneth(j, hp.classify(f.apply(z)), "cyclic homology coproduct");
    Vec z2 = z;
    axpy(z2, 1, shift);
    if (through_kunneth(j, hp.classify(f.apply(z2)), "cyclic homology coproduct") != c) r.rep_independent = false;
    cols.push_back(std::move(c));
  }
  r.classes = LinMap(hs.space, j.domain(), std::move(cols));
  return r;
}

HomologyCoproducts homology_coproducts(const HopfAlgebra& h, const SAYDModule& m, const PsiMap& psi, int n,
                                       int cap) {
  ChainCoproduct c(h, m, psi, cap);
  return {c.hh(n), c.hc(n), c.check_rho()};
}

// -------------------------------------------------------------- products

CupProducts::CupProducts(const CyclicModule& a, const CyclicModule& b)
    : ez_(a, b), ta_(tot_window(ez_.na().mixed)), tb_(tot_window(ez_.nb().mixed)), td_(tot_window(ez_.diag())) {}

const LinMap& CupProducts::sh_at(int n) const {
  std::lock_guard<std::mutex> g(mu_);
  auto it = sh_memo_.find(n);
  if (it == sh_memo_.end()) it = sh_memo_.emplace(n, ez_.sh(n)).first;
  return it->second;
}

Vec CupProducts::cross(int p, int q, const Vec& x, const Vec& y) const {
  if (p + q > ez_.cap()) throw CapOverflow(p + q, ez_.cap());
  const MixedComplex &a = ez_.na().mixed, &b = ez_.nb().mixed;
  Vec t = tensor_summand_inclusion(a, b, p, q).apply(kron_vec(x, y, b.space(q).dim()));
  return sh_at(p + q).apply(t);
}

Vec CupProducts::star(int p, int q, const Vec& x, const Vec& y) const {
  int n = p + q + 1;
  if (n > ez_.cap()) throw CapOverflow(n, ez_.cap());
  Vec bx = ez_.na().mixed.B_from(p).apply(ta_.projection(p, 0).apply(x));
  Vec out;
  for (int l = 0; q - 2 * l >= 0; ++l) {
    Vec yl = tb_.projection(q, l).apply(y);
    axpy(out, 1, td_.inclusion(n, l).apply(cross(p + 1, q - 2 * l, bx, yl)));
  }
  return out;
}

LinMap CupProducts::cross_hh(int p, int q) const {
  Homology ha = homology_at(ez_.na().mixed.hochschild_window(), p);
  Homology hb = homology_at(ez_.nb().mixed.hochschild_window(), q);
  Homology hd = homology_at(ez_.diag().hochschild_window(), p + q);
  std::vector<Vec> cols;
  for (const auto& x : ha.reps)
    for (const auto& y : hb.reps) cols.push_back(hd.classify(cross(p, q, x, y)));
  FreeSpace dom = FreeSpace::range(cols.size());
  return LinMap(dom, hd.space, std::move(cols));
}

LinMap CupProducts::star_hc(int p, int q) const {
  Homology ha = homology_at(ta_.tot, p), hb = homology_at(tb_.tot, q), hd = homology_at(td_.tot, p + q + 1);
  std::vector<Vec> cols;
  for (const auto& x : ha.reps)
    for (const auto& y : hb.reps) cols.push_back(hd.classify(star(p, q, x, y)));
  FreeSpace dom = FreeSpace::range(cols.size());
  return LinMap(dom, hd.space, std::move(cols));
}

bool CupProducts::check_b_cross(int p, int q, std::string* witness) const {
  const MixedComplex &a = ez_.na().mixed, &b = ez_.nb().mixed, &d = ez_.diag();
  if (p + q + 2 > ez_.cap()) throw CapOverflow(p + q + 2, ez_.cap());
  for (std::size_t i = 0; i < a.space(p).dim(); ++i)
    for (std::size_t j = 0; j < b.space(q).dim(); ++j) {
      Vec x = unit_vec(i), y = unit_vec(j);
      Vec by = b.B_from(q).apply(y);
      Vec lhs = d.B_from(p + q + 1).apply(cross(p, q + 1, x, by));
      Vec rhs = cross(p + 1, q + 1, a.B_from(p).apply(x), by);
      if (lhs != rhs) {
        if (witness) *witness = "basis pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
        return false;
      }
    }
  return true;
}

CupProducts::RabtCheck CupProducts::rabt_sign(int p, int q) const {
  RabtCheck out;
  const MixedComplex &a = ez_.na().mixed, &b = ez_.nb().mixed, &d = ez_.diag();
  if (p + q + 1 > ez_.cap()) throw CapOverflow(p + q + 1, ez_.cap());
  auto options = [](const MixedComplex& m, int deg) {
    std::vector<Vec> v{Vec{}};
    if (deg >= 0)
      for (std::size_t i = 0; i < m.space(deg).dim(); ++i) v.push_back(unit_vec(i));
    return v;
  };
  bool plus = true, minus = true;
  Scalar sp = (p & 1) ? -1 : 1;
  for (std::size_t i = 0; i < a.space(p).dim(); ++i) {
    Vec xp = unit_vec(i), bxp = a.B_from(p).apply(xp);
    for (const auto& xm : options(a, p - 2))
      for (std::size_t j = 0; j < b.space(q).dim(); ++j) {
        Vec yq = unit_vec(j);
        for (const auto& ym : options(b, q - 2)) {
          Vec lhs = d.b_from(p + q + 1).apply(cross(p + 1, q, bxp, yq));
          if (q >= 2) axpy(lhs, 1, d.B_from(p + q - 1).apply(cross(p + 1, q - 2, bxp, ym)));
          Vec inner = a.b_from(p).apply(xp);
          if (p >= 2) axpy(inner, 1, a.B_from(p - 2).apply(xm));
          Vec rhs = p >= 1 ? cross(p, q, a.B_from(p - 1).apply(inner), yq) : Vec{};
          if (q >= 1) {
            Vec yy = b.b_from(q).apply(yq);
            if (q >= 2) axpy(yy, 1, b.B_from(q - 2).apply(ym));
            axpy(rhs, sp, cross(p + 1, q - 1, bxp, yy));
          }
          ++out.instances;
          if (!lhs.empty() || !rhs.empty()) ++out.nonzero;
          if (lhs != rhs) plus = false;
          if (lhs != scaled(rhs, -1)) minus = false;
          if (!plus && !minus) {
            out.witness = "basis x_p=" + std::to_string(i) + " y_q=" + std::to_string(j);
            return out;
          }
        }
      }
  }
  out.sign = plus ? 1 : -1;
  if (plus && minus) out.sign = 0;
  return out;
}

bool CupProducts::check_sh_prime_vanishes(int p, int q, std::string* witness) const {
  const MixedComplex &a = ez_.na().mixed, &b = ez_.nb().mixed;
  int n = p + q + 1;
  if (n + 2 > ez_.cap()) throw CapOverflow(n + 2, ez_.cap());
  LinMap shp = ez_.sh_prime(n);
  for (std::size_t i = 0; i < a.space(p).dim(); ++i)
    for (std::size_t j = 0; j < b.space(q).dim(); ++j) {
      Vec x = unit_vec(i), y = unit_vec(j);
      Vec l = tensor_summand_inclusion(a, b, p + 1, q).apply(kron_vec(a.B_from(p).apply(x), y, b.space(q).dim()));
      Vec r = tensor_summand_inclusion(a, b, p, q + 1)
                  .apply(kron_vec(x, b.B_from(q).apply(y), b.space(q + 1).dim()));
      if (!shp.apply(l).empty() || !shp.apply(r).empty()) {
        if (witness) *witness = "basis pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
        return false;
      }
    }
  return true;
}

LinMap flip_diag(const EzPair& ba, const EzPair& ab, int n) {
  const Quotient &qb = ba.np().quot.at(n), &qa = ab.np().quot.at(n);
  std::size_t db = ba.na().quot.at(n).ambient().dim(), da = ba.nb().quot.at(n).ambient().dim();
  LinMap sw = swap_tensor(qb.ambient(), db, da, qa.ambient());
  return compose(qa.projection(), compose(sw, qb.section()));
}

namespace {

Vec flip_tot(const CupProducts& ba, const CupProducts& ab, int n, const Vec& v) {
  Vec out;
  for (int k = 0; n - 2 * k >= 0; ++k) {
    Vec c = ba.tot_diag().projection(n, k).apply(v);
    if (c.empty()) continue;
    axpy(out, 1, ab.tot_diag().inclusion(n, k).apply(flip_diag(ba.ez(), ab.ez(), n - 2 * k).apply(c)));
  }
  return out;
}

}  // namespace

StarCommutativity check_star_commutative(const CupProducts& ab, const CupProducts& ba, int p, int q) {
  StarCommutativity r;
  int n = p + q + 1;
  Homology hx = homology_at(ab.tot_a().tot, p), hy = homology_at(ab.tot_b().tot, q);
  Homology hd = homology_at(ab.tot_diag().tot, n);
  Scalar s = (((p + 1) * (q + 1)) & 1) ? -1 : 1;
  for (std::size_t i = 0; i < hx.reps.size(); ++i)
    for (std::size_t j = 0; j < hy.reps.size(); ++j) {
      ++r.pairs;
      Vec lhs = ab.star(p, q, hx.reps[i], hy.reps[j]);
      Vec rhs = flip_tot(ba, ab, n, ba.star(q, p, hy.reps[j], hx.reps[i]));
      axpy(lhs, -s, rhs);
      if (!hd.is_boundary(lhs) && r.passed) {
        r.passed = false;
        r.witness = "classes (" + std::to_string(i) + "," + std::to_string(j) + ")";
      }
    }
  return r;
}

StarConnecting check_star_connecting(const CupProducts& prod, const KunnethMaps& k, int p, int q) {
  StarConnecting r;
  int n = p + q + 2;
  if (n > prod.ez().cap()) throw CapOverflow(n, prod.ez().cap());
  Homology hx = homology_at(k.ta.tot, p), hy = homology_at(k.tb.tot, q);
  Homology hc = homology_at(k.ses.c, n), ha = homology_at(k.ses.a, n - 1);
  LinMap delta = connecting_map(k.ses, n);
  SMap aw = aw_tilde(prod.ez());
  LinMap to_tensor = smap_tot(aw, prod.tot_diag(), k.tt, n - 1);
  bool plus = true, minus = true;
  for (std::size_t i = 0; i < hx.reps.size(); ++i)
    for (std::size_t j = 0; j < hy.reps.size(); ++j) {
      ++r.pairs;
      const Vec &x = hx.reps[i], &y = hy.reps[j];
      Vec v = window_pair_inclusion(k.ta.tot, k.tb.tot, n - 2, p).apply(kron_vec(x, y, k.tb.tot.space(q).dim()));
      Vec d = delta.apply(hc.classify(v));
      Vec s = ha.classify(to_tensor.apply(prod.star(p, q, x, y)));
      if (!d.empty() || !s.empty()) ++r.nonzero_images;
      if (d != s) plus = false;
      if (d != scaled(s, -1)) minus = false;
      if (!plus && !minus && r.witness.empty())
        r.witness = "classes (" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
  r.sign = plus ? 1 : minus ? -1 : 0;
  return r;
}

// ------------------------------------------------ products on C~(H, k)

Vec internal_cross(const HopfAlgebra& h, const HopfCyclicModule& c, int p, int q, const Vec& x, const Vec& y) {
  if (!h.is_commutative()) throw StructuralError("internal product: " + h.name + " is not commutative");
  int n = p + q;
  if (n > c.module.cap) throw CapOverflow(n, c.module.cap);
  OpsPtr ops = module_ops(c.module);
  Vec v = kron_vec(x, y, c.module.space(q).dim());
  Vec d;
  for (const auto& t : sh_terms(p, q)) axpy(d, 1, apply_term(*ops, *ops, t, v));
  const Subspace& k = c.spaces.at(n).kernel;
  std::size_t dk = k.space().dim(), hd = h.dim(), legs = 1;
  for (int l = 0; l <= n; ++l) legs *= hd;
  if (k.ambient().dim() != legs) throw StructuralError("internal product: coefficients must be k");
  std::vector<std::size_t> rad(n + 1, hd);
  rad.push_back(1);
  Vec amb;
  for (const auto& [idx, s] : d) {
    const Vec &ax = k.basis().at(idx / dk), &ay = k.basis().at(idx % dk);
    for (const auto& [ea, ca] : ax)
      for (const auto& [eb, cb] : ay) {
        auto ka = digits_of(ea, rad), kb = digits_of(eb, rad);
        std::vector<std::vector<std::pair<std::size_t, Scalar>>> slots;
        for (int l = 0; l <= n; ++l) {
          std::vector<std::pair<std::size_t, Scalar>> terms;
          for (const auto& [e, u] : h.mul(ka[l], kb[l])) terms.emplace_back(e, u);
          slots.push_back(terms);
        }
        slots.push_back({{0, Scalar(1)}});
        MultiVec mv;
        std::vector<std::size_t> key(slots.size());
        expand(slots, 0, key, s * ca * cb, mv);
        axpy(amb, 1, encode_multi(mv, rad));
      }
  }
  auto coords = k.coordinates(amb);
  if (!coords) throw StructuralError("internal product leaves the cotensor product");
  return *coords;
}

bool check_internal_commutative(const HopfAlgebra& h, const HopfCyclicModule& c, int p, int q,
                                std::string* witness) {
  NormalizedModule nm = normalize(c.module);
  int n = p + q;
  if (n + 1 > c.module.cap) throw CapOverflow(n + 1, c.module.cap);
  auto zp = kernel_image(nm.mixed.b_from(p)).kernel, zq = kernel_image(nm.mixed.b_from(q)).kernel;
  Homology hn = homology_at(nm.mixed.hochschild_window(), n);
  LinMap sp = nm.quot[p].section(), sq = nm.quot[q].section();
  Scalar s = ((p * q) & 1) ? -1 : 1;
  for (std::size_t i = 0; i < zp.size(); ++i)
    for (std::size_t j = 0; j < zq.size(); ++j) {
      Vec x = sp.apply(zp[i]), y = sq.apply(zq[j]);
      Vec diff = internal_cross(h, c, p, q, x, y);
      axpy(diff, -s, internal_cross(h, c, q, p, y, x));
      if (!hn.is_boundary(nm.quot[n].project(diff))) {
        if (witness) *witness = "cycles (" + std::to_string(i) + "," + std::to_string(j) + ")";
        return false;
      }
    }
  return true;
}

LinMap cross_product(const HopfAlgebra& h, const SAYDModule& m, const HopfAlgebra& k, const SAYDModule& n, int p,
                     int q, int cap) {
  if (p + q + 1 > cap) throw CapOverflow(p + q + 1, cap);
  CyclicModule a = hopf_cyclic_module(h, m, cap), b = hopf_cyclic_module(k, n, cap);
  CupProducts prod(a, b);
  OmegaIso om = omega_cyclic(h, k, m, n, cap);
  NormalizedModule big = normalize(hopf_cyclic_module(tensor_hopf(h, k), tensor_sayd(m, h, n, k), cap));
  int d = p + q;
  Homology ha = homology_at(prod.ez().na().mixed.hochschild_window(), p);
  Homology hb = homology_at(prod.ez().nb().mixed.hochschild_window(), q);
  Homology hd = homology_at(big.mixed.hochschild_window(), d);
  LinMap sec = prod.ez().np().quot.at(d).section();
  std::vector<Vec> cols;
  for (const auto& x : ha.reps)
    for (const auto& y : hb.reps) {
      Vec un = sec.apply(prod.cross(p, q, x, y));
      cols.push_back(hd.classify(big.quot.at(d).project(om.inverse.at(d).apply(un))));
    }
  FreeSpace dom = FreeSpace::range(cols.size());
  return LinMap(dom, hd.space, std::move(cols));
}

}  // namespace hopfcup
