#include "hopfcup/sayd.hpp"

#include <algorithm>
#include <set>

namespace hopfcup {

Vec SAYDModule::act(const Vec& m, const Vec& h) const {
  Vec r;
  for (const auto& [i, s] : m)
    for (const auto& [j, t] : h) axpy(r, s * t, action_table.at(i).at(j));
  return r;
}

Vec SAYDModule::coact(const Vec& m, std::size_t hdim) const {
  (void)hdim;
  Vec r;
  std::size_t d = dim();
  for (const auto& [i, s] : m)
    for (const auto& [h, mm, c] : coaction_table.at(i)) axpy(r, s * c, unit_vec(h * d + mm));
  return r;
}

LinMap SAYDModule::action_map(const HopfAlgebra& h) const {
  // Domain M (x) H for the right tag, H (x) M for the left tag.
  bool right = side == SaydSide::RightLeft;
  FreeSpace dom = right ? FreeSpace::tensor(carrier, h.carrier) : FreeSpace::tensor(h.carrier, carrier);
  std::vector<Vec> cols(dom.dim());
  for (std::size_t m = 0; m < dim(); ++m)
    for (std::size_t a = 0; a < h.dim(); ++a) cols[right ? m * h.dim() + a : a * dim() + m] = action_table[m][a];
  return LinMap(dom, carrier, std::move(cols));
}

LinMap SAYDModule::coaction_map(const HopfAlgebra& h) const {
  std::vector<Vec> cols(dim());
  for (std::size_t m = 0; m < dim(); ++m) cols[m] = coact(unit_vec(m), h.dim());
  return LinMap(carrier, FreeSpace::tensor(h.carrier, carrier), std::move(cols));
}

namespace {

std::string mlab(const SAYDModule& m, std::size_t i) { return m.carrier.label(i).str(); }
std::string hlab(const HopfAlgebra& h, std::size_t a) { return h.carrier.label(a).str(); }

// Δ²(a) as terms (h1, h2, h3).
MultiVec comul2(const HopfAlgebra& h, std::size_t a) {
  MultiVec r;
  for (const auto& [p, q, s] : h.comul_table[a])
    for (const auto& [p1, p2, t] : h.comul_table[p]) add_term(r, {p1, p2, q}, s * t);
  return r;
}

// Element of H (x) M from multi-index terms (h, m).
Vec hm_vec(const MultiVec& t, std::size_t mdim) {
  Vec r;
  for (const auto& [k, c] : t) axpy(r, c, unit_vec(k[0] * mdim + k[1]));
  return r;
}

void fail(AxiomResult& r, std::string w) {
  if (r.passed) r.passed = false, r.witness = std::move(w);
}

}  // namespace

AxiomReport check_sayd(const SAYDModule& m, const HopfAlgebra& h) {
  AxiomReport rep;
  std::size_t md = m.dim(), hd = h.dim();
  bool right = m.side == SaydSide::RightLeft;

  AxiomResult shape{"shape"};
  if (m.action_table.size() != md || m.coaction_table.size() != md) fail(shape, "table sizes");
  for (const auto& row : m.action_table)
    if (row.size() != hd) fail(shape, "action row size");
  for (std::size_t i = 0; i < m.action_table.size() && shape.passed; ++i)
    for (const auto& v : m.action_table[i])
      for (const auto& [j, c] : v)
        if (j >= md) fail(shape, "action value outside M");
  for (const auto& terms : m.coaction_table)
    for (const auto& [a, j, c] : terms)
      if (a >= hd || j >= md) fail(shape, "coaction term outside H (x) M");
  rep.push_back(shape);
  if (!shape.passed) return rep;

  auto act = [&](const Vec& v, const Vec& x) { return m.act(v, x); };

  AxiomResult mod{"module"};
  for (std::size_t i = 0; i < md; ++i) {
    if (act(unit_vec(i), h.unit) != unit_vec(i)) fail(mod, mlab(m, i) + " (unit)");
    for (std::size_t a = 0; a < hd; ++a)
      for (std::size_t b = 0; b < hd; ++b) {
        if (!h.mul_defined(a, b)) {
          ++mod.skipped;
          continue;
        }
        const Vec& ab = *h.mul_table[a][b];
        // right: (m a) b = m (ab); left: a (b m) = (ab) m
        Vec lhs = right ? act(act(unit_vec(i), unit_vec(a)), unit_vec(b))
                        : act(act(unit_vec(i), unit_vec(b)), unit_vec(a));
        if (lhs != act(unit_vec(i), ab))
          fail(mod, "(" + mlab(m, i) + "," + hlab(h, a) + "," + hlab(h, b) + ")");
      }
  }
  rep.push_back(mod);

  AxiomResult comod{"comodule"};
  for (std::size_t i = 0; i < md; ++i) {
    MultiVec l, r;
    Vec counit;
    for (const auto& [a, j, c] : m.coaction_table[i]) {
      for (const auto& [p, q, s] : h.comul_table[a]) add_term(l, {p, q, j}, c * s);
      for (const auto& [b, k, t] : m.coaction_table[j]) add_term(r, {a, b, k}, c * t);
      axpy(counit, c * h.counit_table[a], unit_vec(j));
    }
    if (l != r) fail(comod, mlab(m, i) + " (coassociativity)");
    if (counit != unit_vec(i)) fail(comod, mlab(m, i) + " (counit)");
  }
  rep.push_back(comod);

  AxiomResult ayd{"anti_yetter_drinfeld"};
  for (std::size_t i = 0; i < md; ++i)
    for (std::size_t a = 0; a < hd; ++a) {
      Vec lhs = m.coact(m.action_table[i][a], hd);
      MultiVec rhs;
      try {
        for (const auto& [k, s] : comul2(h, a))
          for (const auto& [x, j, c] : m.coaction_table[i]) {
            // right: S(h3) m(-1) h1 (x) m(0) h2; left: h1 m(-1) S(h3) (x) h2 m(0)
            Vec hpart = right ? h.mul(h.mul(h.antipode_table[k[2]], unit_vec(x)), unit_vec(k[0]))
                              : h.mul(h.mul(unit_vec(k[0]), unit_vec(x)), h.antipode_table[k[2]]);
            const Vec& mpart = m.action_table[j][k[1]];
            for (const auto& [u, cu] : hpart)
              for (const auto& [v, cv] : mpart) add_term(rhs, {u, v}, s * c * cu * cv);
          }
      } catch (const CapOverflow&) {
        ++ayd.skipped;
        continue;
      }
      if (lhs != hm_vec(rhs, md)) fail(ayd, "(" + mlab(m, i) + "," + hlab(h, a) + ")");
    }
  rep.push_back(ayd);

  // right: m(0) m(-1) = m; left: m(-1) m(0) = m
  AxiomResult stab{"stability"};
  for (std::size_t i = 0; i < md; ++i) {
    Vec s;
    for (const auto& [a, j, c] : m.coaction_table[i]) axpy(s, c, m.action_table[j][a]);
    if (s != unit_vec(i)) fail(stab, mlab(m, i));
  }
  rep.push_back(stab);
  return rep;
}

SAYDModule mpi_module(const HopfAlgebra& h, const Character& d, const GroupLike& s, SaydSide side) {
  std::string w;
  if (!check_modular_pair_in_involution(h, d, s, &w)) throw StructuralError("not a modular pair in involution: " + w);
  SAYDModule m;
  m.name = "k_delta^sigma";
  m.carrier = FreeSpace::ground();
  m.side = side;
  m.action_table.assign(1, std::vector<Vec>(h.dim()));
  for (std::size_t a = 0; a < h.dim(); ++a) m.action_table[0][a] = scaled(unit_vec(0), d.values[a]);
  m.coaction_table.assign(1, {});
  for (const auto& [a, c] : s.sigma) m.coaction_table[0].emplace_back(a, 0, c);
  return m;
}

SAYDModule trivial_module(const HopfAlgebra& h, SaydSide side) {
  auto m = mpi_module(h, counit_character(h), unit_group_like(h), side);
  m.name = "k";
  return m;
}

SAYDModule tensor_sayd(const SAYDModule& m, const HopfAlgebra& h, const SAYDModule& n, const HopfAlgebra& k) {
  if (m.side != n.side) throw StructuralError("tensor_sayd: modules carry different side tags");
  SAYDModule t;
  t.name = m.name + "(x)" + n.name;
  t.carrier = FreeSpace::tensor(m.carrier, n.carrier);
  t.side = m.side;
  std::size_t nd = n.dim(), kd = k.dim();
  t.action_table.assign(t.dim(), std::vector<Vec>(h.dim() * kd));
  t.coaction_table.assign(t.dim(), {});
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < nd; ++j) {
      std::size_t ij = i * nd + j;
      for (std::size_t a = 0; a < h.dim(); ++a)
        for (std::size_t b = 0; b < kd; ++b) {
          Vec v;
          for (const auto& [x, s] : m.action_table[i][a])
            for (const auto& [y, u] : n.action_table[j][b]) axpy(v, s * u, unit_vec(x * nd + y));
          t.action_table[ij][a * kd + b] = std::move(v);
        }
      MultiVec c;
      for (const auto& [a, x, s] : m.coaction_table[i])
        for (const auto& [b, y, u] : n.coaction_table[j]) add_term(c, {a * kd + b, x * nd + y}, s * u);
      for (const auto& [key, s] : c) t.coaction_table[ij].emplace_back(key[0], key[1], s);
    }
  return t;
}

SAYDModule conjugation_module(const FiniteGroup& g, const std::vector<int>& elements, SaydSide side) {
  std::vector<int> els = elements;
  std::sort(els.begin(), els.end());
  els.erase(std::unique(els.begin(), els.end()), els.end());
  std::map<int, std::size_t> pos;
  std::vector<Label> labels;
  for (std::size_t i = 0; i < els.size(); ++i) {
    pos[els[i]] = i;
    labels.push_back(Label::integer(els[i]));
  }
  SAYDModule m;
  m.name = "conj";
  m.carrier = FreeSpace(labels);
  m.side = side;
  std::size_t n = static_cast<std::size_t>(g.order());
  m.action_table.assign(els.size(), std::vector<Vec>(n));
  m.coaction_table.assign(els.size(), {});
  for (std::size_t i = 0; i < els.size(); ++i) {
    int x = els[i];
    m.coaction_table[i].emplace_back(static_cast<std::size_t>(x), i, Scalar(1));
    for (int h = 0; h < g.order(); ++h) {
      // right: e_x . h = e_{h^-1 x h}; left: h . e_x = e_{h x h^-1}
      int y = side == SaydSide::RightLeft ? g.mul[g.mul[g.inv[h]][x]][h] : g.mul[g.mul[h][x]][g.inv[h]];
      auto it = pos.find(y);
      if (it == pos.end()) throw StructuralError("element set is not closed under conjugation");
      m.action_table[i][h] = unit_vec(it->second);
    }
  }
  return m;
}

PsiMap diagonal_psi(const SAYDModule& m) {
  std::size_t d = m.dim();
  std::vector<Vec> cols(d);
  for (std::size_t i = 0; i < d; ++i) cols[i] = unit_vec(i * d + i);
  return PsiMap{LinMap(m.carrier, FreeSpace::tensor(m.carrier, m.carrier), std::move(cols))};
}

bool check_psi_coaction(const PsiMap& psi, const SAYDModule& m, const HopfAlgebra& h, std::string* witness) {
  std::size_t d = m.dim();
  for (std::size_t i = 0; i < d; ++i) {
    // Both sides as terms (h1, h2, m1, m2).
    MultiVec l, r;
    for (const auto& [a, j, c] : m.coaction_table[i])
      for (const auto& [p, q, s] : h.comul_table[a])
        for (const auto& [xy, u] : psi.psi.col(j)) add_term(l, {p, q, xy / d, xy % d}, c * s * u);
    for (const auto& [xy, u] : psi.psi.col(i))
      for (const auto& [a, x, s] : m.coaction_table[xy / d])
        for (const auto& [b, y, t] : m.coaction_table[xy % d]) add_term(r, {a, b, x, y}, u * s * t);
    if (l != r) {
      if (witness) *witness = mlab(m, i);
      return false;
    }
  }
  return true;
}

bool check_psi_action(const PsiMap& psi, const SAYDModule& m, const HopfAlgebra& h, std::string* witness) {
  if (m.side != SaydSide::LeftLeft) throw StructuralError("check_psi_action needs a left-left module");
  std::size_t d = m.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t a = 0; a < h.dim(); ++a) {
      Vec lhs = psi.psi.apply(m.action_table[i][a]);
      Vec rhs;
      for (const auto& [p, q, s] : h.comul_table[a])
        for (const auto& [xy, u] : psi.psi.col(i))
          for (const auto& [x, v] : m.action_table[xy / d][p])
            for (const auto& [y, w] : m.action_table[xy % d][q]) axpy(rhs, s * u * v * w, unit_vec(x * d + y));
      if (lhs != rhs) {
        if (witness) *witness = "(" + hlab(h, a) + "," + mlab(m, i) + ")";
        return false;
      }
    }
  return true;
}

}  // namespace hopfcup
