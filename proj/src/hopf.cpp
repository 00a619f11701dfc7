#include "hopfcup/hopf.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

namespace hopfcup {

// ------------------------------------------------------------ FiniteGroup

bool FiniteGroup::abelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = 0; b < order(); ++b)
      if (mul[a][b] != mul[b][a]) return false;
  return true;
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table, std::vector<std::string> names) {
  int n = static_cast<int>(table.size());
  if (n == 0) throw StructuralError("group table is empty");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw StructuralError("group table is not square");
    for (int x : row)
      if (x < 0 || x >= n) throw StructuralError("group table entry out of range: " + std::to_string(x));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw StructuralError("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                std::to_string(c) + ")");
  int e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n; ++b) ok = ok && table[a][b] == b && table[b][a] == b;
    if (ok) e = a;
  }
  if (e < 0) throw StructuralError("identity axiom fails: no two-sided identity");
  FiniteGroup g;
  g.mul = std::move(table);
  g.identity = e;
  g.inv.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (g.mul[a][b] == e && g.mul[b][a] == e) g.inv[a] = b;
    if (g.inv[a] < 0) throw StructuralError("inverse axiom fails for element " + std::to_string(a));
  }
  if (names.empty())
    for (int a = 0; a < n; ++a) names.push_back("g" + std::to_string(a));
  g.names = std::move(names);
  return g;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return from_table(std::move(t));
}

FiniteGroup FiniteGroup::symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p = {0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  int n = static_cast<int>(perms.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::array<int, 3> c;
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      t[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return from_table(std::move(t));
}

FiniteGroup FiniteGroup::product(const FiniteGroup& g, const FiniteGroup& h) {
  int m = g.order(), n = h.order();
  std::vector<std::vector<int>> t(m * n, std::vector<int>(m * n));
  for (int a = 0; a < m * n; ++a)
    for (int b = 0; b < m * n; ++b) t[a][b] = g.mul[a / n][b / n] * n + h.mul[a % n][b % n];
  return from_table(std::move(t));
}

// ----------------------------------------------------------- HopfAlgebra

Vec HopfAlgebra::mul(std::size_t a, std::size_t b) const {
  const auto& r = mul_table.at(a).at(b);
  if (!r) {
    int d = truncated ? degree[a] + degree[b] : -1;
    throw CapOverflow(d, cap);
  }
  return *r;
}

Vec HopfAlgebra::mul(const Vec& x, const Vec& y) const {
  Vec r;
  for (const auto& [a, s] : x)
    for (const auto& [b, t] : y) axpy(r, s * t, mul(a, b));
  return r;
}

Scalar HopfAlgebra::counit(const Vec& x) const {
  Scalar s = 0;
  for (const auto& [a, c] : x) s += c * counit_table.at(a);
  return s;
}

Vec HopfAlgebra::antipode(const Vec& x) const {
  Vec r;
  for (const auto& [a, c] : x) axpy(r, c, antipode_table.at(a));
  return r;
}

Vec HopfAlgebra::antipode_inv(const Vec& x) const {
  Vec r;
  for (const auto& [a, c] : x) axpy(r, c, antipode_inv_table.at(a));
  return r;
}

Vec HopfAlgebra::comul(const Vec& x) const {
  Vec r;
  std::size_t n = dim();
  for (const auto& [a, c] : x)
    for (const auto& [p, q, s] : comul_table.at(a)) {
      auto& cell = r[p * n + q];
      cell += c * s;
      if (sgn(cell) == 0) r.erase(p * n + q);
    }
  return r;
}

std::optional<std::size_t> HopfAlgebra::unit_index() const {
  if (unit.size() == 1 && unit.begin()->second == 1) return unit.begin()->first;
  return std::nullopt;
}

LinMap HopfAlgebra::mul_map() const {
  FreeSpace hh = FreeSpace::tensor(carrier, carrier);
  std::vector<Vec> cols(hh.dim());
  for (std::size_t a = 0; a < dim(); ++a)
    for (std::size_t b = 0; b < dim(); ++b)
      if (mul_table[a][b]) cols[a * dim() + b] = *mul_table[a][b];
  return LinMap(hh, carrier, std::move(cols));
}

LinMap HopfAlgebra::comul_map() const {
  std::vector<Vec> cols(dim());
  for (std::size_t a = 0; a < dim(); ++a) cols[a] = comul(a);
  return LinMap(carrier, FreeSpace::tensor(carrier, carrier), std::move(cols));
}

LinMap HopfAlgebra::counit_map() const {
  std::vector<Vec> cols(dim());
  for (std::size_t a = 0; a < dim(); ++a)
    if (sgn(counit_table[a]) != 0) cols[a][0] = counit_table[a];
  return LinMap(carrier, FreeSpace::ground(), std::move(cols));
}

LinMap HopfAlgebra::antipode_map() const { return LinMap(carrier, carrier, antipode_table); }

bool HopfAlgebra::is_commutative() const {
  for (std::size_t a = 0; a < dim(); ++a)
    for (std::size_t b = a + 1; b < dim(); ++b)
      if (mul_table[a][b] && mul_table[b][a] && *mul_table[a][b] != *mul_table[b][a]) return false;
  return true;
}

bool HopfAlgebra::is_cocommutative() const {
  std::size_t n = dim();
  for (std::size_t a = 0; a < n; ++a) {
    Vec d = comul(a), f;
    for (const auto& [i, c] : d) f[(i % n) * n + i / n] = c;
    if (d != f) return false;
  }
  return true;
}

bool all_passed(const AxiomReport& r) {
  return std::all_of(r.begin(), r.end(), [](const AxiomResult& a) { return a.passed; });
}

Json report_json(const AxiomReport& r) {
  Json j = Json::array();
  for (const auto& a : r) {
    Json e{{"axiom", a.name}, {"pass", a.passed}, {"skipped", a.skipped}};
    if (!a.passed) e["witness"] = a.witness;
    j.push_back(e);
  }
  return j;
}

// --------------------------------------------------------- group algebras

HopfAlgebra group_algebra(const FiniteGroup& g) {
  HopfAlgebra h;
  int n = g.order();
  h.name = "kG" + std::to_string(n);
  h.carrier = FreeSpace::range(n);
  h.mul_table.assign(n, std::vector<std::optional<Vec>>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) h.mul_table[a][b] = unit_vec(g.mul[a][b]);
  h.unit = unit_vec(g.identity);
  h.comul_table.resize(n);
  h.antipode_table.resize(n);
  for (int a = 0; a < n; ++a) {
    h.comul_table[a] = {Term2(a, a, 1)};
    h.antipode_table[a] = unit_vec(g.inv[a]);
  }
  h.counit_table.assign(n, Scalar(1));
  h.antipode_inv_table = h.antipode_table;
  return h;
}

HopfAlgebra tensor_hopf(const HopfAlgebra& h, const HopfAlgebra& k) {
  HopfAlgebra t;
  t.name = h.name + "(x)" + k.name;
  std::size_t m = h.dim(), n = k.dim(), d = m * n;
  t.carrier = FreeSpace::tensor(h.carrier, k.carrier);
  auto pair_vec = [&](const Vec& x, const Vec& y) {
    Vec r;
    for (const auto& [a, s] : x)
      for (const auto& [b, u] : y) r.emplace(a * n + b, s * u);
    return r;
  };
  t.mul_table.assign(d, std::vector<std::optional<Vec>>(d));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const auto& x = h.mul_table[a / n][b / n];
      const auto& y = k.mul_table[a % n][b % n];
      if (x && y) t.mul_table[a][b] = pair_vec(*x, *y);
    }
  t.unit = pair_vec(h.unit, k.unit);
  t.comul_table.resize(d);
  t.counit_table.resize(d);
  t.antipode_table.resize(d);
  t.antipode_inv_table.resize(d);
  for (std::size_t a = 0; a < d; ++a) {
    for (const auto& [p, q, s] : h.comul_table[a / n])
      for (const auto& [r, u, c] : k.comul_table[a % n]) t.comul_table[a].emplace_back(p * n + r, q * n + u, s * c);
    t.counit_table[a] = h.counit_table[a / n] * k.counit_table[a % n];
    t.antipode_table[a] = pair_vec(h.antipode_table[a / n], k.antipode_table[a % n]);
    t.antipode_inv_table[a] = pair_vec(h.antipode_inv_table[a / n], k.antipode_inv_table[a % n]);
  }
  t.truncated = h.truncated || k.truncated;
  if (t.truncated) {
    t.degree.resize(d);
    for (std::size_t a = 0; a < d; ++a)
      t.degree[a] = (h.truncated ? h.degree[a / n] : 0) + (k.truncated ? k.degree[a % n] : 0);
    t.cap = h.cap + k.cap;
  }
  return t;
}

// ------------------------------------------------------------------- Lie

LieAlgebraData LieAlgebraData::abelian(std::size_t d) {
  LieAlgebraData l;
  static const char* names[] = {"x", "y", "z", "w"};
  for (std::size_t i = 0; i < d; ++i) l.generators.push_back(i < 4 ? names[i] : "x" + std::to_string(i));
  l.bracket.assign(d, std::vector<Vec>(d));
  return l;
}

LieAlgebraData LieAlgebraData::heisenberg() {
  LieAlgebraData l = abelian(3);
  l.bracket[0][1] = Vec{{2, 1}};
  l.bracket[1][0] = Vec{{2, -1}};
  return l;
}

void LieAlgebraData::validate() const {
  std::size_t d = dim();
  if (bracket.size() != d) throw StructuralError("bracket table has wrong size");
  for (const auto& row : bracket)
    if (row.size() != d) throw StructuralError("bracket table has wrong size");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vec s = bracket[i][j];
      axpy(s, 1, bracket[j][i]);
      if (!s.empty())
        throw StructuralError("antisymmetry fails for [" + generators[i] + "," + generators[j] + "]");
    }
  auto br = [&](const Vec& u, const Vec& v) {
    Vec r;
    for (const auto& [i, a] : u)
      for (const auto& [j, b] : v) axpy(r, a * b, bracket[i][j]);
    return r;
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        Vec s = br(unit_vec(i), br(unit_vec(j), unit_vec(k)));
        axpy(s, 1, br(unit_vec(j), br(unit_vec(k), unit_vec(i))));
        axpy(s, 1, br(unit_vec(k), br(unit_vec(i), unit_vec(j))));
        if (!s.empty())
          throw StructuralError("Jacobi identity fails for (" + generators[i] + "," + generators[j] + "," +
                                generators[k] + ")");
      }
}

namespace {

struct Pbw {
  const LieAlgebraData* lie;
  int cap;
  std::vector<std::vector<int>> monos;  // exponent vectors, sorted
  std::map<std::vector<int>, std::size_t> index;
  std::map<std::vector<int>, Vec> memo;

  std::vector<int> word_of(const std::vector<int>& e) const {
    std::vector<int> w;
    for (std::size_t i = 0; i < e.size(); ++i) w.insert(w.end(), e[i], static_cast<int>(i));
    return w;
  }

  Vec normal_form(const std::vector<int>& w) {
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    Vec r;
    std::size_t pos = w.size();
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] > w[i + 1]) {
        pos = i;
        break;
      }
    if (pos == w.size()) {
      std::vector<int> e(lie->dim(), 0);
      for (int g : w) ++e[g];
      r[index.at(e)] = 1;
    } else {
      std::vector<int> sw = w;
      std::swap(sw[pos], sw[pos + 1]);
      r = normal_form(sw);
      for (const auto& [c, a] : lie->bracket[w[pos]][w[pos + 1]]) {
        std::vector<int> u(w.begin(), w.begin() + pos);
        u.push_back(static_cast<int>(c));
        u.insert(u.end(), w.begin() + pos + 2, w.end());
        axpy(r, a, normal_form(u));
      }
    }
    memo[w] = r;
    return r;
  }
};

void enumerate_exponents(std::size_t d, int cap, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (cur.size() == d) {
    out.push_back(cur);
    return;
  }
  int used = std::accumulate(cur.begin(), cur.end(), 0);
  for (int e = 0; e + used <= cap; ++e) {
    cur.push_back(e);
    enumerate_exponents(d, cap, cur, out);
    cur.pop_back();
  }
}

Scalar binom(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Scalar(r);
}

}  // namespace

HopfAlgebra enveloping_truncated(const LieAlgebraData& l, int cap) {
  l.validate();
  if (cap < 1) throw StructuralError("enveloping algebra cap must be at least 1");
  Pbw p{&l, cap, {}, {}, {}};
  std::vector<int> cur;
  enumerate_exponents(l.dim(), cap, cur, p.monos);
  std::sort(p.monos.begin(), p.monos.end());
  std::vector<Label> labels;
  for (std::size_t i = 0; i < p.monos.size(); ++i) {
    p.index[p.monos[i]] = i;
    std::vector<Label> e;
    for (int x : p.monos[i]) e.push_back(Label::integer(x));
    labels.push_back(Label::tuple(std::move(e)));
  }
  HopfAlgebra u;
  u.name = "U(" + std::to_string(l.dim()) + ")_" + std::to_string(cap);
  u.carrier = FreeSpace(labels);
  std::size_t n = p.monos.size();
  u.truncated = true;
  u.cap = cap;
  u.degree.resize(n);
  for (std::size_t i = 0; i < n; ++i) u.degree[i] = std::accumulate(p.monos[i].begin(), p.monos[i].end(), 0);
  u.mul_table.assign(n, std::vector<std::optional<Vec>>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (u.degree[a] + u.degree[b] > cap) continue;
      auto w = p.word_of(p.monos[a]);
      auto w2 = p.word_of(p.monos[b]);
      w.insert(w.end(), w2.begin(), w2.end());
      u.mul_table[a][b] = p.normal_form(w);
    }
  u.unit = unit_vec(p.index.at(std::vector<int>(l.dim(), 0)));
  u.comul_table.resize(n);
  u.counit_table.assign(n, Scalar(0));
  u.antipode_table.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    const auto& e = p.monos[a];
    // Sum over f <= e of prod binom(e_i, f_i) x^f (x) x^(e-f).
    std::vector<int> f(e.size(), 0);
    while (true) {
      Scalar c = 1;
      std::vector<int> g(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) c *= binom(e[i], f[i]), g[i] = e[i] - f[i];
      u.comul_table[a].emplace_back(p.index.at(f), p.index.at(g), c);
      std::size_t i = 0;
      while (i < e.size() && f[i] == e[i]) f[i++] = 0;
      if (i == e.size()) break;
      ++f[i];
    }
    if (u.degree[a] == 0) u.counit_table[a] = 1;
    auto w = p.word_of(e);
    std::reverse(w.begin(), w.end());
    u.antipode_table[a] = scaled(p.normal_form(w), u.degree[a] % 2 ? -1 : 1);
  }
  u.antipode_inv_table = u.antipode_table;
  return u;
}

std::vector<int> pbw_exponents(const HopfAlgebra& u, std::size_t index) {
  std::vector<int> e;
  for (const auto& x : u.carrier.label(index).items()) e.push_back(static_cast<int>(x.as_int()));
  return e;
}

std::size_t pbw_index(const HopfAlgebra& u, const std::vector<int>& exponents) {
  std::vector<Label> e;
  for (int x : exponents) e.push_back(Label::integer(x));
  return u.carrier.index_of(Label::tuple(std::move(e)));
}

Vec pbw_word(const HopfAlgebra& u, const LieAlgebraData& l, const std::vector<int>& word) {
  if (static_cast<int>(word.size()) > u.cap) throw CapOverflow(static_cast<int>(word.size()), u.cap);
  Pbw p{&l, u.cap, {}, {}, {}};
  for (std::size_t i = 0; i < u.dim(); ++i) p.index[pbw_exponents(u, i)] = i;
  return p.normal_form(word);
}

// ---------------------------------------------------------------- axioms

namespace {

std::string lab(const HopfAlgebra& h, std::size_t a) { return h.carrier.label(a).str(); }

// Product in H (x) H of two vectors indexed a * dim + b; nullopt if undefined.
std::optional<Vec> mul2(const HopfAlgebra& h, const Vec& x, const Vec& y) {
  std::size_t n = h.dim();
  Vec r;
  for (const auto& [i, s] : x)
    for (const auto& [j, t] : y) {
      const auto& p = h.mul_table[i / n][j / n];
      const auto& q = h.mul_table[i % n][j % n];
      if (!p || !q) return std::nullopt;
      for (const auto& [a, u] : *p)
        for (const auto& [b, v] : *q) {
          auto& c = r[a * n + b];
          c += s * t * u * v;
          if (sgn(c) == 0) r.erase(a * n + b);
        }
    }
  return r;
}

}  // namespace

AxiomReport check_hopf_axioms(const HopfAlgebra& h) {
  AxiomReport rep;
  std::size_t n = h.dim();
  auto fail = [](AxiomResult& r, std::string w) {
    if (r.passed) r.passed = false, r.witness = std::move(w);
  };

  AxiomResult assoc{"associativity"};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        if (!h.mul_table[a][b] || !h.mul_table[b][c]) {
          ++assoc.skipped;
          continue;
        }
        try {
          if (h.mul(*h.mul_table[a][b], unit_vec(c)) != h.mul(unit_vec(a), *h.mul_table[b][c]))
            fail(assoc, "(" + lab(h, a) + "," + lab(h, b) + "," + lab(h, c) + ")");
        } catch (const CapOverflow&) {
          ++assoc.skipped;
        }
      }
  rep.push_back(assoc);

  AxiomResult unit{"unit"};
  for (std::size_t a = 0; a < n; ++a) {
    try {
      if (h.mul(h.unit, unit_vec(a)) != unit_vec(a) || h.mul(unit_vec(a), h.unit) != unit_vec(a))
        fail(unit, lab(h, a));
    } catch (const CapOverflow&) {
      fail(unit, lab(h, a) + " (overflow)");
    }
  }
  rep.push_back(unit);

  AxiomResult coassoc{"coassociativity"};
  AxiomResult counit{"counit"};
  for (std::size_t a = 0; a < n; ++a) {
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Scalar> l, r;
    for (const auto& [p, q, s] : h.comul_table[a]) {
      for (const auto& [p1, p2, t] : h.comul_table[p]) l[{p1, p2, q}] += s * t;
      for (const auto& [q1, q2, t] : h.comul_table[q]) r[{p, q1, q2}] += s * t;
    }
    std::erase_if(l, [](const auto& kv) { return sgn(kv.second) == 0; });
    std::erase_if(r, [](const auto& kv) { return sgn(kv.second) == 0; });
    if (l != r) fail(coassoc, lab(h, a));
    Vec left, right;
    for (const auto& [p, q, s] : h.comul_table[a]) {
      axpy(left, s * h.counit_table[p], unit_vec(q));
      axpy(right, s * h.counit_table[q], unit_vec(p));
    }
    if (left != unit_vec(a) || right != unit_vec(a)) fail(counit, lab(h, a));
  }
  rep.push_back(coassoc);
  rep.push_back(counit);

  AxiomResult bialg{"bialgebra"};
  {
    Vec du = h.comul(h.unit);
    Vec uu;
    for (const auto& [a, s] : h.unit)
      for (const auto& [b, t] : h.unit) uu[a * n + b] = s * t;
    if (du != uu || h.counit(h.unit) != 1) fail(bialg, "unit");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!h.mul_table[a][b]) {
        ++bialg.skipped;
        continue;
      }
      const Vec& ab = *h.mul_table[a][b];
      auto rhs = mul2(h, h.comul(a), h.comul(b));
      if (!rhs) {
        ++bialg.skipped;
        continue;
      }
      if (h.comul(ab) != *rhs || h.counit(ab) != h.counit_table[a] * h.counit_table[b])
        fail(bialg, "(" + lab(h, a) + "," + lab(h, b) + ")");
    }
  rep.push_back(bialg);

  AxiomResult anti{"antipode"};
  for (std::size_t a = 0; a < n; ++a) {
    Vec l, r;
    try {
      for (const auto& [p, q, s] : h.comul_table[a]) {
        axpy(l, s, h.mul(h.antipode_table[p], unit_vec(q)));
        axpy(r, s, h.mul(unit_vec(p), h.antipode_table[q]));
      }
    } catch (const CapOverflow&) {
      fail(anti, lab(h, a) + " (overflow)");
      continue;
    }
    Vec e = scaled(h.unit, h.counit_table[a]);
    if (l != e || r != e) fail(anti, lab(h, a));
  }
  rep.push_back(anti);

  AxiomResult ainv{"antipode_inverse"};
  if (h.antipode_inv_table.size() != n) fail(ainv, "table missing");
  for (std::size_t a = 0; a < n && h.antipode_inv_table.size() == n; ++a)
    if (h.antipode(h.antipode_inv_table[a]) != unit_vec(a) || h.antipode_inv(h.antipode_table[a]) != unit_vec(a))
      fail(ainv, lab(h, a));
  rep.push_back(ainv);
  return rep;
}

// ----------------------------------------------------- characters, pairs

Scalar Character::operator()(const Vec& x) const {
  Scalar s = 0;
  for (const auto& [a, c] : x) s += c * values.at(a);
  return s;
}

LinMap Character::as_map(const HopfAlgebra& h) const {
  std::vector<Vec> cols(h.dim());
  for (std::size_t a = 0; a < h.dim(); ++a)
    if (sgn(values[a]) != 0) cols[a][0] = values[a];
  return LinMap(h.carrier, FreeSpace::ground(), std::move(cols));
}

Character counit_character(const HopfAlgebra& h) { return Character{h.counit_table}; }
GroupLike unit_group_like(const HopfAlgebra& h) { return GroupLike{h.unit}; }

bool is_character(const HopfAlgebra& h, const Character& d, std::string* witness) {
  if (d.values.size() != h.dim()) {
    if (witness) *witness = "wrong length";
    return false;
  }
  if (d(h.unit) != 1) {
    if (witness) *witness = "delta(1) != 1";
    return false;
  }
  for (std::size_t a = 0; a < h.dim(); ++a)
    for (std::size_t b = 0; b < h.dim(); ++b)
      if (h.mul_table[a][b] && d(*h.mul_table[a][b]) != d.values[a] * d.values[b]) {
        if (witness) *witness = "(" + lab(h, a) + "," + lab(h, b) + ")";
        return false;
      }
  return true;
}

bool is_group_like(const HopfAlgebra& h, const GroupLike& s, std::string* witness) {
  Vec ss;
  std::size_t n = h.dim();
  for (const auto& [a, x] : s.sigma)
    for (const auto& [b, y] : s.sigma) ss[a * n + b] = x * y;
  if (h.comul(s.sigma) != ss) {
    if (witness) *witness = "Delta(sigma) != sigma (x) sigma";
    return false;
  }
  if (h.counit(s.sigma) != 1) {
    if (witness) *witness = "eps(sigma) != 1";
    return false;
  }
  return true;
}

Vec twisted_antipode(const HopfAlgebra& h, const Character& d, const Vec& x) {
  Vec r;
  std::size_t n = h.dim();
  for (const auto& [i, c] : h.comul(x)) axpy(r, c * d.values[i / n], h.antipode_table[i % n]);
  return r;
}

bool check_modular_pair_in_involution(const HopfAlgebra& h, const Character& d, const GroupLike& s,
                                      std::string* witness) {
  std::string w;
  if (!is_character(h, d, &w)) throw StructuralError("not a character: " + w);
  if (!is_group_like(h, s, &w)) throw StructuralError("not group-like: " + w);
  Vec sinv = h.antipode(s.sigma);
  if (h.mul(s.sigma, sinv) != h.unit || h.mul(sinv, s.sigma) != h.unit)
    throw StructuralError("sigma is not invertible");
  if (d(s.sigma) != 1) {
    if (witness) *witness = "delta(sigma) != 1";
    return false;
  }
  for (std::size_t a = 0; a < h.dim(); ++a) {
    Vec t = twisted_antipode(h, d, twisted_antipode(h, d, unit_vec(a)));
    if (h.mul(h.mul(sinv, t), s.sigma) != unit_vec(a)) {
      if (witness) *witness = lab(h, a);
      return false;
    }
  }
  return true;
}

}  // namespace hopfcup
