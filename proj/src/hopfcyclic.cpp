#include "hopfcup/hopfcyclic.hpp"

#include <functional>

namespace hopfcup {

std::vector<std::size_t> digits_of(std::size_t index, const std::vector<std::size_t>& radices) {
  std::vector<std::size_t> d(radices.size());
  for (std::size_t k = radices.size(); k-- > 0;) d[k] = index % radices[k], index /= radices[k];
  return d;
}

std::size_t index_of_digits(const std::vector<std::size_t>& digits, const std::vector<std::size_t>& radices) {
  std::size_t r = 0;
  for (std::size_t k = 0; k < digits.size(); ++k) r = r * radices[k] + digits[k];
  return r;
}

MultiVec iterated_comul(const HopfAlgebra& h, const Vec& x, int legs) {
  MultiVec cur;
  for (const auto& [a, s] : x) add_term(cur, {a}, s);
  for (int l = 1; l < legs; ++l) {
    MultiVec next;
    for (const auto& [key, s] : cur)
      for (const auto& [u, v, c] : h.comul_table[key.back()]) {
        auto k2 = key;
        k2.back() = u;
        k2.push_back(v);
        add_term(next, k2, s * c);
      }
    cur = std::move(next);
  }
  return cur;
}

namespace {

// Legwise product a_k b_k of two elements of H^{(x) l}.
MultiVec mul_legs(const HopfAlgebra& h, const MultiVec& a, const MultiVec& b) {
  MultiVec out;
  for (const auto& [ka, sa] : a)
    for (const auto& [kb, sb] : b) {
      MultiVec cur{{{}, sa * sb}};
      for (std::size_t l = 0; l < ka.size(); ++l) {
        Vec p = h.mul(ka[l], kb[l]);
        MultiVec next;
        for (const auto& [key, s] : cur)
          for (const auto& [x, c] : p) {
            auto k2 = key;
            k2.push_back(x);
            add_term(next, k2, s * c);
          }
        cur = std::move(next);
      }
      for (const auto& [key, s] : cur) add_term(out, key, s);
    }
  return out;
}

std::vector<std::size_t> radices(std::size_t first, std::size_t hdim, int legs, bool first_is_last = false) {
  std::vector<std::size_t> r;
  if (!first_is_last) r.push_back(first);
  for (int k = 0; k < legs; ++k) r.push_back(hdim);
  if (first_is_last) r.push_back(first);
  return r;
}

Vec encode(const MultiVec& t, const std::vector<std::size_t>& rad) {
  Vec v;
  for (const auto& [key, s] : t) axpy(v, s, unit_vec(index_of_digits(key, rad)));
  return v;
}

// -------------------------------------------------- cochains on M (x) H^{n+1}
// Keys are (m, h0, ..., hn).

struct CmAmbient {
  const HopfAlgebra& h;
  const SAYDModule& m;

  MultiVec coface(int n, int i, const std::vector<std::size_t>& key) const {
    MultiVec out;
    if (i < n) {
      for (const auto& [u, v, c] : h.comul_table[key[i + 1]]) {
        auto k2 = key;
        k2[i + 1] = u;
        k2.insert(k2.begin() + i + 2, v);
        add_term(out, k2, c);
      }
      return out;
    }
    // m(0) (x) h0(2) (x) h1 ... (x) m(-1) h0(1)
    for (const auto& [a, m0, c] : m.coaction_table[key[0]])
      for (const auto& [u, v, d] : h.comul_table[key[1]])
        for (const auto& [x, e] : h.mul(a, u)) {
          auto k2 = key;
          k2[0] = m0;
          k2[1] = v;
          k2.push_back(x);
          add_term(out, k2, c * d * e);
        }
    return out;
  }

  MultiVec codegen(int, int i, const std::vector<std::size_t>& key) const {
    Scalar e = h.counit_table[key[i + 2]];
    if (e == 0) return {};
    auto k2 = key;
    k2.erase(k2.begin() + i + 2);
    return {{k2, e}};
  }

  MultiVec cyc(int, const std::vector<std::size_t>& key) const {
    MultiVec out;
    for (const auto& [a, m0, c] : m.coaction_table[key[0]])
      for (const auto& [x, e] : h.mul(a, key[1])) {
        std::vector<std::size_t> k2{m0};
        k2.insert(k2.end(), key.begin() + 2, key.end());
        k2.push_back(x);
        add_term(out, k2, c * e);
      }
    return out;
  }

  // Psi: (m, h0, x1..xn) -> m h0(1) (x) S(h0(2)).x on keys (m, x1..xn).
  MultiVec psi(const std::vector<std::size_t>& key) const {
    int n = static_cast<int>(key.size()) - 2;
    MultiVec out;
    MultiVec x{{std::vector<std::size_t>(key.begin() + 2, key.end()), 1}};
    for (const auto& [u, v, c] : h.comul_table[key[1]]) {
      Vec mu = m.act(key[0], u);
      if (mu.empty()) continue;
      MultiVec legs{{{}, 1}};
      if (n > 0) legs = mul_legs(h, iterated_comul(h, h.antipode(unit_vec(v)), n), x);
      else legs = {{{}, h.counit(h.antipode(unit_vec(v)))}};
      for (const auto& [mm, s] : mu)
        for (const auto& [lk, t] : legs) {
          std::vector<std::size_t> k2{mm};
          k2.insert(k2.end(), lk.begin(), lk.end());
          add_term(out, k2, c * s * t);
        }
    }
    return out;
  }
};

void require_side(const SAYDModule& m, SaydSide side, const char* who) {
  if (m.side != side) throw StructuralError(std::string(who) + ": wrong SAYD side for " + m.name);
}

}  // namespace

// ------------------------------------------------------------- coinvariants

CoinvariantSpace coinvariants(const HopfAlgebra& h, const SAYDModule& m, int n) {
  require_side(m, SaydSide::RightLeft, "coinvariants");
  if (h.truncated) throw StructuralError("coinvariants: truncated Hopf algebra");
  CoinvariantSpace c;
  c.ambient = FreeSpace::product([&] {
    std::vector<FreeSpace> f{m.carrier};
    for (int k = 0; k <= n; ++k) f.push_back(h.carrier);
    return f;
  }());
  auto rad = radices(m.dim(), h.dim(), n + 1);
  std::vector<Vec> rels;
  for (std::size_t idx = 0; idx < c.ambient.dim(); ++idx) {
    auto key = digits_of(idx, rad);
    MultiVec x{{std::vector<std::size_t>(key.begin() + 1, key.end()), 1}};
    for (std::size_t a = 0; a < h.dim(); ++a) {
      Vec r;
      for (const auto& [mm, s] : m.act(key[0], a)) {
        auto k2 = key;
        k2[0] = mm;
        axpy(r, s, unit_vec(index_of_digits(k2, rad)));
      }
      for (const auto& [lk, s] : mul_legs(h, iterated_comul(h, unit_vec(a), n + 1), x)) {
        std::vector<std::size_t> k2{key[0]};
        k2.insert(k2.end(), lk.begin(), lk.end());
        axpy(r, -s, unit_vec(index_of_digits(k2, rad)));
      }
      if (!r.empty()) rels.push_back(std::move(r));
    }
  }
  c.relations = LinMap(FreeSpace::range(rels.size()), c.ambient, rels);
  c.quot = Quotient(c.ambient, rels);
  return c;
}

namespace {

LinMap ambient_map(const FreeSpace& dom, const FreeSpace& cod, const std::vector<std::size_t>& drad,
                   const std::vector<std::size_t>& crad,
                   const std::function<MultiVec(const std::vector<std::size_t>&)>& f) {
  std::vector<Vec> cols(dom.dim());
  for (std::size_t e = 0; e < cols.size(); ++e) cols[e] = encode(f(digits_of(e, drad)), crad);
  return LinMap(dom, cod, std::move(cols));
}

std::string op_at(const char* op, int n, int i = -1) {
  std::string s = std::string(op) + " n=" + std::to_string(n);
  if (i >= 0) s += ",i=" + std::to_string(i);
  return s;
}

}  // namespace

CmQuotientModule cm_cocyclic_quotient(const HopfAlgebra& h, const SAYDModule& m, int cap) {
  CmAmbient amb{h, m};
  CmQuotientModule r;
  for (int n = 0; n <= cap; ++n) r.spaces.push_back(coinvariants(h, m, n));
  auto rad = [&](int n) { return radices(m.dim(), h.dim(), n + 1); };
  CocyclicModule& c = r.module;
  c.name = "C(" + h.name + "," + m.name + ")";
  c.cap = cap;
  for (const auto& s : r.spaces) c.spaces.push_back(s.quot.space());
  c.cofaces.resize(cap + 1);
  c.codegens.resize(cap + 1);
  for (int n = 1; n <= cap; ++n)
    for (int i = 0; i <= n; ++i) {
      LinMap f = ambient_map(r.spaces[n - 1].ambient, r.spaces[n].ambient, rad(n - 1), rad(n),
                             [&](const auto& k) { return amb.coface(n, i, k); });
      c.cofaces[n].push_back(r.spaces[n - 1].quot.descend_map(f, r.spaces[n].quot, op_at("coface", n, i)));
    }
  for (int n = 0; n < cap; ++n)
    for (int i = 0; i <= n; ++i) {
      LinMap f = ambient_map(r.spaces[n + 1].ambient, r.spaces[n].ambient, rad(n + 1), rad(n),
                             [&](const auto& k) { return amb.codegen(n, i, k); });
      c.codegens[n].push_back(r.spaces[n + 1].quot.descend_map(f, r.spaces[n].quot, op_at("codegeneracy", n, i)));
    }
  for (int n = 0; n <= cap; ++n) {
    LinMap f = ambient_map(r.spaces[n].ambient, r.spaces[n].ambient, rad(n), rad(n),
                           [&](const auto& k) { return amb.cyc(n, k); });
    c.cyc.push_back(r.spaces[n].quot.descend_map(f, r.spaces[n].quot, op_at("tau", n)));
  }
  return r;
}

CocyclicModule cm_cocyclic(const HopfAlgebra& h, const SAYDModule& m, int cap) {
  return cm_cocyclic_quotient(h, m, cap).module;
}

// ------------------------------------------------------------- presentation

namespace {

class CmPresentation : public CyclicOps {
 public:
  CmPresentation(HopfAlgebra h, SAYDModule m, int cap) : h_(std::move(h)), m_(std::move(m)), cap_(cap) {
    require_side(m_, SaydSide::RightLeft, "cm_presentation");
  }
  int orientation() const override { return 1; }
  int cap() const override { return cap_; }
  FreeSpace space(int n) const override {
    std::vector<FreeSpace> f{m_.carrier};
    for (int k = 0; k < n; ++k) f.push_back(h_.carrier);
    return FreeSpace::product(f);
  }
  std::size_t dim(int n) const override {
    std::size_t d = m_.dim();
    for (int k = 0; k < n; ++k) d *= h_.dim();
    return d;
  }
  Vec face(int n, int i, std::size_t e) const override {
    return cache_.get(0, n, i, e, [&] {
      CmAmbient amb{h_, m_};
      return through(n - 1, n, e, [&](const auto& k) { return amb.coface(n, i, k); });
    });
  }
  Vec degen(int n, int i, std::size_t e) const override {
    return cache_.get(1, n, i, e, [&] {
      CmAmbient amb{h_, m_};
      return through(n + 1, n, e, [&](const auto& k) { return amb.codegen(n, i, k); });
    });
  }
  Vec cyc(int n, std::size_t e) const override {
    return cache_.get(2, n, 0, e, [&] {
      CmAmbient amb{h_, m_};
      return through(n, n, e, [&](const auto& k) { return amb.cyc(n, k); });
    });
  }

 private:
  // Psi o op o section on a basis element of M (x) H^{from}.
  template <class F>
  Vec through(int from, int to, std::size_t e, F op) const {
    auto key = digits_of(e, radices(m_.dim(), h_.dim(), from));
    CmAmbient amb{h_, m_};
    MultiVec out;
    for (const auto& [u, su] : h_.unit) {
      std::vector<std::size_t> k{key[0], u};
      k.insert(k.end(), key.begin() + 1, key.end());
      for (const auto& [k2, s] : op(k))
        for (const auto& [k3, t] : amb.psi(k2)) add_term(out, k3, su * s * t);
    }
    return encode(out, radices(m_.dim(), h_.dim(), to));
  }

  HopfAlgebra h_;
  SAYDModule m_;
  int cap_;
  OpCache cache_;
};

}  // namespace

OpsPtr cm_presentation(const HopfAlgebra& h, const SAYDModule& m, int cap) {
  return std::make_shared<CmPresentation>(h, m, cap);
}

LinMap cm_psi(const HopfAlgebra& h, const SAYDModule& m, int n) {
  CmAmbient amb{h, m};
  std::vector<FreeSpace> f{m.carrier}, g{m.carrier};
  for (int k = 0; k <= n; ++k) f.push_back(h.carrier);
  for (int k = 0; k < n; ++k) g.push_back(h.carrier);
  return ambient_map(FreeSpace::product(f), FreeSpace::product(g), radices(m.dim(), h.dim(), n + 1),
                     radices(m.dim(), h.dim(), n), [&](const auto& k) { return amb.psi(k); });
}

AxiomReport check_cm_presentation(const HopfAlgebra& h, const SAYDModule& m, int cap) {
  AxiomResult kills("psi_kills_relations"), bij("psi_bijective"), inter("psi_intertwines");
  auto q = cm_cocyclic_quotient(h, m, cap);
  auto p = materialize_cocyclic(*cm_presentation(h, m, cap));
  std::vector<LinMap> psibar;
  for (int n = 0; n <= cap; ++n) {
    LinMap psi = cm_psi(h, m, n);
    const auto& cs = q.spaces[n];
    for (const auto& r : cs.relations.cols())
      if (!psi.apply(r).empty() && kills.passed) kills.passed = false, kills.witness = "n=" + std::to_string(n);
    LinMap pb = compose(psi, cs.quot.section());
    if (pb.domain().dim() != pb.codomain().dim() || rank(pb) != pb.domain().dim())
      if (bij.passed) bij.passed = false, bij.witness = "n=" + std::to_string(n);
    psibar.push_back(pb);
  }
  auto square = [&](const LinMap& opq, const LinMap& opp, int from, int to, const std::string& w) {
    if (!(compose(psibar[to], opq) == compose(opp, psibar[from])) && inter.passed)
      inter.passed = false, inter.witness = w;
  };
  for (int n = 1; n <= cap; ++n)
    for (int i = 0; i <= n; ++i) square(q.module.cofaces[n][i], p.cofaces[n][i], n - 1, n, op_at("coface", n, i));
  for (int n = 0; n < cap; ++n)
    for (int i = 0; i <= n; ++i)
      square(q.module.codegens[n][i], p.codegens[n][i], n + 1, n, op_at("codegeneracy", n, i));
  for (int n = 0; n <= cap; ++n) square(q.module.cyc[n], p.cyc[n], n, n, op_at("tau", n));
  return {kills, bij, inter};
}

// ----------------------------------------------------------------- cotensor

LinMap diagonal_coaction(const HopfAlgebra& h, int legs) {
  std::vector<FreeSpace> f(legs, h.carrier);
  FreeSpace x = FreeSpace::product(f);
  std::vector<std::size_t> rad(legs, h.dim());
  std::vector<Vec> cols(x.dim());
  for (std::size_t e = 0; e < x.dim(); ++e) {
    auto key = digits_of(e, rad);
    // first legs in key order, second legs multiplied left to right
    std::map<std::vector<std::size_t>, Vec> acc{{{}, h.unit}};
    for (int l = 0; l < legs; ++l) {
      std::map<std::vector<std::size_t>, Vec> next;
      for (const auto& [k, p] : acc)
        for (const auto& [u, v, c] : h.comul_table[key[l]]) {
          auto k2 = k;
          k2.push_back(u);
          axpy(next[k2], c, h.mul(p, unit_vec(v)));
        }
      acc = std::move(next);
    }
    for (const auto& [k, p] : acc)
      for (const auto& [z, s] : p) axpy(cols[e], s, unit_vec(index_of_digits(k, rad) * h.dim() + z));
  }
  return LinMap(x, FreeSpace::tensor(x, h.carrier), std::move(cols));
}

namespace {

// Reduced row echelon form of a spanning set.
std::vector<Vec> reduced_basis(std::vector<Vec> rows) {
  std::vector<Vec> out;
  for (auto& r : rows) {
    for (const auto& b : out) {
      auto it = r.find(b.begin()->first);
      if (it != r.end()) axpy(r, -it->second, b);
    }
    if (r.empty()) continue;
    Scalar lead = r.begin()->second;
    r = scaled(r, 1 / lead);
    for (auto& b : out) {
      auto it = b.find(r.begin()->first);
      if (it != b.end()) axpy(b, -it->second, r);
    }
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [](const Vec& a, const Vec& b) { return a.begin()->first < b.begin()->first; });
  return out;
}

}  // namespace

CotensorSpace cotensor(const LinMap& right_coaction, const LinMap& left_coaction, std::size_t hdim) {
  const FreeSpace& x = right_coaction.domain();
  const FreeSpace& y = left_coaction.domain();
  if (right_coaction.codomain().dim() != x.dim() * hdim || left_coaction.codomain().dim() != hdim * y.dim())
    throw StructuralError("cotensor: coaction shapes");
  std::size_t dy = y.dim();
  FreeSpace xy = FreeSpace::tensor(x, y);
  FreeSpace xhy = FreeSpace::product({x, FreeSpace::range(hdim), y});
  std::vector<Vec> cols(xy.dim());
  for (std::size_t a = 0; a < x.dim(); ++a)
    for (std::size_t b = 0; b < dy; ++b) {
      Vec& c = cols[a * dy + b];
      for (const auto& [k, s] : right_coaction.col(a)) axpy(c, s, unit_vec(k * dy + b));
      for (const auto& [k, s] : left_coaction.col(b)) axpy(c, -s, unit_vec(a * hdim * dy + k));
    }
  auto ki = kernel_image(LinMap(xy, xhy, std::move(cols)));
  return {xy, Subspace(xy, reduced_basis(std::move(ki.kernel)))};
}

// ------------------------------------------------------ homological complex

namespace {

// Keys (h0, ..., hn, m).
class CotensorAmbient : public CyclicOps {
 public:
  CotensorAmbient(HopfAlgebra h, SAYDModule m, int cap) : h_(std::move(h)), m_(std::move(m)), cap_(cap) {
    require_side(m_, SaydSide::LeftLeft, "hopf_cyclic");
  }
  int orientation() const override { return -1; }
  int cap() const override { return cap_; }
  FreeSpace space(int n) const override {
    std::vector<FreeSpace> f(n + 1, h_.carrier);
    f.push_back(m_.carrier);
    return FreeSpace::product(f);
  }
  Vec face(int n, int i, std::size_t e) const override {
    return cache_.get(0, n, i, e, [&] {
      auto key = digits_of(e, rad(n));
      MultiVec out;
      if (i < n) {
        for (const auto& [x, s] : h_.mul(key[i], key[i + 1])) {
          auto k2 = key;
          k2[i] = x;
          k2.erase(k2.begin() + i + 1);
          add_term(out, k2, s);
        }
      } else {
        for (const auto& [u, v, c] : h_.comul_table[key[n]])
          for (const auto& [x, s] : h_.mul(u, key[0]))
            for (const auto& [mm, t] : m_.act(key[n + 1], v)) {
              auto k2 = key;
              k2[0] = x;
              k2.erase(k2.begin() + n);
              k2.back() = mm;
              add_term(out, k2, c * s * t);
            }
      }
      return encode(out, rad(n - 1));
    });
  }
  Vec degen(int n, int i, std::size_t e) const override {
    return cache_.get(1, n, i, e, [&] {
      auto key = digits_of(e, rad(n));
      MultiVec out;
      for (const auto& [u, s] : h_.unit) {
        auto k2 = key;
        k2.insert(k2.begin() + i + 1, u);
        add_term(out, k2, s);
      }
      return encode(out, rad(n + 1));
    });
  }
  Vec cyc(int n, std::size_t e) const override {
    return cache_.get(2, n, 0, e, [&] {
      auto key = digits_of(e, rad(n));
      MultiVec out;
      for (const auto& [u, v, c] : h_.comul_table[key[n]])
        for (const auto& [mm, t] : m_.act(key[n + 1], v)) {
          std::vector<std::size_t> k2{u};
          k2.insert(k2.end(), key.begin(), key.begin() + n);
          k2.push_back(mm);
          add_term(out, k2, c * t);
        }
      return encode(out, rad(n));
    });
  }

 private:
  std::vector<std::size_t> rad(int n) const { return radices(m_.dim(), h_.dim(), n + 1, true); }
  HopfAlgebra h_;
  SAYDModule m_;
  int cap_;
  OpCache cache_;
};

LinMap restrict_basis(const Subspace& src, const Subspace& dst, const std::function<Vec(const Vec&)>& f,
                      const std::string& what) {
  std::vector<Vec> cols(src.basis().size());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    auto c = dst.coordinates(f(src.basis()[k]));
    if (!c) throw StructuralError(what + " leaves the cotensor kernel (basis vector " + std::to_string(k) + ")");
    cols[k] = std::move(*c);
  }
  return LinMap(src.space(), dst.space(), std::move(cols));
}

Vec lin(const Vec& v, const std::function<Vec(std::size_t)>& f) {
  Vec out;
  for (const auto& [e, s] : v) axpy(out, s, f(e));
  return out;
}

}  // namespace

OpsPtr cotensor_ambient_ops(const HopfAlgebra& h, const SAYDModule& m, int cap) {
  return std::make_shared<CotensorAmbient>(h, m, cap);
}

HopfCyclicModule hopf_cyclic(const HopfAlgebra& h, const SAYDModule& m, int cap) {
  if (h.truncated) throw StructuralError("hopf_cyclic: truncated Hopf algebra");
  HopfCyclicModule r;
  r.ambient = cotensor_ambient_ops(h, m, cap);
  const CyclicOps& a = *r.ambient;
  LinMap lc = m.coaction_map(h);
  for (int n = 0; n <= cap; ++n) {
    auto ct = cotensor(diagonal_coaction(h, n + 1), lc, h.dim());
    FreeSpace amb = a.space(n);
    r.spaces.push_back({amb, Subspace(amb, ct.kernel.basis())});
  }
  CyclicModule& c = r.module;
  c.name = "C~(" + h.name + "," + m.name + ")";
  c.cap = cap;
  for (const auto& s : r.spaces) c.spaces.push_back(s.kernel.space());
  c.faces.resize(cap + 1);
  c.degens.resize(cap + 1);
  for (int n = 1; n <= cap; ++n)
    for (int i = 0; i <= n; ++i)
      c.faces[n].push_back(restrict_basis(
          r.spaces[n].kernel, r.spaces[n - 1].kernel,
          [&](const Vec& v) { return lin(v, [&](std::size_t e) { return a.face(n, i, e); }); }, op_at("face", n, i)));
  for (int n = 0; n < cap; ++n)
    for (int i = 0; i <= n; ++i)
      c.degens[n].push_back(restrict_basis(
          r.spaces[n].kernel, r.spaces[n + 1].kernel,
          [&](const Vec& v) { return lin(v, [&](std::size_t e) { return a.degen(n, i, e); }); },
          op_at("degeneracy", n, i)));
  for (int n = 0; n <= cap; ++n)
    c.cyc.push_back(restrict_basis(
        r.spaces[n].kernel, r.spaces[n].kernel,
        [&](const Vec& v) { return lin(v, [&](std::size_t e) { return a.cyc(n, e); }); }, op_at("t", n)));
  return r;
}

CyclicModule hopf_cyclic_module(const HopfAlgebra& h, const SAYDModule& m, int cap) {
  return hopf_cyclic(h, m, cap).module;
}

// -------------------------------------------------------------------- Omega

Vec omega_presentation(std::size_t hdim, std::size_t kdim, std::size_t mdim, std::size_t ndim, int n,
                       const Vec& v) {
  std::vector<std::size_t> src{mdim * ndim}, a{mdim}, b{ndim};
  for (int l = 0; l < n; ++l) src.push_back(hdim * kdim), a.push_back(hdim), b.push_back(kdim);
  std::size_t bdim = 1;
  for (auto r : b) bdim *= r;
  Vec out;
  for (const auto& [e, s] : v) {
    auto key = digits_of(e, src);
    std::vector<std::size_t> x, y;
    for (std::size_t l = 0; l < key.size(); ++l) x.push_back(key[l] / b[l]), y.push_back(key[l] % b[l]);
    axpy(out, s, unit_vec(index_of_digits(x, a) * bdim + index_of_digits(y, b)));
  }
  return out;
}

Vec omega_cyclic_ambient(std::size_t hdim, std::size_t kdim, std::size_t mdim, std::size_t ndim, int n,
                         const Vec& v) {
  std::vector<std::size_t> src, a, b;
  for (int l = 0; l <= n; ++l) src.push_back(hdim * kdim), a.push_back(hdim), b.push_back(kdim);
  src.push_back(mdim * ndim), a.push_back(mdim), b.push_back(ndim);
  std::size_t bdim = 1;
  for (auto r : b) bdim *= r;
  Vec out;
  for (const auto& [e, s] : v) {
    auto key = digits_of(e, src);
    std::vector<std::size_t> x, y;
    for (std::size_t l = 0; l < key.size(); ++l) x.push_back(key[l] / b[l]), y.push_back(key[l] % b[l]);
    axpy(out, s, unit_vec(index_of_digits(x, a) * bdim + index_of_digits(y, b)));
  }
  return out;
}

namespace {

// Inverse of an index permutation given as a map on unit vectors.
LinMap perm_inverse(const LinMap& p) {
  std::vector<Vec> cols(p.codomain().dim());
  for (std::size_t e = 0; e < p.domain().dim(); ++e) {
    const Vec& c = p.col(e);
    if (c.size() != 1 || c.begin()->second != 1) throw StructuralError("Omega: not a basis permutation");
    cols[c.begin()->first] = unit_vec(e);
  }
  return LinMap(p.codomain(), p.domain(), std::move(cols));
}

void check_square(const LinMap& lhs, const LinMap& rhs, const std::string& what) {
  if (!(lhs == rhs)) throw StructuralError("Omega does not commute with " + what);
}

void check_inverse(const LinMap& f, const LinMap& g, int n) {
  if (!(compose(f, g) == LinMap::identity(g.domain())) || !(compose(g, f) == LinMap::identity(f.domain())))
    throw StructuralError("Omega inverse fails at n=" + std::to_string(n));
}

}  // namespace

OmegaIso omega_cocyclic(const HopfAlgebra& h, const HopfAlgebra& k, const SAYDModule& m, const SAYDModule& n,
                        int cap) {
  HopfAlgebra hk = tensor_hopf(h, k);
  SAYDModule mn = tensor_sayd(m, h, n, k);
  auto big = cm_cocyclic_quotient(hk, mn, cap);
  auto ch = cm_cocyclic_quotient(h, m, cap), ck = cm_cocyclic_quotient(k, n, cap);
  auto prod = diagonal(ch.module, ck.module);
  OmegaIso iso;
  for (int d = 0; d <= cap; ++d) {
    // ambient permutation (m,r),(h0,k0).. -> (m,h0..) (x) (r,k0..)
    const FreeSpace& src = big.spaces[d].ambient;
    FreeSpace dst = FreeSpace::tensor(ch.spaces[d].ambient, ck.spaces[d].ambient);
    std::vector<Vec> cols(src.dim());
    for (std::size_t e = 0; e < src.dim(); ++e)
      cols[e] = omega_presentation(h.dim(), k.dim(), m.dim(), n.dim(), d + 1, unit_vec(e));
    LinMap amb(src, dst, std::move(cols));
    LinMap pi = kron(ch.spaces[d].quot.projection(), ck.spaces[d].quot.projection());
    LinMap sec = kron(ch.spaces[d].quot.section(), ck.spaces[d].quot.section());
    for (const auto& r : big.spaces[d].relations.cols())
      if (!pi.apply(amb.apply(r)).empty())
        throw StructuralError("Omega does not descend at n=" + std::to_string(d));
    LinMap f = compose(pi, compose(amb, big.spaces[d].quot.section()));
    LinMap g = compose(big.spaces[d].quot.projection(), compose(perm_inverse(amb), sec));
    check_inverse(f, g, d);
    iso.forward.push_back(f);
    iso.inverse.push_back(g);
  }
  for (int d = 1; d <= cap; ++d)
    for (int i = 0; i <= d; ++i)
      check_square(compose(iso.forward[d], big.module.cofaces[d][i]),
                   compose(prod.cofaces[d][i], iso.forward[d - 1]), op_at("coface", d, i));
  for (int d = 0; d < cap; ++d)
    for (int i = 0; i <= d; ++i)
      check_square(compose(iso.forward[d], big.module.codegens[d][i]),
                   compose(prod.codegens[d][i], iso.forward[d + 1]), op_at("codegeneracy", d, i));
  for (int d = 0; d <= cap; ++d)
    check_square(compose(iso.forward[d], big.module.cyc[d]), compose(prod.cyc[d], iso.forward[d]), op_at("tau", d));
  return iso;
}

OmegaIso omega_cyclic(const HopfAlgebra& h, const HopfAlgebra& k, const SAYDModule& m, const SAYDModule& n,
                      int cap) {
  HopfAlgebra hk = tensor_hopf(h, k);
  SAYDModule mn = tensor_sayd(m, h, n, k);
  auto big = hopf_cyclic(hk, mn, cap);
  auto ch = hopf_cyclic(h, m, cap), ck = hopf_cyclic(k, n, cap);
  auto prod = diagonal(ch.module, ck.module);
  OmegaIso iso;
  for (int d = 0; d <= cap; ++d) {
    const Subspace& sh = ch.spaces[d].kernel;
    const Subspace& sk = ck.spaces[d].kernel;
    FreeSpace amb = FreeSpace::tensor(sh.ambient(), sk.ambient());
    std::vector<Vec> basis;
    for (const auto& x : sh.basis())
      for (const auto& y : sk.basis()) {
        Vec v;
        for (const auto& [i, s] : x)
          for (const auto& [j, t] : y) axpy(v, s * t, unit_vec(i * sk.ambient().dim() + j));
        basis.push_back(std::move(v));
      }
    Subspace target(amb, basis);
    const Subspace& src = big.spaces[d].kernel;
    std::size_t hd = h.dim(), kd = k.dim(), md = m.dim(), nd = n.dim();
    LinMap f = restrict_basis(
        src, target, [&](const Vec& v) { return omega_cyclic_ambient(hd, kd, md, nd, d, v); },
        "Omega at n=" + std::to_string(d));
    std::vector<Vec> cols(src.ambient().dim());
    for (std::size_t e = 0; e < cols.size(); ++e) cols[e] = omega_cyclic_ambient(hd, kd, md, nd, d, unit_vec(e));
    LinMap inv = perm_inverse(LinMap(src.ambient(), amb, std::move(cols)));
    LinMap g = restrict_basis(
        target, src, [&](const Vec& v) { return inv.apply(v); }, "Omega inverse at n=" + std::to_string(d));
    // the target basis is the kron basis, so coordinates there are the diagonal's coordinates
    check_inverse(f, g, d);
    iso.forward.push_back(LinMap(f.domain(), prod.space(d), f.cols()));
    iso.inverse.push_back(LinMap(prod.space(d), g.codomain(), g.cols()));
  }
  for (int d = 1; d <= cap; ++d)
    for (int i = 0; i <= d; ++i)
      check_square(compose(iso.forward[d - 1], big.module.faces[d][i]), compose(prod.faces[d][i], iso.forward[d]),
                   op_at("face", d, i));
  for (int d = 0; d < cap; ++d)
    for (int i = 0; i <= d; ++i)
      check_square(compose(iso.forward[d + 1], big.module.degens[d][i]), compose(prod.degens[d][i], iso.forward[d]),
                   op_at("degeneracy", d, i));
  for (int d = 0; d <= cap; ++d)
    check_square(compose(iso.forward[d], big.module.cyc[d]), compose(prod.cyc[d], iso.forward[d]), op_at("t", d));
  return iso;
}

}  // namespace hopfcup
