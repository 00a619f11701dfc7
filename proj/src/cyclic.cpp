#include "hopfcup/cyclic.hpp"

#include <functional>

namespace hopfcup {

namespace {

std::string at(int n, int i = -1, int j = -1) {
  std::string s = "n=" + std::to_string(n);
  if (i >= 0) s += ",i=" + std::to_string(i);
  if (j >= 0) s += ",j=" + std::to_string(j);
  return s;
}

void fail(AxiomResult& r, std::string w) {
  if (r.passed) r.passed = false, r.witness = std::move(w);
}

LinMap power(const LinMap& f, int k) {
  LinMap r = LinMap::identity(f.domain());
  for (int i = 0; i < k; ++i) r = compose(f, r);
  return r;
}

}  // namespace

CyclicModule CocyclicModule::dual() const {
  CyclicModule c;
  c.name = name + "^*";
  c.cap = cap;
  c.spaces = spaces;
  c.faces.resize(cap + 1);
  c.degens.resize(cap + 1);
  for (int n = 1; n <= cap; ++n)
    for (const auto& f : cofaces[n]) c.faces[n].push_back(f.transpose());
  for (int n = 0; n < cap; ++n)
    for (const auto& f : codegens[n]) c.degens[n].push_back(f.transpose());
  for (const auto& t : cyc) c.cyc.push_back(t.transpose());
  return c;
}

CocyclicModule CocyclicModule::from_dual(const CyclicModule& c) {
  CocyclicModule r;
  r.name = c.name;
  r.cap = c.cap;
  r.spaces = c.spaces;
  r.cofaces.resize(c.cap + 1);
  r.codegens.resize(c.cap + 1);
  for (int n = 1; n <= c.cap; ++n)
    for (const auto& f : c.faces[n]) r.cofaces[n].push_back(f.transpose());
  for (int n = 0; n < c.cap; ++n)
    for (const auto& f : c.degens[n]) r.codegens[n].push_back(f.transpose());
  for (const auto& t : c.cyc) r.cyc.push_back(t.transpose());
  return r;
}

AxiomReport check_cyclic_identities(const CyclicModule& c) {
  AxiomReport rep;
  AxiomResult shape{"shape"};
  if (static_cast<int>(c.spaces.size()) != c.cap + 1 || static_cast<int>(c.cyc.size()) != c.cap + 1 ||
      static_cast<int>(c.faces.size()) < c.cap + 1 || static_cast<int>(c.degens.size()) < c.cap)
    fail(shape, "operator tables do not cover degrees 0.." + std::to_string(c.cap));
  for (int n = 1; n <= c.cap && shape.passed; ++n)
    if (static_cast<int>(c.faces[n].size()) != n + 1) fail(shape, "faces " + at(n));
  for (int n = 0; n < c.cap && shape.passed; ++n)
    if (static_cast<int>(c.degens[n].size()) != n + 1) fail(shape, "degeneracies " + at(n));
  rep.push_back(shape);
  if (!shape.passed) return rep;

  AxiomResult ff{"face_face"};  // d_i d_j = d_{j-1} d_i, i < j
  for (int n = 2; n <= c.cap; ++n)
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < j; ++i)
        if (!(compose(c.d(n - 1, i), c.d(n, j)) == compose(c.d(n - 1, j - 1), c.d(n, i)))) fail(ff, at(n, i, j));
  rep.push_back(ff);

  AxiomResult ss{"degeneracy_degeneracy"};  // s_i s_j = s_{j+1} s_i, i <= j
  for (int n = 0; n + 2 <= c.cap; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= j; ++i)
        if (!(compose(c.s(n + 1, i), c.s(n, j)) == compose(c.s(n + 1, j + 1), c.s(n, i)))) fail(ss, at(n, i, j));
  rep.push_back(ss);

  AxiomResult fs{"face_degeneracy"};
  for (int n = 0; n < c.cap; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i) {
        LinMap lhs = compose(c.d(n + 1, i), c.s(n, j));
        LinMap rhs;
        if (i == j || i == j + 1)
          rhs = LinMap::identity(c.space(n));
        else if (i < j)
          rhs = compose(c.s(n - 1, j - 1), c.d(n, i));
        else
          rhs = compose(c.s(n - 1, j), c.d(n, i - 1));
        if (!(lhs == rhs)) fail(fs, at(n, i, j));
      }
  rep.push_back(fs);

  AxiomResult ft{"face_cyclic"};  // d_i t_n = t_{n-1} d_{i-1}, d_0 t_n = d_n
  for (int n = 1; n <= c.cap; ++n) {
    if (!(compose(c.d(n, 0), c.t(n)) == c.d(n, n))) fail(ft, at(n, 0));
    for (int i = 1; i <= n; ++i)
      if (!(compose(c.d(n, i), c.t(n)) == compose(c.t(n - 1), c.d(n, i - 1)))) fail(ft, at(n, i));
  }
  rep.push_back(ft);

  AxiomResult st{"degeneracy_cyclic"};  // s_i t_n = t_{n+1} s_{i-1}, s_0 t_n = t_{n+1}^2 s_n
  for (int n = 0; n < c.cap; ++n) {
    if (!(compose(c.s(n, 0), c.t(n)) == compose(power(c.t(n + 1), 2), c.s(n, n)))) fail(st, at(n, 0));
    for (int i = 1; i <= n; ++i)
      if (!(compose(c.s(n, i), c.t(n)) == compose(c.t(n + 1), c.s(n, i - 1)))) fail(st, at(n, i));
  }
  rep.push_back(st);

  AxiomResult order{"cyclic_order"};  // t_n^{n+1} = id
  for (int n = 0; n <= c.cap; ++n)
    if (!(power(c.t(n), n + 1) == LinMap::identity(c.space(n)))) fail(order, at(n));
  rep.push_back(order);
  return rep;
}

AxiomReport check_cocyclic_identities(const CocyclicModule& c) { return check_cyclic_identities(c.dual()); }

CyclicModule one_point_module(int cap) {
  CyclicModule c;
  c.name = "point";
  c.cap = cap;
  FreeSpace k = FreeSpace::ground();
  LinMap id = LinMap::identity(k);
  c.spaces.assign(cap + 1, k);
  c.faces.resize(cap + 1);
  c.degens.resize(cap + 1);
  for (int n = 1; n <= cap; ++n) c.faces[n].assign(n + 1, id);
  for (int n = 0; n < cap; ++n) c.degens[n].assign(n + 1, id);
  c.cyc.assign(cap + 1, id);
  return c;
}

CyclicModule truncate(const CyclicModule& c, int cap) {
  if (cap > c.cap) throw StructuralError("truncate: cap above the module's cap");
  CyclicModule r = c;
  r.cap = cap;
  r.spaces.resize(cap + 1);
  r.faces.resize(cap + 1);
  r.degens.resize(cap + 1);
  if (cap >= 0) r.degens[cap].clear();
  r.cyc.resize(cap + 1);
  return r;
}

LinMap hochschild_b(const CyclicModule& c, int n) {
  if (n == 0) return LinMap(c.space(0), FreeSpace());
  LinMap b(c.space(n), c.space(n - 1));
  for (int i = 0; i <= n; ++i) b = b + (i % 2 ? -c.d(n, i) : c.d(n, i));
  return b;
}

LinMap lambda_map(const CyclicModule& c, int n) { return n % 2 ? -c.t(n) : c.t(n); }

LinMap norm_map(const CyclicModule& c, int n) {
  LinMap l = lambda_map(c, n);
  LinMap acc = LinMap::identity(c.space(n)), p = acc;
  for (int k = 1; k <= n; ++k) {
    p = compose(l, p);
    acc = acc + p;
  }
  return acc;
}

LinMap extra_degeneracy(const CyclicModule& c, int n) { return compose(c.t(n + 1), c.s(n, n)); }

LinMap connes_B(const CyclicModule& c, int n) {
  LinMap sN = compose(extra_degeneracy(c, n), norm_map(c, n));
  return sN - compose(lambda_map(c, n + 1), sN);
}

// ----------------------------------------------------------- mixed complexes

LinMap MixedComplex::b_from(int n) const {
  auto it = b.find(n);
  if (it != b.end()) return it->second;
  static const FreeSpace zero;
  int m = n + dir;
  return LinMap(space(n), m >= 0 && m <= cap ? space(m) : zero);
}

LinMap MixedComplex::B_from(int n) const {
  auto it = B.find(n);
  if (it != B.end()) return it->second;
  static const FreeSpace zero;
  int m = n - dir;
  return LinMap(space(n), m >= 0 && m <= cap ? space(m) : zero);
}

MixedComplex MixedComplex::transpose() const {
  MixedComplex t;
  t.dir = -dir;
  t.cap = cap;
  t.spaces = spaces;
  for (const auto& [n, f] : b) t.b[n + dir] = f.transpose();
  for (const auto& [n, f] : B) t.B[n - dir] = f.transpose();
  return t;
}

ComplexWindow MixedComplex::hochschild_window() const {
  ComplexWindow w;
  w.dir = dir;
  w.lo = 0;
  w.hi = cap;
  w.lo_exact = true;
  w.hi_exact = false;
  for (int n = 0; n <= cap; ++n) w.spaces[n] = spaces[n];
  for (const auto& [n, f] : b) w.d[n] = f;
  return w;
}

bool check_mixed(const MixedComplex& m, std::string* witness) {
  auto bad = [&](const std::string& what, int n) {
    if (witness) *witness = what + " out of degree " + std::to_string(n);
    return false;
  };
  for (int n = 0; n <= m.cap; ++n) {
    int up = n - m.dir, down = n + m.dir;
    if (m.b.count(n) && m.b.count(down) && !compose(m.b.at(down), m.b.at(n)).is_zero()) return bad("b^2", n);
    if (m.B.count(n) && m.B.count(up) && !compose(m.B.at(up), m.B.at(n)).is_zero()) return bad("B^2", n);
    // bB + Bb on C_n; the Bb term vanishes when b leaves the bottom.
    if (!m.B.count(n) || !m.b.count(up)) continue;
    LinMap sum = compose(m.b.at(up), m.B.at(n));
    if (m.b.count(n) && m.B.count(down))
      sum = sum + compose(m.B.at(down), m.b.at(n));
    else if (down >= 0)
      continue;
    if (!sum.is_zero()) return bad("bB+Bb", n);
  }
  return true;
}

MixedComplex unnormalized_mixed(const CyclicModule& c) {
  MixedComplex m;
  m.dir = -1;
  m.cap = c.cap;
  m.spaces = c.spaces;
  for (int n = 1; n <= c.cap; ++n) m.b[n] = hochschild_b(c, n);
  for (int n = 0; n < c.cap; ++n) m.B[n] = connes_B(c, n);
  return m;
}

NormalizedModule normalize(const CyclicModule& c) {
  NormalizedModule r;
  for (int n = 0; n <= c.cap; ++n) {
    std::vector<Vec> rels;
    if (n > 0)
      for (const auto& s : c.degens[n - 1])
        for (const auto& col : s.cols())
          if (!col.empty()) rels.push_back(col);
    r.quot.emplace_back(c.space(n), rels);
  }
  MixedComplex& m = r.mixed;
  m.dir = -1;
  m.cap = c.cap;
  for (const auto& q : r.quot) m.spaces.push_back(q.space());
  for (int n = 1; n <= c.cap; ++n)
    m.b[n] = r.quot[n].descend_map(hochschild_b(c, n), r.quot[n - 1], "b at degree " + std::to_string(n));
  for (int n = 0; n < c.cap; ++n)
    m.B[n] = r.quot[n].descend_map(connes_B(c, n), r.quot[n + 1], "B at degree " + std::to_string(n));
  return r;
}

// ----------------------------------------------------------- diagonal, tensor

CyclicModule diagonal(const CyclicModule& a, const CyclicModule& b) {
  if (a.cap != b.cap) throw StructuralError("diagonal: cap mismatch");
  CyclicModule c;
  c.name = a.name + "x" + b.name;
  c.cap = a.cap;
  for (int n = 0; n <= c.cap; ++n) c.spaces.push_back(FreeSpace::tensor(a.space(n), b.space(n)));
  c.faces.resize(c.cap + 1);
  c.degens.resize(c.cap + 1);
  for (int n = 1; n <= c.cap; ++n)
    for (int i = 0; i <= n; ++i) c.faces[n].push_back(kron(a.d(n, i), b.d(n, i)));
  for (int n = 0; n < c.cap; ++n)
    for (int i = 0; i <= n; ++i) c.degens[n].push_back(kron(a.s(n, i), b.s(n, i)));
  for (int n = 0; n <= c.cap; ++n) c.cyc.push_back(kron(a.t(n), b.t(n)));
  return c;
}

CocyclicModule diagonal(const CocyclicModule& a, const CocyclicModule& b) {
  return CocyclicModule::from_dual(diagonal(a.dual(), b.dual()));
}

namespace {

struct TensorLayout {
  FreeSpace space;
  std::vector<int> ps;                 // summand p values in order
  std::vector<std::size_t> dims, off;  // per summand
  std::size_t index(int p) const {
    for (std::size_t k = 0; k < ps.size(); ++k)
      if (ps[k] == p) return k;
    throw StructuralError("no tensor summand p=" + std::to_string(p));
  }
};

TensorLayout tensor_layout(const MixedComplex& a, const MixedComplex& b, int n) {
  TensorLayout t;
  std::vector<std::pair<long long, FreeSpace>> parts;
  for (int p = 0; p <= n; ++p) {
    int q = n - p;
    if (p > a.cap || q > b.cap) continue;
    FreeSpace s = FreeSpace::tensor(a.space(p), b.space(q));
    t.ps.push_back(p);
    t.dims.push_back(s.dim());
    parts.emplace_back(p, s);
  }
  t.space = FreeSpace::direct_sum(parts);
  t.off = direct_sum_offsets(t.dims);
  return t;
}

// f (x) 1 + (-1)^p 1 (x) g from degree n to degree n + shift.
LinMap tensor_operator(const MixedComplex& a, const MixedComplex& b, int n, int shift,
                       const std::map<int, LinMap>& fa, const std::map<int, LinMap>& fb) {
  TensorLayout src = tensor_layout(a, b, n), dst = tensor_layout(a, b, n + shift);
  std::vector<Vec> cols(src.space.dim());
  for (std::size_t k = 0; k < src.ps.size(); ++k) {
    int p = src.ps[k], q = n - p;
    std::size_t dq = b.space(q).dim();
    auto fa_it = fa.find(p);
    auto fb_it = fb.find(q);
    for (std::size_t x = 0; x < a.space(p).dim(); ++x)
      for (std::size_t y = 0; y < dq; ++y) {
        Vec& col = cols[src.off[k] + x * dq + y];
        if (fa_it != fa.end() && p + shift >= 0 && p + shift <= a.cap) {
          std::size_t kk = dst.index(p + shift);
          std::size_t dq2 = b.space(q).dim();
          for (const auto& [x2, c] : fa_it->second.col(x)) axpy(col, c, unit_vec(dst.off[kk] + x2 * dq2 + y));
        }
        if (fb_it != fb.end() && q + shift >= 0 && q + shift <= b.cap) {
          std::size_t kk = dst.index(p);
          std::size_t dq2 = b.space(q + shift).dim();
          Scalar sg = p % 2 ? -1 : 1;
          for (const auto& [y2, c] : fb_it->second.col(y)) axpy(col, sg * c, unit_vec(dst.off[kk] + x * dq2 + y2));
        }
      }
  }
  return LinMap(src.space, dst.space, std::move(cols));
}

}  // namespace

MixedComplex tensor_mixed(const MixedComplex& a, const MixedComplex& b) {
  if (a.dir != b.dir) throw StructuralError("tensor_mixed: direction mismatch");
  MixedComplex m;
  m.dir = a.dir;
  m.cap = std::min(a.cap, b.cap);
  for (int n = 0; n <= m.cap; ++n) m.spaces.push_back(tensor_layout(a, b, n).space);
  for (int n = 0; n <= m.cap; ++n) {
    if (n + m.dir >= 0 && n + m.dir <= m.cap) m.b[n] = tensor_operator(a, b, n, m.dir, a.b, b.b);
    if (n - m.dir >= 0 && n - m.dir <= m.cap) m.B[n] = tensor_operator(a, b, n, -m.dir, a.B, b.B);
  }
  return m;
}

LinMap tensor_summand_inclusion(const MixedComplex& a, const MixedComplex& b, int p, int q) {
  TensorLayout t = tensor_layout(a, b, p + q);
  std::size_t k = t.index(p);
  std::vector<Vec> cols(t.dims[k]);
  for (std::size_t i = 0; i < t.dims[k]; ++i) cols[i] = unit_vec(t.off[k] + i);
  return LinMap(FreeSpace::tensor(a.space(p), b.space(q)), t.space, std::move(cols));
}

LinMap tensor_summand_projection(const MixedComplex& a, const MixedComplex& b, int p, int q) {
  return tensor_summand_inclusion(a, b, p, q).transpose();
}

// ------------------------------------------------------------------- Tot

namespace {

struct TotLayout {
  FreeSpace space;
  std::vector<int> ks;
  std::vector<std::size_t> dims, off;
  std::ptrdiff_t index(int k) const {
    for (std::size_t i = 0; i < ks.size(); ++i)
      if (ks[i] == k) return static_cast<std::ptrdiff_t>(i);
    return -1;
  }
};

TotLayout tot_layout(const MixedComplex& m, int n) {
  TotLayout t;
  std::vector<std::pair<long long, FreeSpace>> parts;
  for (int k = 0; n - 2 * k >= 0; ++k) {
    t.ks.push_back(k);
    t.dims.push_back(m.space(n - 2 * k).dim());
    parts.emplace_back(k, m.space(n - 2 * k));
  }
  t.space = FreeSpace::direct_sum(parts);
  t.off = direct_sum_offsets(t.dims);
  return t;
}

void place(std::vector<Vec>& cols, std::size_t col_off, std::size_t row_off, const LinMap& f, const Scalar& s = 1) {
  for (std::size_t j = 0; j < f.domain().dim(); ++j)
    for (const auto& [i, c] : f.col(j)) axpy(cols[col_off + j], s * c, unit_vec(row_off + i));
}

}  // namespace

LinMap TotWindow::inclusion(int n, int k) const {
  TotLayout t = tot_layout(source, n);
  auto idx = t.index(k);
  if (idx < 0) throw StructuralError("no Tot summand");
  std::vector<Vec> cols(t.dims[idx]);
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = unit_vec(t.off[idx] + i);
  return LinMap(source.space(n - 2 * k), t.space, std::move(cols));
}

LinMap TotWindow::projection(int n, int k) const { return inclusion(n, k).transpose(); }

TotWindow tot_window(const MixedComplex& m) {
  TotWindow w;
  w.source = m;
  ComplexWindow& c = w.tot;
  c.dir = m.dir;
  c.lo = 0;
  c.hi = m.cap;
  c.lo_exact = true;
  c.hi_exact = false;
  std::map<int, TotLayout> lay;
  for (int n = 0; n <= m.cap; ++n) {
    lay[n] = tot_layout(m, n);
    c.spaces[n] = lay[n].space;
  }
  for (int n = 0; n <= m.cap; ++n) {
    int t = n + m.dir;
    if (t < 0 || t > m.cap) continue;
    const TotLayout &src = lay[n], &dst = lay[t];
    std::vector<Vec> cols(src.space.dim());
    for (std::size_t i = 0; i < src.ks.size(); ++i) {
      int k = src.ks[i], deg = n - 2 * k;
      auto kb = dst.index(k);
      if (kb >= 0 && m.b.count(deg)) place(cols, src.off[i], dst.off[kb], m.b.at(deg));
      auto kB = dst.index(k + m.dir);
      if (kB >= 0 && m.B.count(deg)) place(cols, src.off[i], dst.off[kB], m.B.at(deg));
    }
    c.d[n] = LinMap(src.space, dst.space, std::move(cols));
  }
  for (int n = 0; n <= m.cap; ++n) {
    int t = n + 2 * m.dir;
    if (t < 0 || t > m.cap) continue;
    const TotLayout &src = lay[n], &dst = lay[t];
    std::vector<Vec> cols(src.space.dim());
    for (std::size_t i = 0; i < src.ks.size(); ++i) {
      auto j = dst.index(src.ks[i] + m.dir);
      if (j >= 0) place(cols, src.off[i], dst.off[j], LinMap::identity(m.space(n - 2 * src.ks[i])));
    }
    w.S[n] = LinMap(src.space, dst.space, std::move(cols));
  }
  return w;
}

bool check_tot(const TotWindow& w, std::string* witness) {
  if (!w.tot.check_d_squared(witness)) return false;
  int dir = w.dir();
  for (const auto& [n, s] : w.S) {
    int t = n + 2 * dir;
    if (!w.tot.d.count(n) || !w.tot.d.count(t) || !w.S.count(n + dir)) continue;
    if (!(compose(w.tot.d.at(t), s) == compose(w.S.at(n + dir), w.tot.d.at(n)))) {
      if (witness) *witness = "S does not commute with b+B out of degree " + std::to_string(n);
      return false;
    }
  }
  return true;
}

// ------------------------------------------------------------ basis-level ops

int word_end(int n, const Word& w) {
  for (const auto& op : w) n += op.kind == OpKind::Face ? -1 : op.kind == OpKind::Degen ? 1 : 0;
  return n;
}

namespace {

template <class F>
Vec lin_apply(const Vec& v, F f) {
  Vec out;
  for (const auto& [e, s] : v) axpy(out, s, f(e));
  return out;
}

class MatrixOps : public CyclicOps {
 public:
  MatrixOps(int orientation, int cap, std::vector<FreeSpace> spaces, std::vector<std::vector<LinMap>> faces,
            std::vector<std::vector<LinMap>> degens, std::vector<LinMap> cyc)
      : orient_(orientation), cap_(cap), spaces_(std::move(spaces)), faces_(std::move(faces)),
        degens_(std::move(degens)), cyc_(std::move(cyc)) {}
  int orientation() const override { return orient_; }
  int cap() const override { return cap_; }
  FreeSpace space(int n) const override { return spaces_.at(n); }
  Vec face(int n, int i, std::size_t e) const override { return faces_.at(n).at(i).col(e); }
  Vec degen(int n, int i, std::size_t e) const override { return degens_.at(n).at(i).col(e); }
  Vec cyc(int n, std::size_t e) const override { return cyc_.at(n).col(e); }

 private:
  int orient_, cap_;
  std::vector<FreeSpace> spaces_;
  std::vector<std::vector<LinMap>> faces_, degens_;
  std::vector<LinMap> cyc_;
};

}  // namespace

OpsPtr module_ops(const CyclicModule& c) {
  return std::make_shared<MatrixOps>(-1, c.cap, c.spaces, c.faces, c.degens, c.cyc);
}

OpsPtr module_ops(const CocyclicModule& c) {
  return std::make_shared<MatrixOps>(1, c.cap, c.spaces, c.cofaces, c.codegens, c.cyc);
}

Vec apply_word(const CyclicOps& c, int n, const Word& w, const Vec& v) {
  std::vector<int> deg{n};
  for (const auto& op : w) deg.push_back(word_end(deg.back(), {op}));
  for (int d : deg)
    if (d < 0 || d > c.cap()) throw StructuralError("word leaves degrees 0.." + std::to_string(c.cap()));
  Vec x = v;
  auto step = [&](const Op& op, int d) {
    switch (op.kind) {
      case OpKind::Face:
        x = lin_apply(x, [&](std::size_t e) { return c.face(d, op.i, e); });
        break;
      case OpKind::Degen:
        x = lin_apply(x, [&](std::size_t e) { return c.degen(d, op.i, e); });
        break;
      case OpKind::Cyc:
        for (int k = 0; k < op.i && !x.empty(); ++k) x = lin_apply(x, [&](std::size_t e) { return c.cyc(d, e); });
        break;
    }
  };
  if (c.orientation() < 0) {
    for (std::size_t k = 0; k < w.size() && !x.empty(); ++k) step(w[k], deg[k]);
  } else {
    for (std::size_t k = w.size(); k-- > 0 && !x.empty();) step(w[k], deg[k]);
  }
  return x;
}

namespace {

LinMap basis_map(const FreeSpace& dom, const FreeSpace& cod, const std::function<Vec(std::size_t)>& f) {
  std::vector<Vec> cols(dom.dim());
  for (std::size_t e = 0; e < cols.size(); ++e) cols[e] = f(e);
  return LinMap(dom, cod, std::move(cols));
}

}  // namespace

CyclicModule materialize_cyclic(const CyclicOps& c) {
  if (c.orientation() > 0) throw StructuralError("materialize_cyclic: cochain module");
  CyclicModule m;
  m.cap = c.cap();
  for (int n = 0; n <= m.cap; ++n) m.spaces.push_back(c.space(n));
  m.faces.resize(m.cap + 1);
  m.degens.resize(m.cap + 1);
  for (int n = 1; n <= m.cap; ++n)
    for (int i = 0; i <= n; ++i)
      m.faces[n].push_back(basis_map(m.spaces[n], m.spaces[n - 1], [&](std::size_t e) { return c.face(n, i, e); }));
  for (int n = 0; n < m.cap; ++n)
    for (int i = 0; i <= n; ++i)
      m.degens[n].push_back(basis_map(m.spaces[n], m.spaces[n + 1], [&](std::size_t e) { return c.degen(n, i, e); }));
  for (int n = 0; n <= m.cap; ++n)
    m.cyc.push_back(basis_map(m.spaces[n], m.spaces[n], [&](std::size_t e) { return c.cyc(n, e); }));
  return m;
}

CocyclicModule materialize_cocyclic(const CyclicOps& c) {
  if (c.orientation() < 0) throw StructuralError("materialize_cocyclic: chain module");
  CocyclicModule m;
  m.cap = c.cap();
  for (int n = 0; n <= m.cap; ++n) m.spaces.push_back(c.space(n));
  m.cofaces.resize(m.cap + 1);
  m.codegens.resize(m.cap + 1);
  for (int n = 1; n <= m.cap; ++n)
    for (int i = 0; i <= n; ++i)
      m.cofaces[n].push_back(basis_map(m.spaces[n - 1], m.spaces[n], [&](std::size_t e) { return c.face(n, i, e); }));
  for (int n = 0; n < m.cap; ++n)
    for (int i = 0; i <= n; ++i)
      m.codegens[n].push_back(basis_map(m.spaces[n + 1], m.spaces[n], [&](std::size_t e) { return c.degen(n, i, e); }));
  for (int n = 0; n <= m.cap; ++n)
    m.cyc.push_back(basis_map(m.spaces[n], m.spaces[n], [&](std::size_t e) { return c.cyc(n, e); }));
  return m;
}

}  // namespace hopfcup
