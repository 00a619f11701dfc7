#include "hopfcup/ez.hpp"

#include <algorithm>
#include <optional>

namespace hopfcup {

int perm_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

namespace {

// k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int x = start; x < n; ++x) {
      cur.push_back(x);
      self(self, x + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

Word faces_down(int from, int to) {
  Word w;
  for (int k = from; k >= to; --k) w.push_back({OpKind::Face, k});
  return w;
}

}  // namespace

std::vector<Shuffle> shuffles(int i, int j) {
  std::vector<Shuffle> out;
  int n = i + j;
  for (const auto& first : subsets(n, i)) {
    Shuffle s;
    std::vector<bool> used(n, false);
    for (int x : first) s.sigma.push_back(x + 1), used[x] = true;
    for (int x = 0; x < n; ++x)
      if (!used[x]) s.sigma.push_back(x + 1);
    s.sign = perm_sign(s.sigma);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<CyclicShuffle> cyclic_shuffles(int i, int j) {
  std::vector<CyclicShuffle> out;
  for (const auto& s : shuffles(i, j))
    for (int p = 0; p < i; ++p)
      for (int q = 0; q < j; ++q)
        if (s.sigma[p] < s.sigma[i + q]) out.push_back({s, p, q});
  return out;
}

std::vector<EzTerm> aw_terms(int n) {
  std::vector<EzTerm> out;
  for (int p = 0; p <= n; ++p) {
    EzTerm t;
    t.coeff = 1;
    t.sx = t.sy = n;
    t.wx = faces_down(n, p + 1);
    t.wy = Word(p, Op{OpKind::Face, 0});
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<EzTerm> sh_terms(int p, int q) {
  std::vector<EzTerm> out;
  int n = p + q;
  for (const auto& s : shuffles(p, q)) {
    EzTerm t;
    t.coeff = s.sign;
    t.sx = p;
    t.sy = q;
    for (int k = p + 1; k <= n; ++k) t.wx.push_back({OpKind::Degen, s.sigma[k - 1] - 1});
    for (int k = 1; k <= p; ++k) t.wy.push_back({OpKind::Degen, s.sigma[k - 1] - 1});
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<EzTerm> shp_terms(int i, int j) {
  std::vector<EzTerm> out;
  int n = i + j;
  for (const auto& cs : cyclic_shuffles(i, j)) {
    int p = cs.p, q = cs.q;
    EzTerm t;
    int e = (p + 1) * (i - 1) + q * (j - 1);
    t.coeff = cs.s.sign * (e % 2 ? -1 : 1);
    t.sx = i - 1;
    t.sy = j - 1;
    t.wx = {{OpKind::Degen, i - p - 1}, {OpKind::Cyc, p + 1}};
    for (int k = i + 1; k <= n; ++k) t.wx.push_back({OpKind::Degen, cs.s.sigma[k - 1] - 1});
    t.wy = {{OpKind::Degen, j - q - 1}, {OpKind::Cyc, q + 1}};
    for (int k = 1; k <= i; ++k) t.wy.push_back({OpKind::Degen, cs.s.sigma[k - 1] - 1});
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<EzTerm> phi_terms(int n) {
  std::vector<EzTerm> out;
  for (int q = 0; q <= n - 1; ++q)
    for (int p = 0; p <= n - q - 1; ++p) {
      int c = n - p - q;
      for (const auto& alpha : subsets(p + q + 1, p + 1)) {
        std::vector<int> beta;
        for (int x = 0; x <= p + q; ++x)
          if (!std::binary_search(alpha.begin(), alpha.end(), x)) beta.push_back(x);
        int e = 0;
        for (std::size_t k = 0; k < alpha.size(); ++k) e += alpha[k] - static_cast<int>(k);
        EzTerm t;
        t.coeff = (c + e) % 2 ? -1 : 1;
        t.sx = t.sy = n;
        t.wx = faces_down(n, n - q + 1);
        t.wx.push_back({OpKind::Degen, c - 1});
        for (int b : beta) t.wx.push_back({OpKind::Degen, b + c});
        t.wy = faces_down(n - q - 1, c);
        for (int a : alpha) t.wy.push_back({OpKind::Degen, a + c});
        out.push_back(std::move(t));
      }
    }
  return out;
}

Vec apply_term(const CyclicOps& a, const CyclicOps& b, const EzTerm& t, const Vec& v) {
  if (a.orientation() != b.orientation()) throw StructuralError("apply_term: orientation mismatch");
  bool chains = a.orientation() < 0;
  int ty = t.ty();
  std::size_t din = b.dim(chains ? t.sy : ty), dout = b.dim(chains ? ty : t.sy);
  std::map<std::size_t, Vec> wx_memo, wy_memo;
  auto word_x = [&](std::size_t x) -> const Vec& {
    auto it = wx_memo.find(x);
    if (it == wx_memo.end()) it = wx_memo.emplace(x, apply_word(a, t.sx, t.wx, unit_vec(x))).first;
    return it->second;
  };
  auto word_y = [&](std::size_t y) -> const Vec& {
    auto it = wy_memo.find(y);
    if (it == wy_memo.end()) it = wy_memo.emplace(y, apply_word(b, t.sy, t.wy, unit_vec(y))).first;
    return it->second;
  };
  Vec out;
  for (const auto& [idx, s] : v) {
    const Vec& X = word_x(idx / din);
    if (X.empty()) continue;
    const Vec& Y = word_y(idx % din);
    for (const auto& [x2, cx] : X)
      for (const auto& [y2, cy] : Y) axpy(out, s * t.coeff * cx * cy, unit_vec(x2 * dout + y2));
  }
  return out;
}

// ---------------------------------------------------------------- EzPair

EzPair::EzPair(const CyclicModule& a, const CyclicModule& b)
    : cap_(a.cap), na_(normalize(a)), nb_(normalize(b)), np_(normalize(diagonal(a, b))),
      tensor_(tensor_mixed(na_.mixed, nb_.mixed)), oa_(module_ops(a)), ob_(module_ops(b)) {
  if (a.cap != b.cap) throw StructuralError("EzPair: caps differ");
}

std::size_t EzPair::tensor_offset(int n, int p) const {
  std::size_t off = 0;
  for (int r = 0; r < p; ++r) off += na_.mixed.space(r).dim() * nb_.mixed.space(n - r).dim();
  return off;
}

Vec EzPair::project_pair(const NormalizedModule& x, const NormalizedModule& y, int p, int q, const Vec& v) const {
  std::size_t dy = y.quot[q].ambient().dim(), ny = y.quot[q].space().dim();
  std::map<std::size_t, Vec> rows;  // x index -> y part
  for (const auto& [idx, s] : v) rows[idx / dy][idx % dy] = s;
  Vec out;
  for (const auto& [xi, yv] : rows) {
    Vec py = y.quot[q].project(yv);
    if (py.empty()) continue;
    Vec px = x.quot[p].project(unit_vec(xi));
    axpy(out, 1, kron_vec(px, py, ny));
  }
  return out;
}

LinMap EzPair::diag_to_tensor(int n, const std::vector<EzTerm>& terms) const {
  const Quotient& q = np_.quot.at(n);
  LinMap sec = q.section();
  std::vector<Vec> cols(q.space().dim());
  for (std::size_t e = 0; e < cols.size(); ++e) {
    const Vec& s = sec.col(e);
    for (const auto& t : terms) {
      int tx = t.tx(), ty = t.ty();
      if (tx + ty != n) throw StructuralError("diag_to_tensor: degree mismatch");
      Vec w = apply_term(*oa_, *ob_, t, s);
      Vec pw = project_pair(na_, nb_, tx, ty, w);
      std::size_t off = tensor_offset(n, tx);
      for (const auto& [i, c] : pw) axpy(cols[e], c, unit_vec(off + i));
    }
  }
  return LinMap(q.space(), tensor_.space(n), std::move(cols));
}

LinMap EzPair::tensor_to_diag(int n, int shift,
                              const std::function<std::vector<EzTerm>(int, int)>& terms) const {
  int m = n + shift;
  if (m > cap_) throw CapOverflow(m, cap_);
  const Quotient& target = np_.quot.at(m);
  std::vector<Vec> cols(tensor_.space(n).dim());
  for (int p = 0; p <= n; ++p) {
    int q = n - p;
    LinMap sa = na_.quot[p].section(), sb = nb_.quot[q].section();
    std::size_t off = tensor_offset(n, p), db = sb.domain().dim(), dbq = sb.codomain().dim();
    auto ts = terms(p, q);
    for (std::size_t x = 0; x < sa.domain().dim(); ++x)
      for (std::size_t y = 0; y < db; ++y) {
        Vec amb = kron_vec(sa.col(x), sb.col(y), dbq);
        Vec acc;
        for (const auto& t : ts) axpy(acc, 1, apply_term(*oa_, *ob_, t, amb));
        cols[off + x * db + y] = target.project(acc);
      }
  }
  return LinMap(tensor_.space(n), target.space(), std::move(cols));
}

LinMap EzPair::aw(int n) const { return diag_to_tensor(n, aw_terms(n)); }

LinMap EzPair::sh(int n) const { return tensor_to_diag(n, 0, sh_terms); }

LinMap EzPair::sh_prime(int n) const {
  return tensor_to_diag(n, 2, [](int p, int q) { return shp_terms(p + 1, q + 1); });
}

LinMap EzPair::phi(int n) const {
  if (n + 1 > cap_) throw CapOverflow(n + 1, cap_);
  const Quotient &q = np_.quot.at(n), &target = np_.quot.at(n + 1);
  LinMap sec = q.section();
  auto ts = phi_terms(n);
  std::vector<Vec> cols(q.space().dim());
  for (std::size_t e = 0; e < cols.size(); ++e) {
    Vec acc;
    for (const auto& t : ts) axpy(acc, 1, apply_term(*oa_, *ob_, t, sec.col(e)));
    cols[e] = target.project(acc);
  }
  return LinMap(q.space(), target.space(), std::move(cols));
}

LinMap EzPair::aw_prime(int n) const { return aw_series(1, n); }

LinMap EzPair::aw_series(int k, int n) const {
  LinMap x = LinMap::identity(np_.quot.at(n).space());
  int m = n;
  for (int j = 0; j < k; ++j) {
    x = compose(compose(diag().B_from(m + 1), phi(m)), x) * Scalar(-1);
    m += 2;
  }
  return compose(aw(m), x);
}

bool EzPair::check_descent(int n, std::string* witness) const {
  auto fail = [&](const std::string& what) {
    if (witness) *witness = what + " at degree " + std::to_string(n);
    return false;
  };
  // AW and phi on degenerate diagonal chains
  for (const auto& r : np_.quot.at(n).relations()) {
    for (const auto& t : aw_terms(n))
      if (!project_pair(na_, nb_, t.tx(), t.ty(), apply_term(*oa_, *ob_, t, r)).empty()) return fail("AW");
    if (n + 1 <= cap_) {
      Vec acc;
      for (const auto& t : phi_terms(n)) axpy(acc, 1, apply_term(*oa_, *ob_, t, r));
      if (!np_.quot.at(n + 1).is_zero(acc)) return fail("phi");
    }
  }
  // sh and sh' on tensors with a degenerate factor
  for (int p = 0; p <= n; ++p) {
    int q = n - p;
    std::size_t da = na_.quot[p].ambient().dim(), db = nb_.quot[q].ambient().dim();
    std::vector<Vec> gens;
    for (const auto& r : na_.quot[p].relations())
      for (std::size_t y = 0; y < db; ++y) gens.push_back(kron_vec(r, unit_vec(y), db));
    for (const auto& r : nb_.quot[q].relations())
      for (std::size_t x = 0; x < da; ++x) gens.push_back(kron_vec(unit_vec(x), r, db));
    for (const auto& g : gens) {
      Vec acc;
      for (const auto& t : sh_terms(p, q)) axpy(acc, 1, apply_term(*oa_, *ob_, t, g));
      if (!np_.quot.at(n).is_zero(acc)) return fail("sh");
      if (n + 2 <= cap_) {
        Vec acc2;
        for (const auto& t : shp_terms(p + 1, q + 1)) axpy(acc2, 1, apply_term(*oa_, *ob_, t, g));
        if (!np_.quot.at(n + 2).is_zero(acc2)) return fail("sh'");
      }
    }
  }
  return true;
}

// ------------------------------------------------------------------ S-maps

SMap SMap::transpose() const {
  SMap t;
  t.src = dst.transpose();
  t.dst = src.transpose();
  int dir = src.dir;
  t.comps.resize(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (const auto& [n, f] : comps[i]) t.comps[i][n - 2 * static_cast<int>(i) * dir] = f.transpose();
  return t;
}

SMap identity_smap(const MixedComplex& m) {
  SMap f;
  f.src = f.dst = m;
  f.comps.resize(1);
  for (int n = 0; n <= m.cap; ++n) f.comps[0][n] = LinMap::identity(m.space(n));
  return f;
}

SMap sh_tilde(const EzPair& p) {
  SMap f;
  f.src = p.tensor();
  f.dst = p.diag();
  f.comps.resize(2);
  for (int n = 0; n <= p.cap(); ++n) {
    f.comps[0][n] = p.sh(n);
    if (n + 2 <= p.cap()) f.comps[1][n] = p.sh_prime(n);
  }
  return f;
}

SMap aw_two_term(const EzPair& p) {
  SMap f;
  f.src = p.diag();
  f.dst = p.tensor();
  f.comps.resize(2);
  for (int n = 0; n <= p.cap(); ++n) {
    f.comps[0][n] = p.aw(n);
    if (n + 2 <= p.cap()) f.comps[1][n] = p.aw_prime(n);
  }
  return f;
}

SMap aw_tilde(const EzPair& p) {
  SMap f;
  f.src = p.diag();
  f.dst = p.tensor();
  f.comps.resize(p.cap() / 2 + 1);
  for (int k = 0; 2 * k <= p.cap(); ++k)
    for (int n = 0; n + 2 * k <= p.cap(); ++n) f.comps[k][n] = p.aw_series(k, n);
  return f;
}

LinMap smap_tot(const SMap& f, const TotWindow& src, const TotWindow& dst, int n) {
  int dir = f.src.dir;
  const FreeSpace &from = src.tot.space(n), &to = dst.tot.space(n);
  LinMap out(from, to);
  for (int k = 0; n - 2 * k >= 0; ++k) {
    int m = n - 2 * k;
    for (std::size_t i = 0; i < f.comps.size(); ++i) {
      auto it = f.comps[i].find(m);
      if (it == f.comps[i].end()) continue;
      int kk = k + static_cast<int>(i) * dir;
      int mm = m - 2 * static_cast<int>(i) * dir;
      if (kk < 0 || mm < 0 || mm > dst.source.cap) continue;
      out = out + compose(dst.inclusion(n, kk), compose(it->second, src.projection(n, k)));
    }
  }
  return out;
}

SMap compose_smap(const SMap& f, const SMap& g) {
  if (f.src.dir != g.src.dir) throw StructuralError("compose_smap: direction mismatch");
  int dir = f.src.dir;
  SMap h;
  h.src = g.src;
  h.dst = f.dst;
  h.comps.resize(f.comps.size() + g.comps.size() - 1);
  for (std::size_t j = 0; j < g.comps.size(); ++j)
    for (const auto& [n, gj] : g.comps[j]) {
      int m = n - 2 * static_cast<int>(j) * dir;
      for (std::size_t i = 0; i < f.comps.size(); ++i) {
        auto it = f.comps[i].find(m);
        if (it == f.comps[i].end()) continue;
        auto& slot = h.comps[i + j];
        LinMap c = compose(it->second, gj);
        auto s = slot.find(n);
        if (s == slot.end())
          slot.emplace(n, c);
        else
          s->second = s->second + c;
      }
    }
  return h;
}

bool smap_check(const SMap& f, std::string* witness) {
  int dir = f.src.dir;
  int cap = std::min(f.src.cap, f.dst.cap);
  auto fail = [&](const std::string& w) {
    if (witness) *witness = w;
    return false;
  };
  // [B, f_i] + [b, f_{i+1}] = 0 on src_n. A term whose maps leave the window
  // makes the identity unknowable there and the degree is skipped.
  auto comp = [&](int i, int n, bool& known) -> std::optional<LinMap> {
    int t = n - 2 * i * dir;
    if (i >= static_cast<int>(f.comps.size()) || n < 0 || t < 0) return std::nullopt;
    if (n > cap || t > cap) {
      known = false;
      return std::nullopt;
    }
    auto it = f.comps[i].find(n);
    if (it == f.comps[i].end()) {
      known = false;
      return std::nullopt;
    }
    return it->second;
  };
  for (int i = 0; i < static_cast<int>(f.comps.size()); ++i)
    for (int n = 0; n <= cap; ++n) {
      int target = n - 2 * i * dir - dir;
      if (target < 0 || target > cap) continue;
      bool known = true;
      LinMap lhs(f.src.space(n), f.dst.space(target));
      if (auto g = comp(i + 1, n, known)) lhs = lhs + compose(f.dst.b_from(n - 2 * (i + 1) * dir), *g);
      if (n + dir >= 0) {
        if (n + dir > cap) known = false;
        else if (auto g = comp(i + 1, n + dir, known)) lhs = lhs - compose(*g, f.src.b_from(n));
      }
      if (auto g = comp(i, n, known)) lhs = lhs + compose(f.dst.B_from(n - 2 * i * dir), *g);
      if (n - dir >= 0) {
        if (n - dir > cap) known = false;
        else if (auto g = comp(i, n - dir, known)) lhs = lhs - compose(*g, f.src.B_from(n));
      }
      if (known && !lhs.is_zero())
        return fail("component " + std::to_string(i) + " at degree " + std::to_string(n));
    }
  TotWindow ts = tot_window(f.src), td = tot_window(f.dst);
  for (int n = 0; n <= cap; ++n) {
    int t = n + dir;
    if (t < 0 || t > cap) continue;
    LinMap l = compose(td.tot.diff_from(n), smap_tot(f, ts, td, n));
    LinMap r = compose(smap_tot(f, ts, td, t), ts.tot.diff_from(n));
    if (!(l == r)) return fail("Tot differential at degree " + std::to_string(n));
  }
  for (int n = 0; n <= cap; ++n) {
    int t = n + 2 * dir;
    if (t < 0 || t > cap) continue;
    LinMap l = compose(td.S.at(n), smap_tot(f, ts, td, n));
    LinMap r = compose(smap_tot(f, ts, td, t), ts.S.at(n));
    if (!(l == r)) return fail("S at degree " + std::to_string(n));
  }
  return true;
}

// ------------------------------------------------------------ invariants

std::size_t hp_estimate(const MixedComplex& m, int parity) {
  TotWindow tw = tot_window(m);
  int top = -1;
  for (int n = m.cap; n >= 0; --n)
    if (n % 2 == parity && !homology_at(tw.tot, n).tainted) {
      top = n;
      break;
    }
  if (top < 2) throw StructuralError("hp_estimate: window too small for parity " + std::to_string(parity));
  Homology hi = homology_at(tw.tot, top), lo = homology_at(tw.tot, top - 2);
  if (lo.tainted) throw StructuralError("hp_estimate: tainted degree " + std::to_string(top - 2));
  if (m.dir < 0) return rank(induced_map(hi, lo, tw.S.at(top)));
  return rank(induced_map(lo, hi, tw.S.at(top - 2)));
}

Json CyclicInvariants::to_json() const {
  Json hpj = Json::array();
  for (const auto& h : hp)
    hpj.push_back({{"parity", h.parity},
                   {"dim", h.dim},
                   {"stabilized", h.stabilized},
                   {"caps", {h.cap_lo, h.cap_hi}},
                   {"dims", {h.dim_lo, h.dim_hi}}});
  return Json{{"HH", hh.to_json()}, {"HC", hc.to_json()}, {"HP", hpj}};
}

CyclicInvariants hh_hc_hp(const MixedComplex& lo, const MixedComplex& hi) {
  CyclicInvariants r;
  r.hh = homology_report(hi.hochschild_window());
  r.hc = homology_report(tot_window(hi).tot);
  for (int e = 0; e < 2; ++e) {
    HPResult& h = r.hp[e];
    h.parity = e;
    h.cap_lo = lo.cap;
    h.cap_hi = hi.cap;
    h.dim_lo = hp_estimate(lo, e);
    h.dim_hi = hp_estimate(hi, e);
    h.dim = h.dim_hi;
    h.stabilized = h.dim_lo == h.dim_hi;
  }
  return r;
}

CyclicInvariants hh_hc_hp(const CyclicModule& c, bool cohomological) {
  MixedComplex hi = normalize(c).mixed, lo = normalize(truncate(c, c.cap - 2)).mixed;
  if (cohomological) {
    hi = hi.transpose();
    lo = lo.transpose();
  }
  return hh_hc_hp(lo, hi);
}

// ------------------------------------------------------------ tensor windows

namespace {

struct PairLayout {
  FreeSpace space;
  std::vector<int> is;
  std::vector<std::size_t> da, db, off;
  std::ptrdiff_t index(int i) const {
    for (std::size_t k = 0; k < is.size(); ++k)
      if (is[k] == i) return static_cast<std::ptrdiff_t>(k);
    return -1;
  }
};

PairLayout pair_layout(const ComplexWindow& a, const ComplexWindow& b, int n) {
  PairLayout l;
  std::vector<std::pair<long long, FreeSpace>> parts;
  std::vector<std::size_t> dims;
  for (int i = 0; i <= n; ++i) {
    if (!a.has(i) || !b.has(n - i)) continue;
    l.is.push_back(i);
    l.da.push_back(a.space(i).dim());
    l.db.push_back(b.space(n - i).dim());
    dims.push_back(l.da.back() * l.db.back());
    parts.emplace_back(i, FreeSpace::tensor(a.space(i), b.space(n - i)));
  }
  l.space = FreeSpace::direct_sum(parts);
  l.off = direct_sum_offsets(dims);
  return l;
}

ComplexWindow transpose_window(const ComplexWindow& w) {
  ComplexWindow t;
  t.dir = -w.dir;
  t.lo = w.lo;
  t.hi = w.hi;
  t.lo_exact = w.lo_exact;
  t.hi_exact = w.hi_exact;
  t.spaces = w.spaces;
  for (const auto& [n, f] : w.d) t.d[n + w.dir] = f.transpose();
  return t;
}

}  // namespace

LinMap window_pair_inclusion(const ComplexWindow& a, const ComplexWindow& b, int n, int i) {
  PairLayout l = pair_layout(a, b, n);
  auto k = l.index(i);
  if (k < 0) throw StructuralError("no pair summand");
  std::vector<Vec> cols(l.da[k] * l.db[k]);
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = unit_vec(l.off[k] + j);
  return LinMap(FreeSpace::tensor(a.space(i), b.space(n - i)), l.space, std::move(cols));
}

ComplexWindow tensor_windows(const ComplexWindow& a, const ComplexWindow& b, int cap) {
  if (a.dir != b.dir) throw StructuralError("tensor_windows: direction mismatch");
  ComplexWindow w;
  w.dir = a.dir;
  w.lo = 0;
  w.hi = cap;
  w.lo_exact = true;
  w.hi_exact = false;
  std::map<int, PairLayout> lay;
  for (int n = 0; n <= cap; ++n) {
    lay[n] = pair_layout(a, b, n);
    w.spaces[n] = lay[n].space;
  }
  for (int n = 0; n <= cap; ++n) {
    int t = n + w.dir;
    if (t < 0 || t > cap) continue;
    const PairLayout &src = lay[n], &dst = lay[t];
    std::vector<Vec> cols(src.space.dim());
    for (std::size_t k = 0; k < src.is.size(); ++k) {
      int i = src.is[k];
      LinMap da = a.diff_from(i), db = b.diff_from(n - i);
      auto ka = dst.index(i + w.dir), kb = dst.index(i);
      Scalar sg = i % 2 ? -1 : 1;
      for (std::size_t x = 0; x < src.da[k]; ++x)
        for (std::size_t y = 0; y < src.db[k]; ++y) {
          Vec& col = cols[src.off[k] + x * src.db[k] + y];
          if (ka >= 0)
            for (const auto& [x2, c] : da.col(x)) axpy(col, c, unit_vec(dst.off[ka] + x2 * dst.db[ka] + y));
          if (kb >= 0)
            for (const auto& [y2, c] : db.col(y)) axpy(col, sg * c, unit_vec(dst.off[kb] + x * dst.db[kb] + y2));
        }
    }
    w.d[n] = LinMap(src.space, dst.space, std::move(cols));
  }
  return w;
}

// ------------------------------------------------------------ supercomplexes

namespace {

struct FoldLayout {
  FreeSpace space;
  std::vector<int> degs;
  std::vector<std::size_t> off;
  std::ptrdiff_t index(int n) const {
    for (std::size_t k = 0; k < degs.size(); ++k)
      if (degs[k] == n) return static_cast<std::ptrdiff_t>(k);
    return -1;
  }
};

FoldLayout fold_layout(const MixedComplex& m, int e) {
  FoldLayout l;
  std::vector<std::pair<long long, FreeSpace>> parts;
  std::vector<std::size_t> dims;
  for (int n = e; n <= m.cap; n += 2) {
    l.degs.push_back(n);
    dims.push_back(m.space(n).dim());
    parts.emplace_back(n, m.space(n));
  }
  l.space = FreeSpace::direct_sum(parts);
  l.off = direct_sum_offsets(dims);
  return l;
}

void place_block(std::vector<Vec>& cols, std::size_t col_off, std::size_t row_off, const LinMap& f,
                 const Scalar& s = 1) {
  for (std::size_t j = 0; j < f.domain().dim(); ++j)
    for (const auto& [i, c] : f.col(j)) axpy(cols[col_off + j], s * c, unit_vec(row_off + i));
}

LinMap fold_d(const MixedComplex& m, int e) {
  FoldLayout src = fold_layout(m, e), dst = fold_layout(m, 1 - e);
  std::vector<Vec> cols(src.space.dim());
  for (std::size_t k = 0; k < src.degs.size(); ++k) {
    int n = src.degs[k];
    for (const auto* ops : {&m.b, &m.B}) {
      auto it = ops->find(n);
      if (it == ops->end()) continue;
      int t = n + (ops == &m.b ? m.dir : -m.dir);
      auto kk = dst.index(t);
      if (kk >= 0) place_block(cols, src.off[k], dst.off[kk], it->second);
    }
  }
  return LinMap(src.space, dst.space, std::move(cols));
}

}  // namespace

bool Supercomplex::check(std::string* witness) const {
  if (!compose(d1, d0).is_zero()) {
    if (witness) *witness = "d1 d0 != 0";
    return false;
  }
  if (!compose(d0, d1).is_zero()) {
    if (witness) *witness = "d0 d1 != 0";
    return false;
  }
  return true;
}

Supercomplex fold(const MixedComplex& m) {
  Supercomplex s;
  s.v0 = fold_layout(m, 0).space;
  s.v1 = fold_layout(m, 1).space;
  s.d0 = fold_d(m, 0);
  s.d1 = fold_d(m, 1);
  return s;
}

Supercomplex super_tensor(const Supercomplex& v, const Supercomplex& w) {
  FreeSpace a00 = FreeSpace::tensor(v.v0, w.v0), a11 = FreeSpace::tensor(v.v1, w.v1);
  FreeSpace a01 = FreeSpace::tensor(v.v0, w.v1), a10 = FreeSpace::tensor(v.v1, w.v0);
  Supercomplex s;
  s.v0 = FreeSpace::direct_sum({{0, a00}, {1, a11}});
  s.v1 = FreeSpace::direct_sum({{0, a01}, {1, a10}});
  std::vector<std::size_t> dims0{a00.dim(), a11.dim()}, dims1{a01.dim(), a10.dim()};
  LinMap iv0 = LinMap::identity(v.v0), iv1 = LinMap::identity(v.v1);
  LinMap iw0 = LinMap::identity(w.v0), iw1 = LinMap::identity(w.v1);
  s.d0 = block_map(s.v0, dims0, s.v1, dims1,
                   {{{0, 0}, kron(iv0, w.d0)},
                    {{1, 0}, kron(v.d0, iw0)},
                    {{0, 1}, kron(v.d1, iw1)},
                    {{1, 1}, -kron(iv1, w.d1)}});
  s.d1 = block_map(s.v1, dims1, s.v0, dims0,
                   {{{0, 0}, kron(iv0, w.d1)},
                    {{1, 0}, kron(v.d0, iw1)},
                    {{0, 1}, kron(v.d1, iw0)},
                    {{1, 1}, -kron(iv1, w.d0)}});
  return s;
}

// ---------------------------------------------------------------- Kunneth

KunnethMaps kunneth_maps(const MixedComplex& a, const MixedComplex& b) {
  if (a.dir != -1 || b.dir != -1) throw StructuralError("kunneth_maps: chain complexes expected");
  if (a.cap != b.cap) throw StructuralError("kunneth_maps: caps differ");
  int cap = a.cap;
  KunnethMaps k;
  k.a = a;
  k.b = b;
  k.tensor = tensor_mixed(a, b);
  k.ta = tot_window(a);
  k.tb = tot_window(b);
  k.tt = tot_window(k.tensor);
  k.pair = tensor_windows(k.ta.tot, k.tb.tot, cap);

  ComplexWindow& ps = k.pair_shift;
  ps.dir = -1;
  ps.lo = 0;
  ps.hi = cap;
  ps.lo_exact = true;
  ps.hi_exact = false;
  for (int n = 0; n <= cap; ++n) ps.spaces[n] = n >= 2 ? k.pair.space(n - 2) : FreeSpace();
  for (int n = 1; n <= cap; ++n)
    ps.d[n] = n - 2 >= 1 ? k.pair.d.at(n - 2) : LinMap(ps.spaces[n], ps.spaces[n - 1]);

  for (int n = 0; n <= cap; ++n) {
    LinMap in(k.tt.tot.space(n), k.pair.space(n));
    for (int kk = 0; n - 2 * kk >= 0; ++kk) {
      int m = n - 2 * kk;
      LinMap pk = k.tt.projection(n, kk);
      for (int p = 0; p <= m; ++p) {
        int q = m - p;
        LinMap pq = compose(tensor_summand_projection(a, b, p, q), pk);
        for (int u = 0; u <= kk; ++u) {
          int v = kk - u;
          int i = p + 2 * u;
          LinMap up = kron(k.ta.inclusion(i, u), k.tb.inclusion(n - i, v));
          in = in + compose(window_pair_inclusion(k.ta.tot, k.tb.tot, n, i), compose(up, pq));
        }
      }
    }
    k.I[n] = in;

    LinMap sh(k.pair.space(n), ps.spaces[n]);
    if (n >= 2) {
      for (int i = 0; i <= n; ++i) {
        LinMap proj = window_pair_inclusion(k.ta.tot, k.tb.tot, n, i).transpose();
        if (i >= 2)
          sh = sh + compose(window_pair_inclusion(k.ta.tot, k.tb.tot, n - 2, i - 2),
                            compose(kron(k.ta.S.at(i), LinMap::identity(k.tb.tot.space(n - i))), proj));
        if (n - i >= 2)
          sh = sh - compose(window_pair_inclusion(k.ta.tot, k.tb.tot, n - 2, i),
                            compose(kron(LinMap::identity(k.ta.tot.space(i)), k.tb.S.at(n - i)), proj));
      }
    }
    k.shift[n] = sh;
  }

  k.ses.a = k.tt.tot;
  k.ses.b = k.pair;
  k.ses.c = ps;
  k.ses.i = k.I;
  k.ses.p = k.shift;
  check_exact(k.ses);

  k.coses.a = transpose_window(ps);
  k.coses.b = transpose_window(k.pair);
  k.coses.c = transpose_window(k.tt.tot);
  for (int n = 0; n <= cap; ++n) {
    k.coses.i[n] = k.shift.at(n).transpose();
    k.coses.p[n] = k.I.at(n).transpose();
  }
  check_exact(k.coses);
  return k;
}

LinMap KunnethMaps::jay(int n) const { return kunneth_hh(a, b, n); }

LinMap kunneth_hh(const MixedComplex& a, const MixedComplex& b, int n) {
  ComplexWindow ha = a.hochschild_window(), hb = b.hochschild_window();
  Homology target = homology_at(tensor_mixed(a, b).hochschild_window(), n);
  std::vector<std::pair<long long, FreeSpace>> parts;
  std::vector<Vec> cols;
  for (int p = 0; p <= n; ++p) {
    int q = n - p;
    Homology hp = homology_at(ha, p), hq = homology_at(hb, q);
    parts.emplace_back(p, FreeSpace::range(hp.dim * hq.dim));
    LinMap inc = tensor_summand_inclusion(a, b, p, q);
    std::size_t dq = b.space(q).dim();
    for (const auto& x : hp.reps)
      for (const auto& y : hq.reps) cols.push_back(target.classify(inc.apply(kron_vec(x, y, dq))));
  }
  return LinMap(FreeSpace::direct_sum(parts), target.space, std::move(cols));
}

LinMap kunneth_windows(const ComplexWindow& a, const ComplexWindow& b, const ComplexWindow& ab, int n) {
  Homology target = homology_at(ab, n);
  std::vector<std::pair<long long, FreeSpace>> parts;
  std::vector<Vec> cols;
  for (int i = 0; i <= n; ++i) {
    if (!a.has(i) || !b.has(n - i)) continue;
    Homology hi = homology_at(a, i), hj = homology_at(b, n - i);
    parts.emplace_back(i, FreeSpace::range(hi.dim * hj.dim));
    LinMap inc = window_pair_inclusion(a, b, n, i);
    std::size_t dj = b.space(n - i).dim();
    for (const auto& x : hi.reps)
      for (const auto& y : hj.reps) cols.push_back(target.classify(inc.apply(kron_vec(x, y, dj))));
  }
  return LinMap(FreeSpace::direct_sum(parts), target.space, std::move(cols));
}

LinMap KunnethMaps::varsigma(int n) const {
  LinMap d1 = connecting_map(coses, n);
  Homology a1 = homology_at(coses.a, n + 1), b1 = homology_at(coses.b, n + 1), c1 = homology_at(coses.c, n + 1);
  LinMap s = induced_map(a1, b1, coses.i.at(n + 1));
  LinMap mu = induced_map(b1, c1, coses.p.at(n + 1));
  LinMap d2 = connecting_map(coses, n + 1);
  return compose(d2, compose(mu, compose(s, d1)));
}

LesAudit KunnethMaps::les_audit() const {
  LesAudit r;
  int top = a.cap - 1;
  std::vector<Homology> hs;
  std::vector<LinMap> maps;
  for (int n = top; n >= 0; --n) {
    Homology ha = homology_at(ses.a, n), hb = homology_at(ses.b, n), hc = homology_at(ses.c, n);
    std::string d = std::to_string(n);
    r.terms.push_back("HC_" + d + "(C (x) C')");
    r.terms.push_back("H_" + d + "(Tot C (x) Tot C')");
    r.terms.push_back("H_" + std::to_string(n - 2) + "(Tot C (x) Tot C')");
    r.dims.push_back(ha.dim);
    r.dims.push_back(hb.dim);
    r.dims.push_back(hc.dim);
    r.ranks.push_back(rank(induced_map(ha, hb, ses.i.at(n))));
    r.ranks.push_back(rank(induced_map(hb, hc, ses.p.at(n))));
    r.ranks.push_back(n > 0 ? rank(connecting_map(ses, n)) : 0);
  }
  long long alt = 0;
  for (std::size_t k = 0; k < r.dims.size(); ++k) {
    alt += (k % 2 ? -1 : 1) * static_cast<long long>(r.dims[k]);
    if (k > 0 && r.dims[k] - r.ranks[k] != r.ranks[k - 1] && r.exact) {
      r.exact = false;
      r.witness = "not exact at " + r.terms[k];
    }
  }
  r.alternating_sum = alt - static_cast<long long>(r.dims[0] - r.ranks[0]);
  return r;
}

namespace {

// Basis of one parity of fold(a) (x)^ fold(b), with the degrees (i, j) of
// each basis vector.
std::vector<std::pair<int, int>> super_degrees(const MixedComplex& a, const MixedComplex& b, int e) {
  std::vector<std::pair<int, int>> out;
  for (int f : {0, 1}) {
    int ea = f, eb = e == 0 ? f : 1 - f;
    FoldLayout la = fold_layout(a, ea), lb = fold_layout(b, eb);
    for (int i : la.degs)
      for (std::size_t x = 0; x < a.space(i).dim(); ++x)
        for (int j : lb.degs) out.insert(out.end(), b.space(j).dim(), {i, j});
  }
  return out;
}

}  // namespace

LinMap KunnethMaps::nabla(int parity) const {
  FoldLayout dst = fold_layout(tensor, parity);
  std::vector<Vec> cols;
  // summand f of parity e: (f, f) for e = 0, (f, 1 - f) for e = 1
  std::vector<std::pair<long long, FreeSpace>> parts;
  for (int f : {0, 1}) {
    int ea = f, eb = parity == 0 ? f : 1 - f;
    FoldLayout la = fold_layout(a, ea), lb = fold_layout(b, eb);
    parts.emplace_back(f, FreeSpace::tensor(la.space, lb.space));
    std::size_t dlb = lb.space.dim();
    std::vector<Vec> block(la.space.dim() * dlb);
    for (std::size_t ka = 0; ka < la.degs.size(); ++ka)
      for (std::size_t kb = 0; kb < lb.degs.size(); ++kb) {
        int i = la.degs[ka], j = lb.degs[kb];
        if (i + j > tensor.cap) continue;
        LinMap inc = tensor_summand_inclusion(a, b, i, j);
        auto kd = dst.index(i + j);
        std::size_t dj = b.space(j).dim();
        for (std::size_t x = 0; x < a.space(i).dim(); ++x)
          for (std::size_t y = 0; y < dj; ++y) {
            Vec img = inc.apply(unit_vec(x * dj + y));
            Vec& col = block[(la.off[ka] + x) * dlb + lb.off[kb] + y];
            for (const auto& [r, c] : img) axpy(col, c, unit_vec(dst.off[kd] + r));
          }
      }
    for (auto& c : block) cols.push_back(std::move(c));
  }
  return LinMap(FreeSpace::direct_sum(parts), dst.space, std::move(cols));
}

bool KunnethMaps::check_nabla(std::string* witness) const {
  Supercomplex st = super_tensor(fold(a), fold(b)), sc = fold(tensor);
  for (int e = 0; e < 2; ++e) {
    LinMap lhs = compose(e == 0 ? sc.d0 : sc.d1, nabla(e));
    LinMap rhs = compose(nabla(1 - e), e == 0 ? st.d0 : st.d1);
    auto degs = super_degrees(a, b, e);
    for (std::size_t c = 0; c < degs.size(); ++c) {
      auto [i, j] = degs[c];
      if (i + j + 1 > tensor.cap) continue;
      if (!vec_equal(lhs.col(c), rhs.col(c))) {
        if (witness) *witness = "parity " + std::to_string(e) + " at (" + std::to_string(i) + "," + std::to_string(j) + ")";
        return false;
      }
    }
  }
  return true;
}

}  // namespace hopfcup
