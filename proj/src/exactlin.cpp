#include "hopfcup/exactlin.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hopfcup {

std::string scalar_str(const Scalar& s) {
  return s.get_num().get_str() + "/" + s.get_den().get_str();
}

Scalar parse_scalar(const std::string& text) {
  Scalar s;
  if (s.set_str(text, 10) != 0) throw StructuralError("bad scalar: " + text);
  s.canonicalize();
  return s;
}

Label Label::integer(long long i) {
  Label l;
  l.v_ = i;
  return l;
}

Label Label::sym(std::string s) {
  Label l;
  l.v_ = std::move(s);
  return l;
}

Label Label::tuple(std::vector<Label> items) {
  Label l;
  l.v_ = std::move(items);
  return l;
}

std::strong_ordering Label::operator<=>(const Label& o) const {
  if (v_.index() != o.v_.index()) return v_.index() <=> o.v_.index();
  switch (v_.index()) {
    case 0:
      return as_int() <=> o.as_int();
    case 1: {
      int c = as_sym().compare(o.as_sym());
      return c < 0 ? std::strong_ordering::less
                   : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    default: {
      const auto& a = items();
      const auto& b = o.items();
      std::size_t n = std::min(a.size(), b.size());
      for (std::size_t i = 0; i < n; ++i) {
        auto c = a[i] <=> b[i];
        if (c != 0) return c;
      }
      return a.size() <=> b.size();
    }
  }
}

std::string Label::str() const {
  if (is_int()) return std::to_string(as_int());
  if (is_sym()) return as_sym();
  std::string s = "(";
  for (std::size_t i = 0; i < items().size(); ++i) {
    if (i) s += ",";
    s += items()[i].str();
  }
  return s + ")";
}

Json Label::to_json() const {
  if (is_int()) return as_int();
  if (is_sym()) return as_sym();
  Json a = Json::array();
  for (const auto& x : items()) a.push_back(x.to_json());
  return a;
}

Label Label::from_json(const Json& j) {
  if (j.is_number_integer()) return integer(j.get<long long>());
  if (j.is_string()) return sym(j.get<std::string>());
  if (j.is_array()) {
    std::vector<Label> v;
    for (const auto& x : j) v.push_back(from_json(x));
    return tuple(std::move(v));
  }
  throw StructuralError("label must be integer, string or array");
}

void axpy(Vec& y, const Scalar& a, const Vec& x) {
  if (sgn(a) == 0) return;
  auto hint = y.begin();
  for (const auto& [i, v] : x) {
    hint = y.lower_bound(i);
    if (hint != y.end() && hint->first == i) {
      hint->second += a * v;
      if (sgn(hint->second) == 0) hint = y.erase(hint);
    } else {
      hint = y.emplace_hint(hint, i, a * v);
    }
  }
}

void add_term(MultiVec& t, const std::vector<std::size_t>& key, const Scalar& c) {
  if (sgn(c) == 0) return;
  auto [it, fresh] = t.try_emplace(key, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) t.erase(it);
  }
}

Vec scaled(const Vec& x, const Scalar& a) {
  Vec r;
  if (sgn(a) == 0) return r;
  for (const auto& [i, v] : x) r.emplace_hint(r.end(), i, a * v);
  return r;
}

Vec unit_vec(std::size_t i) { return Vec{{i, Scalar(1)}}; }

Vec kron_vec(const Vec& x, const Vec& y, std::size_t dy) {
  Vec out;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) out[i * dy + j] = a * b;
  return out;
}

bool vec_equal(const Vec& a, const Vec& b) { return a == b; }

// ---------------------------------------------------------------- FreeSpace

FreeSpace::FreeSpace() : impl_(std::make_shared<Impl>()) {}

FreeSpace::FreeSpace(std::vector<Label> labels) {
  std::sort(labels.begin(), labels.end());
  for (std::size_t i = 1; i < labels.size(); ++i)
    if (labels[i] == labels[i - 1]) throw StructuralError("duplicate basis label " + labels[i].str());
  auto p = std::make_shared<Impl>();
  p->labels = std::move(labels);
  impl_ = std::move(p);
}

FreeSpace FreeSpace::ground() { return FreeSpace(std::vector<Label>{Label()}); }

FreeSpace FreeSpace::range(std::size_t n) {
  std::vector<Label> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(Label::integer(static_cast<long long>(i)));
  return FreeSpace(std::move(v));
}

FreeSpace FreeSpace::product(const std::vector<FreeSpace>& factors) {
  std::size_t total = 1;
  for (const auto& f : factors) total *= f.dim();
  std::vector<Label> out;
  out.reserve(total);
  std::vector<std::size_t> idx(factors.size(), 0);
  for (std::size_t c = 0; c < total; ++c) {
    std::vector<Label> items;
    items.reserve(factors.size());
    for (std::size_t k = 0; k < factors.size(); ++k) items.push_back(factors[k].label(idx[k]));
    out.push_back(Label::tuple(std::move(items)));
    for (std::size_t k = factors.size(); k-- > 0;) {
      if (++idx[k] < factors[k].dim()) break;
      idx[k] = 0;
    }
  }
  // Already sorted: mixed radix order of sorted factors.
  auto p = std::make_shared<Impl>();
  p->labels = std::move(out);
  FreeSpace s;
  s.impl_ = std::move(p);
  return s;
}

FreeSpace FreeSpace::tensor(const FreeSpace& a, const FreeSpace& b) { return product({a, b}); }

FreeSpace FreeSpace::direct_sum(const std::vector<std::pair<long long, FreeSpace>>& parts) {
  std::vector<Label> out;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k && parts[k].first <= parts[k - 1].first) throw StructuralError("direct_sum tags must increase");
    for (const auto& l : parts[k].second.labels())
      out.push_back(Label::tuple({Label::integer(parts[k].first), l}));
  }
  auto p = std::make_shared<Impl>();
  p->labels = std::move(out);
  FreeSpace s;
  s.impl_ = std::move(p);
  return s;
}

std::vector<std::size_t> direct_sum_offsets(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> off(dims.size() + 1, 0);
  for (std::size_t k = 0; k < dims.size(); ++k) off[k + 1] = off[k] + dims[k];
  return off;
}

std::optional<std::size_t> FreeSpace::find(const Label& l) const {
  const auto& v = impl_->labels;
  auto it = std::lower_bound(v.begin(), v.end(), l);
  if (it == v.end() || !(*it == l)) return std::nullopt;
  return static_cast<std::size_t>(it - v.begin());
}

std::size_t FreeSpace::index_of(const Label& l) const {
  auto i = find(l);
  if (!i) throw StructuralError("label " + l.str() + " not in space " + describe());
  return *i;
}

bool FreeSpace::operator==(const FreeSpace& o) const {
  return impl_ == o.impl_ || impl_->labels == o.impl_->labels;
}

std::string FreeSpace::describe() const {
  std::ostringstream os;
  os << "<dim " << dim();
  if (dim()) os << ": " << label(0).str() << (dim() > 1 ? ", ..." : "");
  os << ">";
  return os.str();
}

Json FreeSpace::to_json() const {
  Json b = Json::array();
  for (const auto& l : labels()) b.push_back(l.to_json());
  return Json{{"dim", dim()}, {"basis", b}};
}

// ------------------------------------------------------------------- LinMap

LinMap::LinMap(FreeSpace domain, FreeSpace codomain)
    : dom_(std::move(domain)), cod_(std::move(codomain)), cols_(dom_.dim()) {}

LinMap::LinMap(FreeSpace domain, FreeSpace codomain, std::vector<Vec> cols)
    : dom_(std::move(domain)), cod_(std::move(codomain)), cols_(std::move(cols)) {
  if (cols_.size() != dom_.dim()) throw StructuralError("column count does not match domain " + dom_.describe());
  for (auto& c : cols_) {
    for (auto it = c.begin(); it != c.end();) {
      if (it->first >= cod_.dim()) throw StructuralError("row index outside codomain " + cod_.describe());
      if (sgn(it->second) == 0)
        it = c.erase(it);
      else
        ++it;
    }
  }
}

LinMap LinMap::identity(const FreeSpace& v) {
  std::vector<Vec> cols(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) cols[i] = unit_vec(i);
  return LinMap(v, v, std::move(cols));
}

LinMap LinMap::from_rows(const std::vector<std::vector<Scalar>>& rows) {
  std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
  std::vector<Vec> cols(c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw StructuralError("ragged matrix");
    for (std::size_t j = 0; j < c; ++j)
      if (sgn(rows[i][j]) != 0) cols[j][i] = rows[i][j];
  }
  return LinMap(FreeSpace::range(c), FreeSpace::range(r), std::move(cols));
}

Scalar LinMap::entry(std::size_t row, std::size_t col) const {
  const auto& c = cols_.at(col);
  auto it = c.find(row);
  return it == c.end() ? Scalar(0) : it->second;
}

void LinMap::set(std::size_t row, std::size_t col, const Scalar& v) {
  if (row >= cod_.dim()) throw StructuralError("row outside codomain");
  auto& c = cols_.at(col);
  if (sgn(v) == 0)
    c.erase(row);
  else
    c[row] = v;
}

void LinMap::add_to(std::size_t row, std::size_t col, const Scalar& v) {
  set(row, col, entry(row, col) + v);
}

Vec LinMap::apply(const Vec& v) const {
  Vec r;
  for (const auto& [j, a] : v) {
    if (j >= cols_.size()) throw StructuralError("vector index outside domain " + dom_.describe());
    axpy(r, a, cols_[j]);
  }
  return r;
}

LinMap LinMap::transpose() const {
  std::vector<Vec> t(cod_.dim());
  for (std::size_t j = 0; j < cols_.size(); ++j)
    for (const auto& [i, a] : cols_[j]) t[i].emplace_hint(t[i].end(), j, a);
  return LinMap(cod_, dom_, std::move(t));
}

bool LinMap::is_zero() const {
  for (const auto& c : cols_)
    if (!c.empty()) return false;
  return true;
}

std::size_t LinMap::nnz() const {
  std::size_t n = 0;
  for (const auto& c : cols_) n += c.size();
  return n;
}

static void check_same_shape(const LinMap& a, const LinMap& b, const char* op) {
  if (!(a.domain() == b.domain()) || !(a.codomain() == b.codomain()))
    throw StructuralError(std::string(op) + ": shape mismatch " + a.domain().describe() + "->" +
                          a.codomain().describe() + " vs " + b.domain().describe() + "->" +
                          b.codomain().describe());
}

LinMap LinMap::operator+(const LinMap& o) const {
  check_same_shape(*this, o, "add");
  LinMap r = *this;
  for (std::size_t j = 0; j < cols_.size(); ++j) axpy(r.cols_[j], 1, o.cols_[j]);
  return r;
}

LinMap LinMap::operator-(const LinMap& o) const {
  check_same_shape(*this, o, "subtract");
  LinMap r = *this;
  for (std::size_t j = 0; j < cols_.size(); ++j) axpy(r.cols_[j], -1, o.cols_[j]);
  return r;
}

LinMap LinMap::operator-() const { return *this * Scalar(-1); }

LinMap LinMap::operator*(const Scalar& s) const {
  LinMap r(dom_, cod_);
  for (std::size_t j = 0; j < cols_.size(); ++j) r.cols_[j] = scaled(cols_[j], s);
  return r;
}

bool LinMap::operator==(const LinMap& o) const {
  return dom_ == o.dom_ && cod_ == o.cod_ && cols_ == o.cols_;
}

Json LinMap::to_json() const {
  Json e = Json::array();
  for (std::size_t j = 0; j < cols_.size(); ++j)
    for (const auto& [i, a] : cols_[j])
      e.push_back(Json::array({dom_.label(j).to_json(), cod_.label(i).to_json(), scalar_str(a)}));
  return Json{{"domain", dom_.to_json()}, {"codomain", cod_.to_json()}, {"entries", e}};
}

LinMap compose(const LinMap& f, const LinMap& g) {
  if (!(g.codomain() == f.domain()))
    throw StructuralError("compose: codomain " + g.codomain().describe() + " != domain " + f.domain().describe());
  std::vector<Vec> cols(g.domain().dim());
  for (std::size_t j = 0; j < cols.size(); ++j) cols[j] = f.apply(g.col(j));
  return LinMap(g.domain(), f.codomain(), std::move(cols));
}

LinMap kron(const LinMap& f, const LinMap& g) {
  FreeSpace dom = FreeSpace::tensor(f.domain(), g.domain());
  FreeSpace cod = FreeSpace::tensor(f.codomain(), g.codomain());
  std::size_t gd = g.domain().dim(), gc = g.codomain().dim();
  std::vector<Vec> cols(dom.dim());
  for (std::size_t a = 0; a < f.domain().dim(); ++a)
    for (std::size_t b = 0; b < gd; ++b) {
      Vec& c = cols[a * gd + b];
      for (const auto& [i, x] : f.col(a))
        for (const auto& [k, y] : g.col(b)) c.emplace_hint(c.end(), i * gc + k, x * y);
    }
  return LinMap(dom, cod, std::move(cols));
}

LinMap block_map(const FreeSpace& dom, const std::vector<std::size_t>& dom_dims, const FreeSpace& cod,
                 const std::vector<std::size_t>& cod_dims,
                 const std::map<std::pair<std::size_t, std::size_t>, LinMap>& blocks) {
  auto doff = direct_sum_offsets(dom_dims), coff = direct_sum_offsets(cod_dims);
  if (doff.back() != dom.dim() || coff.back() != cod.dim()) throw StructuralError("block_map: summand dims");
  std::vector<Vec> cols(dom.dim());
  for (const auto& [rc, m] : blocks) {
    auto [r, c] = rc;
    if (m.domain().dim() != dom_dims.at(c) || m.codomain().dim() != cod_dims.at(r))
      throw StructuralError("block_map: block shape");
    for (std::size_t j = 0; j < m.domain().dim(); ++j)
      for (const auto& [i, a] : m.col(j)) {
        auto& cell = cols[doff[c] + j][coff[r] + i];
        cell += a;
      }
  }
  for (auto& c : cols)
    for (auto it = c.begin(); it != c.end();) it = sgn(it->second) == 0 ? c.erase(it) : std::next(it);
  return LinMap(dom, cod, std::move(cols));
}

// ---------------------------------------------------------------- SpanBasis

SpanBasis::Reduction SpanBasis::reduce(const Vec& v) const {
  Reduction r{v, {}};
  auto it = r.remainder.begin();
  while (it != r.remainder.end()) {
    auto pr = pivot_row_.find(it->first);
    if (pr == pivot_row_.end()) {
      ++it;
      continue;
    }
    std::size_t p = it->first;
    Scalar c = it->second;
    const Row& row = rows_[pr->second];
    axpy(r.remainder, -c, row.v);
    axpy(r.tag, c, row.tag);
    it = r.remainder.upper_bound(p);
  }
  return r;
}

bool SpanBasis::add(const Vec& v, const Vec& tag, Vec* dependency) {
  Reduction r = reduce(v);
  Vec t = tag;
  axpy(t, -1, r.tag);
  if (r.remainder.empty()) {
    if (dependency) *dependency = std::move(t);
    return false;
  }
  Scalar lead = r.remainder.begin()->second;
  Scalar inv = 1 / lead;
  Row row{scaled(r.remainder, inv), scaled(t, inv)};
  pivot_row_[row.v.begin()->first] = rows_.size();
  rows_.push_back(std::move(row));
  return true;
}

std::vector<std::size_t> SpanBasis::pivots() const {
  std::vector<std::size_t> p;
  for (const auto& [k, _] : pivot_row_) p.push_back(k);
  return p;
}

KernelImage kernel_image(const LinMap& f) {
  KernelImage out;
  SpanBasis sb;
  for (std::size_t j = 0; j < f.domain().dim(); ++j) {
    Vec dep;
    if (sb.add(f.col(j), unit_vec(j), &dep))
      out.image.push_back(f.col(j));
    else
      out.kernel.push_back(std::move(dep));
  }
  return out;
}

std::size_t rank(const LinMap& f) {
  SpanBasis sb;
  for (const auto& c : f.cols()) sb.add(c, {});
  return sb.rank();
}

std::optional<Vec> solve(const LinMap& f, const Vec& y) {
  SpanBasis sb;
  for (std::size_t j = 0; j < f.domain().dim(); ++j) sb.add(f.col(j), unit_vec(j));
  auto r = sb.reduce(y);
  if (!r.remainder.empty()) return std::nullopt;
  return r.tag;
}

// ----------------------------------------------------------------- Subspace

Subspace::Subspace(FreeSpace ambient, std::vector<Vec> basis)
    : ambient_(std::move(ambient)), basis_(std::move(basis)), span_(std::make_shared<SpanBasis>()) {
  space_ = FreeSpace::range(basis_.size());
  for (std::size_t k = 0; k < basis_.size(); ++k)
    if (!span_->add(basis_[k], unit_vec(k))) throw StructuralError("Subspace: dependent basis");
}

LinMap Subspace::inclusion() const { return LinMap(space_, ambient_, basis_); }

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  auto r = span_->reduce(v);
  if (!r.remainder.empty()) return std::nullopt;
  return r.tag;
}

LinMap Subspace::restrict_map(const LinMap& g, const Subspace& target, const std::string& what) const {
  if (!(g.domain() == ambient_) || !(g.codomain() == target.ambient_))
    throw StructuralError("restrict_map: shape mismatch for " + what);
  std::vector<Vec> cols(basis_.size());
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    auto c = target.coordinates(g.apply(basis_[k]));
    if (!c) throw StructuralError(what + " does not preserve the subspace (basis vector " + std::to_string(k) + ")");
    cols[k] = std::move(*c);
  }
  return LinMap(space_, target.space_, std::move(cols));
}

// ----------------------------------------------------------------- Quotient

Quotient::Quotient(FreeSpace ambient, const std::vector<Vec>& rels)
    : ambient_(std::move(ambient)), span_(std::make_shared<SpanBasis>()) {
  for (const auto& r : rels)
    if (span_->add(r, {})) rels_.push_back(r);
  std::vector<bool> piv(ambient_.dim(), false);
  for (auto p : span_->pivots()) piv[p] = true;
  std::vector<Label> labels;
  for (std::size_t i = 0; i < ambient_.dim(); ++i)
    if (!piv[i]) {
      kept_pos_[i] = kept_.size();
      kept_.push_back(i);
      labels.push_back(ambient_.label(i));
    }
  space_ = FreeSpace(std::move(labels));
}

Vec Quotient::project(const Vec& v) const {
  auto r = span_->reduce(v);
  Vec out;
  for (const auto& [i, a] : r.remainder) out.emplace_hint(out.end(), kept_pos_.at(i), a);
  return out;
}

bool Quotient::is_zero(const Vec& v) const { return span_->contains(v); }

LinMap Quotient::projection() const {
  std::vector<Vec> cols(ambient_.dim());
  for (std::size_t j = 0; j < ambient_.dim(); ++j) cols[j] = project(unit_vec(j));
  return LinMap(ambient_, space_, std::move(cols));
}

LinMap Quotient::section() const {
  std::vector<Vec> cols(kept_.size());
  for (std::size_t k = 0; k < kept_.size(); ++k) cols[k] = unit_vec(kept_[k]);
  return LinMap(space_, ambient_, std::move(cols));
}

LinMap Quotient::descend_map(const LinMap& g, const Quotient& target, const std::string& what) const {
  if (!(g.domain() == ambient_) || !(g.codomain() == target.ambient_))
    throw StructuralError("descend_map: shape mismatch for " + what);
  for (std::size_t k = 0; k < rels_.size(); ++k)
    if (!target.is_zero(g.apply(rels_[k])))
      throw StructuralError(what + " does not descend to the quotient (relation " + std::to_string(k) + ")");
  std::vector<Vec> cols(kept_.size());
  for (std::size_t k = 0; k < kept_.size(); ++k) cols[k] = target.project(g.col(kept_[k]));
  return LinMap(space_, target.space_, std::move(cols));
}

// ------------------------------------------------------------ ComplexWindow

const FreeSpace& ComplexWindow::space(int n) const {
  auto it = spaces.find(n);
  if (it == spaces.end()) throw StructuralError("degree " + std::to_string(n) + " outside window");
  return it->second;
}

LinMap ComplexWindow::diff_from(int n) const {
  auto it = d.find(n);
  if (it != d.end()) return it->second;
  static const FreeSpace zero;
  const FreeSpace& src = has(n) ? space(n) : zero;
  const FreeSpace& dst = has(n + dir) ? space(n + dir) : zero;
  return LinMap(src, dst);
}

bool ComplexWindow::check_d_squared(std::string* witness) const {
  for (int n = lo; n <= hi; ++n) {
    if (!has(n + dir) || !has(n + 2 * dir)) continue;
    if (!compose(diff_from(n + dir), diff_from(n)).is_zero()) {
      if (witness) *witness = "d o d != 0 out of degree " + std::to_string(n);
      return false;
    }
  }
  return true;
}

Vec Homology::classify(const Vec& cycle) const {
  if (!d_out.apply(cycle).empty())
    throw StructuralError("classify: vector is not a cycle in degree " + std::to_string(degree));
  auto r = classifier->reduce(cycle);
  if (!r.remainder.empty()) throw StructuralError("classify: cycle outside cycles span");
  return r.tag;
}

bool Homology::is_boundary(const Vec& v) const {
  if (!d_out.apply(v).empty()) return false;
  auto r = classifier->reduce(v);
  return r.remainder.empty() && r.tag.empty();
}

Homology homology_at(const ComplexWindow& c, int n) {
  Homology h;
  h.degree = n;
  bool in_edge = (n - c.dir < c.lo || n - c.dir > c.hi);  // incoming differential's source
  bool out_edge = (n + c.dir < c.lo || n + c.dir > c.hi);
  auto edge_true = [&](int m) { return (m < c.lo && c.lo_exact) || (m > c.hi && c.hi_exact); };
  h.tainted = (in_edge && !edge_true(n - c.dir)) || (out_edge && !edge_true(n + c.dir));
  h.d_out = c.diff_from(n);
  LinMap d_in = c.diff_from(n - c.dir);
  auto ki = kernel_image(h.d_out);
  auto cl = std::make_shared<SpanBasis>();
  for (const auto& col : d_in.cols()) cl->add(col, {});
  for (const auto& z : ki.kernel) {
    if (cl->add(z, unit_vec(h.reps.size()))) h.reps.push_back(z);
  }
  h.dim = h.reps.size();
  h.space = FreeSpace::range(h.dim);
  h.classifier = cl;
  return h;
}

Json vec_to_json(const FreeSpace& s, const Vec& v) {
  Json a = Json::array();
  for (const auto& [i, x] : v) a.push_back(Json::array({s.label(i).to_json(), scalar_str(x)}));
  return a;
}

Json HomologyReport::to_json() const {
  Json j = Json::object();
  for (const auto& [n, h] : degrees) j[std::to_string(n)] = Json{{"dim", h.dim}, {"edge_tainted", h.tainted}};
  return j;
}

HomologyReport homology_report(const ComplexWindow& c) {
  HomologyReport r;
  for (int n = c.lo; n <= c.hi; ++n) r.degrees[n] = homology_at(c, n);
  return r;
}

// --------------------------------------------------------- connecting map

void check_exact(const ShortExactSequence& s) {
  for (int n = s.b.lo; n <= s.b.hi; ++n) {
    const auto& i = s.i.at(n);
    const auto& p = s.p.at(n);
    std::string deg = " at degree " + std::to_string(n);
    if (!(i.domain() == s.a.space(n)) || !(i.codomain() == s.b.space(n)) || !(p.domain() == s.b.space(n)) ||
        !(p.codomain() == s.c.space(n)))
      throw StructuralError("short exact sequence: shape mismatch" + deg);
    if (rank(i) != i.domain().dim()) throw StructuralError("short exact sequence: first map not injective" + deg);
    if (rank(p) != p.codomain().dim()) throw StructuralError("short exact sequence: second map not surjective" + deg);
    if (!compose(p, i).is_zero()) throw StructuralError("short exact sequence: composite nonzero" + deg);
    if (s.b.space(n).dim() != s.a.space(n).dim() + s.c.space(n).dim())
      throw StructuralError("short exact sequence: not exact in the middle" + deg);
    int m = n + s.b.dir;
    if (s.b.has(m)) {
      if (!(compose(s.b.diff_from(n), i) == compose(s.i.at(m), s.a.diff_from(n))))
        throw StructuralError("short exact sequence: first map is not a chain map" + deg);
      if (!(compose(s.c.diff_from(n), p) == compose(s.p.at(m), s.b.diff_from(n))))
        throw StructuralError("short exact sequence: second map is not a chain map" + deg);
    }
  }
}

LinMap connecting_map_with(const ShortExactSequence& s, int n, int strategy) {
  int m = n + s.b.dir;
  if (!s.b.has(n) || !s.b.has(m)) throw StructuralError("connecting map: degree outside window");
  Homology hc = homology_at(s.c, n);
  Homology ha = homology_at(s.a, m);
  const LinMap& p = s.p.at(n);
  const LinMap& i_m = s.i.at(m);
  std::vector<Vec> cols(hc.dim);
  for (std::size_t k = 0; k < hc.dim; ++k) {
    Vec c = hc.reps[k];
    if (strategy == 1) {
      // Different cycle representative and a different lift.
      LinMap d_in = s.c.diff_from(n - s.c.dir);
      for (const auto& col : d_in.cols()) axpy(c, 1, col);
    }
    auto b = solve(p, c);
    if (!b) throw StructuralError("connecting map: no preimage at degree " + std::to_string(n));
    if (strategy == 1) {
      Vec all;
      for (std::size_t j = 0; j < s.a.space(n).dim(); ++j) all[j] = 1;
      axpy(*b, 1, s.i.at(n).apply(all));
    }
    Vec db = s.b.diff_from(n).apply(*b);
    auto a = solve(i_m, db);
    if (!a) throw StructuralError("connecting map: boundary does not pull back at degree " + std::to_string(n));
    cols[k] = ha.classify(*a);
  }
  return LinMap(hc.space, ha.space, std::move(cols));
}

LinMap induced_map(const Homology& src, const Homology& dst, const LinMap& f) {
  std::vector<Vec> cols(src.reps.size());
  for (std::size_t k = 0; k < cols.size(); ++k) cols[k] = dst.classify(f.apply(src.reps[k]));
  return LinMap(src.space, dst.space, std::move(cols));
}

LinMap connecting_map(const ShortExactSequence& s, int n) {
  LinMap m0 = connecting_map_with(s, n, 0);
  LinMap m1 = connecting_map_with(s, n, 1);
  if (!(m0 == m1)) throw StructuralError("connecting map depends on choices at degree " + std::to_string(n));
  return m0;
}

}  // namespace hopfcup
