#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace hopfcup {

using Scalar = mpq_class;
using Json = nlohmann::json;

// Thrown whenever inputs do not fit together (dimension mismatch, broken
// exactness, a structure map that fails to descend, ...).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string scalar_str(const Scalar& s);  // "num/den"
Scalar parse_scalar(const std::string& text);

// Finite tree of atoms. Ordering: integers < symbols < tuples, then
// natural order within a kind, tuples lexicographically.
class Label {
 public:
  Label() : v_(std::vector<Label>{}) {}
  static Label integer(long long i);
  static Label sym(std::string s);
  static Label tuple(std::vector<Label> items);

  bool is_int() const { return v_.index() == 0; }
  bool is_sym() const { return v_.index() == 1; }
  bool is_tuple() const { return v_.index() == 2; }
  long long as_int() const { return std::get<0>(v_); }
  const std::string& as_sym() const { return std::get<1>(v_); }
  const std::vector<Label>& items() const { return std::get<2>(v_); }

  std::strong_ordering operator<=>(const Label& o) const;
  bool operator==(const Label& o) const { return (*this <=> o) == 0; }

  std::string str() const;
  Json to_json() const;
  static Label from_json(const Json& j);

 private:
  std::variant<long long, std::string, std::vector<Label>> v_;
};

// Sparse vector: coordinate index -> nonzero scalar.
using Vec = std::map<std::size_t, Scalar>;

void axpy(Vec& y, const Scalar& a, const Vec& x);  // y += a x

// Element of an iterated tensor product keyed by basis-index tuples.
using MultiVec = std::map<std::vector<std::size_t>, Scalar>;
void add_term(MultiVec& t, const std::vector<std::size_t>& key, const Scalar& c);
Vec scaled(const Vec& x, const Scalar& a);
Vec unit_vec(std::size_t i);
// x (x) y with index i * dy + j.
Vec kron_vec(const Vec& x, const Vec& y, std::size_t dy);
bool vec_equal(const Vec& a, const Vec& b);

// Vector space with a canonical ordered basis of labels.
class FreeSpace {
 public:
  FreeSpace();  // zero space
  explicit FreeSpace(std::vector<Label> labels);  // sorts, rejects duplicates

  static FreeSpace ground();  // k, basis {()}
  static FreeSpace range(std::size_t n);  // labels 0..n-1
  // Flat tensor product: labels (a, b, c, ...), index is mixed radix.
  static FreeSpace product(const std::vector<FreeSpace>& factors);
  static FreeSpace tensor(const FreeSpace& a, const FreeSpace& b);
  // Direct sum with summand tags: labels (tag_k, label).
  static FreeSpace direct_sum(const std::vector<std::pair<long long, FreeSpace>>& parts);

  std::size_t dim() const { return impl_->labels.size(); }
  const Label& label(std::size_t i) const { return impl_->labels.at(i); }
  const std::vector<Label>& labels() const { return impl_->labels; }
  std::optional<std::size_t> find(const Label& l) const;
  std::size_t index_of(const Label& l) const;  // throws if absent

  bool operator==(const FreeSpace& o) const;
  std::string describe() const;
  Json to_json() const;

 private:
  struct Impl {
    std::vector<Label> labels;
  };
  std::shared_ptr<const Impl> impl_;
};

// Index helpers for FreeSpace::direct_sum.
std::vector<std::size_t> direct_sum_offsets(const std::vector<std::size_t>& dims);

class LinMap {
 public:
  LinMap() = default;
  LinMap(FreeSpace domain, FreeSpace codomain);  // zero map
  LinMap(FreeSpace domain, FreeSpace codomain, std::vector<Vec> cols);

  static LinMap identity(const FreeSpace& v);
  static LinMap zero(const FreeSpace& d, const FreeSpace& c) { return LinMap(d, c); }
  // Dense rows x cols matrix on range spaces.
  static LinMap from_rows(const std::vector<std::vector<Scalar>>& rows);

  const FreeSpace& domain() const { return dom_; }
  const FreeSpace& codomain() const { return cod_; }
  const Vec& col(std::size_t j) const { return cols_.at(j); }
  const std::vector<Vec>& cols() const { return cols_; }
  Scalar entry(std::size_t row, std::size_t col) const;
  void set(std::size_t row, std::size_t col, const Scalar& v);
  void add_to(std::size_t row, std::size_t col, const Scalar& v);

  Vec apply(const Vec& v) const;
  LinMap transpose() const;
  bool is_zero() const;
  std::size_t nnz() const;

  LinMap operator+(const LinMap& o) const;
  LinMap operator-(const LinMap& o) const;
  LinMap operator-() const;
  LinMap operator*(const Scalar& s) const;
  bool operator==(const LinMap& o) const;

  Json to_json() const;

 private:
  FreeSpace dom_, cod_;
  std::vector<Vec> cols_;
};

LinMap compose(const LinMap& f, const LinMap& g);  // f o g
LinMap kron(const LinMap& f, const LinMap& g);     // on FreeSpace::tensor
// Block map between direct sums; blocks[(r,c)] maps summand c to summand r.
LinMap block_map(const FreeSpace& dom, const std::vector<std::size_t>& dom_dims,
                 const FreeSpace& cod, const std::vector<std::size_t>& cod_dims,
                 const std::map<std::pair<std::size_t, std::size_t>, LinMap>& blocks);

// Semi-echelon basis of a span with per-row bookkeeping ("tags") recording
// which combination of inserted vectors each row is.
class SpanBasis {
 public:
  struct Reduction {
    Vec remainder;
    Vec tag;  // combination of inserted tags that was subtracted
  };
  Reduction reduce(const Vec& v) const;
  // Returns true when v was independent of the current span.
  bool add(const Vec& v, const Vec& tag, Vec* dependency = nullptr);
  std::size_t rank() const { return rows_.size(); }
  bool contains(const Vec& v) const { return reduce(v).remainder.empty(); }
  std::vector<std::size_t> pivots() const;

 private:
  struct Row {
    Vec v;
    Vec tag;
  };
  std::vector<Row> rows_;
  std::map<std::size_t, std::size_t> pivot_row_;
};

struct KernelImage {
  std::vector<Vec> kernel;  // in domain coordinates
  std::vector<Vec> image;   // in codomain coordinates, independent
};
KernelImage kernel_image(const LinMap& f);
std::size_t rank(const LinMap& f);
// x with f(x) = y, if any.
std::optional<Vec> solve(const LinMap& f, const Vec& y);

// Subspace of `ambient` given by a basis; provides coordinates.
class Subspace {
 public:
  Subspace() = default;
  Subspace(FreeSpace ambient, std::vector<Vec> basis);
  const FreeSpace& ambient() const { return ambient_; }
  const FreeSpace& space() const { return space_; }
  const std::vector<Vec>& basis() const { return basis_; }
  LinMap inclusion() const;
  std::optional<Vec> coordinates(const Vec& v) const;
  // g restricted to this subspace, landing in `target`; throws if g does not
  // map into it.
  LinMap restrict_map(const LinMap& g, const Subspace& target, const std::string& what) const;

 private:
  FreeSpace ambient_, space_;
  std::vector<Vec> basis_;
  std::shared_ptr<SpanBasis> span_;
};

// Quotient ambient / span(rels), with complement spanned by non-pivot basis
// vectors.
class Quotient {
 public:
  Quotient() = default;
  Quotient(FreeSpace ambient, const std::vector<Vec>& rels);
  const FreeSpace& ambient() const { return ambient_; }
  const FreeSpace& space() const { return space_; }
  LinMap projection() const;
  LinMap section() const;
  Vec project(const Vec& v) const;
  bool is_zero(const Vec& v) const;
  // Induced map; verifies that g sends relations to relations of target.
  LinMap descend_map(const LinMap& g, const Quotient& target, const std::string& what) const;
  const std::vector<Vec>& relations() const { return rels_; }

 private:
  FreeSpace ambient_, space_;
  std::vector<Vec> rels_;
  std::shared_ptr<SpanBasis> span_;
  std::vector<std::size_t> kept_;      // ambient indices of complement basis
  std::map<std::size_t, std::size_t> kept_pos_;
};

struct ComplexWindow {
  int dir = -1;  // -1 homological, +1 cohomological
  int lo = 0, hi = 0;
  bool lo_exact = true;   // complex vanishes below lo
  bool hi_exact = false;  // complex vanishes above hi
  std::map<int, FreeSpace> spaces;
  std::map<int, LinMap> d;  // d[n]: spaces[n] -> spaces[n + dir]

  const FreeSpace& space(int n) const;
  bool has(int n) const { return n >= lo && n <= hi; }
  // Differential out of degree n, zero map when the target is outside.
  LinMap diff_from(int n) const;
  bool check_d_squared(std::string* witness = nullptr) const;
};

struct Homology {
  int degree = 0;
  std::size_t dim = 0;
  std::vector<Vec> reps;
  bool tainted = false;
  FreeSpace space;  // labels 0..dim-1
  // Coordinates of a cycle in the rep basis; throws on a non-cycle.
  Vec classify(const Vec& cycle) const;
  bool is_boundary(const Vec& v) const;

  std::shared_ptr<SpanBasis> classifier;
  LinMap d_out;
};

Homology homology_at(const ComplexWindow& c, int n);
// Map on homology induced by a chain-level map between the underlying spaces.
LinMap induced_map(const Homology& src, const Homology& dst, const LinMap& f);

struct HomologyReport {
  std::map<int, Homology> degrees;
  Json to_json() const;
};
HomologyReport homology_report(const ComplexWindow& c);

struct ShortExactSequence {
  ComplexWindow a, b, c;
  std::map<int, LinMap> i;  // a_n -> b_n
  std::map<int, LinMap> p;  // b_n -> c_n
};
// Degreewise exactness and chain-map checks; throws StructuralError.
void check_exact(const ShortExactSequence& ses);
// H_n(c) -> H_{n+dir}(a). Cross-checked against a second lifting strategy.
LinMap connecting_map(const ShortExactSequence& ses, int n);
LinMap connecting_map_with(const ShortExactSequence& ses, int n, int strategy);

Json vec_to_json(const FreeSpace& s, const Vec& v);

}  // namespace hopfcup
