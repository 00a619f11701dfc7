#pragma once

#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "hopfcup/exactlin.hpp"

namespace hopfcup {

class CapOverflow : public StructuralError {
 public:
  CapOverflow(int degree, int cap)
      : StructuralError("product of degree " + std::to_string(degree) + " exceeds cap " + std::to_string(cap)),
        degree(degree) {}
  int degree;
};

struct FiniteGroup {
  std::vector<std::vector<int>> mul;  // mul[a][b] = ab
  int identity = 0;
  std::vector<int> inv;
  std::vector<std::string> names;

  int order() const { return static_cast<int>(mul.size()); }
  bool abelian() const;

  // Validates the table; throws StructuralError naming the failing axiom.
  static FiniteGroup from_table(std::vector<std::vector<int>> table, std::vector<std::string> names = {});
  static FiniteGroup cyclic(int n);
  static FiniteGroup symmetric3();
  static FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h);
};

using Term2 = std::tuple<std::size_t, std::size_t, Scalar>;  // a (x) b with coefficient

// Structure tables in basis-index form. Every field is plain data so that
// tests can corrupt single entries.
struct HopfAlgebra {
  std::string name;
  FreeSpace carrier;
  std::vector<std::vector<std::optional<Vec>>> mul_table;  // nullopt: beyond truncation
  Vec unit;
  std::vector<std::vector<Term2>> comul_table;
  std::vector<Scalar> counit_table;
  std::vector<Vec> antipode_table;
  std::vector<Vec> antipode_inv_table;
  bool truncated = false;
  std::vector<int> degree;  // per basis element when truncated
  int cap = 0;

  std::size_t dim() const { return carrier.dim(); }
  Vec mul(std::size_t a, std::size_t b) const;  // throws CapOverflow
  Vec mul(const Vec& x, const Vec& y) const;
  bool mul_defined(std::size_t a, std::size_t b) const { return mul_table[a][b].has_value(); }
  Scalar counit(const Vec& x) const;
  Vec antipode(const Vec& x) const;
  Vec antipode_inv(const Vec& x) const;
  // Δ as a vector in H (x) H (index a * dim + b).
  Vec comul(const Vec& x) const;
  Vec comul(std::size_t a) const { return comul(unit_vec(a)); }
  std::optional<std::size_t> unit_index() const;

  LinMap mul_map() const;  // zero columns where undefined
  LinMap comul_map() const;
  LinMap counit_map() const;
  LinMap antipode_map() const;

  bool is_commutative() const;
  bool is_cocommutative() const;
};

struct AxiomResult {
  explicit AxiomResult(std::string n = {}) : name(std::move(n)) {}
  std::string name;
  bool passed = true;
  std::string witness;
  std::size_t skipped = 0;  // instances beyond truncation
};
using AxiomReport = std::vector<AxiomResult>;
bool all_passed(const AxiomReport& r);
Json report_json(const AxiomReport& r);

HopfAlgebra group_algebra(const FiniteGroup& g);
HopfAlgebra tensor_hopf(const HopfAlgebra& h, const HopfAlgebra& k);

struct LieAlgebraData {
  std::vector<std::string> generators;
  // bracket[i][j] = [x_i, x_j] as a vector over generators.
  std::vector<std::vector<Vec>> bracket;

  std::size_t dim() const { return generators.size(); }
  static LieAlgebraData abelian(std::size_t d);
  static LieAlgebraData heisenberg();  // [x,y]=z
  // Throws StructuralError on antisymmetry or Jacobi failure.
  void validate() const;
};

HopfAlgebra enveloping_truncated(const LieAlgebraData& l, int cap);
// Exponent vector of a PBW basis element.
std::vector<int> pbw_exponents(const HopfAlgebra& u, std::size_t index);
std::size_t pbw_index(const HopfAlgebra& u, const std::vector<int>& exponents);
// Normal form of an arbitrary word in the generators.
Vec pbw_word(const HopfAlgebra& u, const LieAlgebraData& l, const std::vector<int>& word);

AxiomReport check_hopf_axioms(const HopfAlgebra& h);

struct Character {
  std::vector<Scalar> values;  // δ on basis
  Scalar operator()(const Vec& x) const;
  LinMap as_map(const HopfAlgebra& h) const;
};
struct GroupLike {
  Vec sigma;
};

Character counit_character(const HopfAlgebra& h);
GroupLike unit_group_like(const HopfAlgebra& h);
bool is_character(const HopfAlgebra& h, const Character& d, std::string* witness = nullptr);
bool is_group_like(const HopfAlgebra& h, const GroupLike& s, std::string* witness = nullptr);
// S~(h) = δ(h(1)) S(h(2)).
Vec twisted_antipode(const HopfAlgebra& h, const Character& d, const Vec& x);
bool check_modular_pair_in_involution(const HopfAlgebra& h, const Character& d, const GroupLike& s,
                                      std::string* witness = nullptr);

}  // namespace hopfcup
