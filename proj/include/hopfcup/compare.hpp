#pragma once

#include <string>
#include <vector>

#include "hopfcup/coproducts.hpp"

namespace hopfcup {

// Chevalley-Eilenberg chains Lambda^n g with trivial coefficients, n <= dim g.
// Basis of Lambda^n: increasing generator sequences in lexicographic order.
class ChevalleyComplex {
 public:
  explicit ChevalleyComplex(LieAlgebraData l);

  const LieAlgebraData& lie() const { return l_; }
  int top() const { return static_cast<int>(l_.dim()); }
  const std::vector<std::vector<int>>& monomials(int n) const { return monos_.at(n); }
  // x_{w1} ^ ... ^ x_{wn} in normal order, with sign; zero on repeats.
  Vec wedge(const std::vector<int>& word) const;
  // v ^ x_{w1} ^ ... for v in g.
  Vec wedge_front(const Vec& v, const std::vector<int>& word) const;

  const ComplexWindow& window() const { return w_; }
  const ComplexWindow& tensor() const { return t_; }
  LinMap d(int n) const { return w_.diff_from(n); }
  // cup_Lie : Lambda^n -> tensor().space(n).
  LinMap cup(int n) const;
  bool check_cup_chain_map(std::string* witness = nullptr) const;
  std::vector<std::size_t> homology_dims() const;

 private:
  LieAlgebraData l_;
  std::vector<std::vector<std::vector<int>>> monos_;
  ComplexWindow w_, t_;
};

// A_n : Lambda^n g -> U^{(x) n}, (1/n!) sum_sigma sign(sigma) g_sigma(1) (x) ...
// into degree n of the presentation of the cochains of u (trivial
// coefficients). u must be enveloping_truncated(l, D) with n <= D.
LinMap antisymmetrize(const LieAlgebraData& l, const HopfAlgebra& u, int n);

struct LieDiagramReport {
  std::string lie;
  int degree = 0;
  // sh Omega Delta A = (A (x) A) cup_Lie on every wedge basis element of Lambda^n.
  std::size_t sh_instances = 0, sh_failures = 0;
  std::string sh_witness;
  // sh' Omega Delta A on Lambda^{n+2} against A d_Lie. The two sides live in
  // different degrees, so they are compared through vanishing.
  bool shp_checked = false;
  std::size_t shp_instances = 0, shp_lhs_nonzero = 0, shp_rhs_nonzero = 0;
  std::string shp_witness;

  bool sh_ok() const { return sh_failures == 0; }
  bool shp_match() const { return shp_lhs_nonzero == 0 && shp_rhs_nonzero == 0; }
  Json to_json() const;
};
// u = enveloping_truncated(l, cap); needs n <= cap, and n + 2 <= cap for the
// sh' part (skipped otherwise, or when n + 2 > dim g).
LieDiagramReport lie_diagram_check(const LieAlgebraData& l, int n, int cap);

// Bar complex k[G^n] with d0 dropping g1, d_i multiplying g_i g_{i+1}, d_n
// dropping g_n. Tuples are indexed in base |G|, first entry most significant.
class BarComplex {
 public:
  BarComplex(FiniteGroup g, int cap);

  const FiniteGroup& group() const { return g_; }
  int cap() const { return cap_; }
  Vec face(int n, int i, std::size_t e) const;
  const ComplexWindow& window() const { return w_; }
  const ComplexWindow& tensor() const { return t_; }
  // Deconcatenation C_n -> tensor().space(n).
  LinMap coproduct(int n) const;
  bool check_coproduct_chain_map(std::string* witness = nullptr) const;

 private:
  FiniteGroup g_;
  int cap_;
  ComplexWindow w_, t_;
};

// C~_n(kG) with trivial coefficients against the bar complex, dropping g0.
struct GroupTheta {
  FiniteGroup group;
  HopfAlgebra h;
  HopfCyclicModule chains;
  BarComplex bar;
  std::vector<LinMap> theta, inverse;
};
// Checks bijectivity and every face, table for table; throws StructuralError
// with the witness tuple otherwise.
GroupTheta group_theta(const FiniteGroup& g, int cap);

struct GroupDiagramReport {
  std::string group;
  int degree = 0;
  // (theta (x) theta) AW Omega Delta = cup_Gr theta on every basis tuple.
  std::size_t tuples = 0, failures = 0;
  std::string witness;
  // Components AW (-B phi)^k, k >= 1, of the normalized map start in degree
  // n + 2k; those inside the window are counted when nonzero.
  std::size_t corrections_in_window = 0, corrections_nonzero = 0;
  // Hochschild-level coproduct against cup_Gr on classes.
  bool hh_checked = false, hh_agrees = false;
  std::vector<std::size_t> hh_dims, bar_dims;

  bool ok() const { return failures == 0 && (!hh_checked || hh_agrees); }
  Json to_json() const;
};
GroupDiagramReport group_diagram_check(const FiniteGroup& g, int n, int cap);

// For abelian G: the internal product on C~(kG) through theta is
//   (g1..gp) x (g_{p+1}..g_{p+q}) = sum over (p,q)-shuffles sign * shuffled tuple.
struct InternalFormulaCheck {
  std::size_t instances = 0, failures = 0;
  std::string witness;
};
InternalFormulaCheck check_internal_formula(const GroupTheta& t, int p, int q);

}  // namespace hopfcup
