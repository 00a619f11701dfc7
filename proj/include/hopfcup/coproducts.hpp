#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "hopfcup/ez.hpp"
#include "hopfcup/hopfcyclic.hpp"

namespace hopfcup {

// Class-level map out of one degree (or parity), with the chain-level map it
// was computed from. `classes` lands in a direct sum tagged by the first
// bidegree entry; each summand is H (x) H' on rep bases, index i * dim' + j.
struct CoproductResult {
  std::string kind;
  int degree = 0;
  std::vector<std::pair<int, int>> bidegrees;
  LinMap classes;
  LinMap chain;
  bool chain_map = false;
  bool rep_independent = false;
  bool inconclusive = false;
  std::string witness;

  bool ok() const { return chain_map && rep_independent && !inconclusive; }
  // Block of `classes` for the summand tagged p.
  LinMap component(int p) const;
  Json to_json() const;
};

// rho = Omega Phi on the presentation M (x) H^n of the cochain module:
//   m (x) h1 .. hn -> psi(m) (x) Delta h1 (x) ... (x) Delta hn,
// split into C^n (x) C^n with index x * dim + y.
class PhiRho {
 public:
  // Rejects non-cocommutative H and psi failing the coaction gate.
  PhiRho(const HopfAlgebra& h, const SAYDModule& m, const PsiMap& psi, int cap);

  const CyclicOps& ops() const { return *ops_; }
  OpsPtr ops_ptr() const { return ops_; }
  int cap() const { return cap_; }
  Vec apply(int n, const Vec& v) const;
  LinMap map(int n) const;
  // rho against every coface, codegeneracy and tau.
  AxiomReport check() const;

 private:
  HopfAlgebra h_;
  SAYDModule m_;
  PsiMap psi_;
  int cap_;
  OpsPtr ops_;
};

// Both sides of Sh rho on the basis tensor e of C^n, as vectors in
// sum_p C^p (x) C^{n-p} (summand tag p).
struct ShuffleFormulaCheck {
  std::size_t instances = 0;
  bool passed = true;
  std::string witness;
};
// For one-dimensional M: the generic pipeline against
//   sum_sigma sign(sigma) (h_sigma(1) .. h_sigma(p)) (x) (h_sigma(p+1) .. h_sigma(n))
// on every basis tensor up to the cap.
ShuffleFormulaCheck check_shuffle_formula(const PhiRho& rho);

// Coproducts on Hopf cyclic cohomology.
class CochainCoproduct {
 public:
  CochainCoproduct(const HopfAlgebra& h, const SAYDModule& m, const PsiMap& psi, int cap);

  const PhiRho& phi_rho() const { return rho_; }
  const EzPair& ez() const { return *ez_; }
  const MixedComplex& source() const { return src_; }   // normalized cochains
  const MixedComplex& tensor() const { return tensor_; }
  // N^n -> D^n on normalized cochains.
  LinMap rho_bar(int n) const;
  // Sh rho on normalized cochains: N^n -> sum_p N^p (x) N^{n-p}.
  LinMap sh_rho(int n) const;

  CoproductResult hh(int n) const;
  CoproductResult hc(int n) const;
  CoproductResult hp(int parity) const;

 private:
  PhiRho rho_;
  CyclicModule chains_;
  std::unique_ptr<EzPair> ez_;
  MixedComplex src_, diag_, tensor_;
};

CoproductResult hh_coproduct(const HopfAlgebra& h, const SAYDModule& m, const PsiMap& psi, int n, int cap);
CoproductResult hc_coproduct(const HopfAlgebra& h, const SAYDModule& m, const PsiMap& psi, int n, int cap);
CoproductResult hp_coproduct(const HopfAlgebra& h, const SAYDModule& m, const PsiMap& psi, int parity, int cap);

// Graded coalgebra axioms for a family of class-level coproducts
// cop(n) : H^n -> sum_p H^p (x) H^{n-p}. dims(n) = dim H^n.
struct CoalgebraCheck {
  bool coassociative = true;
  bool cocommutative = true;
  std::string witness;
};
CoalgebraCheck check_coalgebra(const std::function<LinMap(int)>& cop, const std::function<std::size_t(int)>& dims,
                               int top);

// Coproducts on Hopf cyclic homology of C~(H, M), M left-left.
class ChainCoproduct {
 public:
  // Rejects non-cocommutative H and psi failing the action gate.
  ChainCoproduct(const HopfAlgebra& h, const SAYDModule& m, const PsiMap& psi, int cap);

  const HopfCyclicModule& module() const { return hc_; }
  const EzPair& ez() const { return *ez_; }
  // C~_n -> (C~ x C~)_n, unnormalized.
  LinMap rho(int n) const;
  LinMap rho_bar(int n) const;
  AxiomReport check_rho() const;

  CoproductResult hh(int n) const;
  CoproductResult hc(int n) const;

 private:
  HopfAlgebra h_;
  SAYDModule m_;
  PsiMap psi_;
  HopfCyclicModule hc_;
  std::unique_ptr<EzPair> ez_;
  mutable std::mutex mu_;
  mutable std::map<int, LinMap> rho_memo_;
};

struct HomologyCoproducts {
  CoproductResult hh, hc;
  AxiomReport rho;
};
HomologyCoproducts homology_coproducts(const HopfAlgebra& h, const SAYDModule& m, const PsiMap& psi, int n,
                                       int cap);

// Cross and star products for two chain modules, on the normalized diagonal.
class CupProducts {
 public:
  CupProducts(const CyclicModule& a, const CyclicModule& b);

  const EzPair& ez() const { return ez_; }
  const TotWindow& tot_a() const { return ta_; }
  const TotWindow& tot_b() const { return tb_; }
  const TotWindow& tot_diag() const { return td_; }

  // x in N_p, y in N'_q -> diag_{p+q}.
  Vec cross(int p, int q, const Vec& x, const Vec& y) const;
  // x in Tot_p, y in Tot'_q -> (B x_p x y_q, B x_p x y_{q-2}, ...) in Tot_{p+q+1}(diag).
  Vec star(int p, int q, const Vec& x, const Vec& y) const;
  // HH_p (x) HH_q -> HH_{p+q}(diag), HC_p (x) HC_q -> HC_{p+q+1}(diag) on rep bases.
  LinMap cross_hh(int p, int q) const;
  LinMap star_hc(int p, int q) const;

  // B(x x By) = Bx x By on every basis pair of N_p, N'_q.
  bool check_b_cross(int p, int q, std::string* witness = nullptr) const;
  // b(Bx_p x y_q) + B(Bx_p x y_{q-2}) against
  // B(b x_p + B x_{p-2}) x y_q + (-1)^p Bx_p x (b y_q + B y_{q-2}) on basis
  // instances. sign is +1 or -1 when exactly one of lhs = +-rhs holds on all
  // of them, 0 otherwise (witness set when neither does).
  struct RabtCheck {
    std::size_t instances = 0, nonzero = 0;
    int sign = 0;
    std::string witness;
  };
  RabtCheck rabt_sign(int p, int q) const;
  // x x' y and x' x y for the normalized sh' vanish.
  bool check_sh_prime_vanishes(int p, int q, std::string* witness = nullptr) const;

 private:
  const LinMap& sh_at(int n) const;
  EzPair ez_;
  TotWindow ta_, tb_, td_;
  mutable std::mutex mu_;
  mutable std::map<int, LinMap> sh_memo_;
};

// Normalized diag(b, a)_n -> diag(a, b)_n, x (x) y -> y (x) x.
LinMap flip_diag(const EzPair& ba, const EzPair& ab, int n);

// x star y = s (y star x) on classes: s = (-1)^{(p+1)(q+1)} is tested; the
// result lists the pairs of rep indices that fail.
struct StarCommutativity {
  std::size_t pairs = 0;
  bool passed = true;
  std::string witness;
};
StarCommutativity check_star_commutative(const CupProducts& ab, const CupProducts& ba, int p, int q);

// The Kunneth connecting map against star, on pairs of rep classes.
struct StarConnecting {
  std::size_t pairs = 0, nonzero_images = 0;
  int sign = 0;  // +1 or -1 if one sign works on every pair, 0 otherwise
  std::string witness;
};
StarConnecting check_star_connecting(const CupProducts& prod, const KunnethMaps& k, int p, int q);

// Internal product for commutative H with trivial coefficients: shuffle,
// then multiply legwise. Unnormalized kernel coordinates.
Vec internal_cross(const HopfAlgebra& h, const HopfCyclicModule& c, int p, int q, const Vec& x, const Vec& y);
// x y - (-1)^{pq} y x is a boundary for all cycle pairs of the normalized
// complex in degrees p, q.
bool check_internal_commutative(const HopfAlgebra& h, const HopfCyclicModule& c, int p, int q,
                                std::string* witness = nullptr);
// HH~_p(H, M) (x) HH~_q(K, N) -> HH~_{p+q}(H (x) K, M (x) N) through sh and
// the inverse Omega.
LinMap cross_product(const HopfAlgebra& h, const SAYDModule& m, const HopfAlgebra& k, const SAYDModule& n, int p,
                     int q, int cap);

}  // namespace hopfcup
