#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "hopfcup/cyclic.hpp"

namespace hopfcup {

int perm_sign(const std::vector<int>& p);
std::size_t binomial(int n, int k);

// sigma[k-1] = sigma(k): a permutation of {1..i+j} increasing on 1..i and on
// i+1..i+j.
struct Shuffle {
  std::vector<int> sigma;
  int sign = 1;
};
std::vector<Shuffle> shuffles(int i, int j);

// Index set of sh'_{i,j}: p < i, q < j and sigma(p+1) < sigma(i+q+1).
struct CyclicShuffle {
  Shuffle s;
  int p = 0, q = 0;
};
std::vector<CyclicShuffle> cyclic_shuffles(int i, int j);

// One bilinear term of an Eilenberg-Zilber type operator: x in C_sx goes
// through the word wx and y in C'_sy through wy.
struct EzTerm {
  Scalar coeff;
  int sx = 0, sy = 0;
  Word wx, wy;
  int tx() const { return word_end(sx, wx); }
  int ty() const { return word_end(sy, wy); }
};
std::vector<EzTerm> aw_terms(int n);           // (CxC')_n -> sum_p C_p (x) C'_{n-p}
std::vector<EzTerm> sh_terms(int p, int q);    // C_p (x) C'_q -> (CxC')_{p+q}
std::vector<EzTerm> shp_terms(int i, int j);   // C_{i-1} (x) C'_{j-1} -> (CxC')_{i+j}
std::vector<EzTerm> phi_terms(int n);          // (CxC')_n -> (CxC')_{n+1}

// Chains: v in C_sx (x) C'_sy, result in C_tx (x) C'_ty.
// Cochains: v in C^tx (x) C'^ty, result in C^sx (x) C'^sy.
Vec apply_term(const CyclicOps& a, const CyclicOps& b, const EzTerm& t, const Vec& v);

// Normalized Eilenberg-Zilber operators between the diagonal and the tensor
// product of two chain modules. Tensor degree n is laid out as
// tensor().space(n); cochain versions are the transposes.
class EzPair {
 public:
  EzPair(const CyclicModule& a, const CyclicModule& b);

  int cap() const { return cap_; }
  const NormalizedModule& na() const { return na_; }
  const NormalizedModule& nb() const { return nb_; }
  const NormalizedModule& np() const { return np_; }
  const MixedComplex& diag() const { return np_.mixed; }
  const MixedComplex& tensor() const { return tensor_; }
  const CyclicOps& ops_a() const { return *oa_; }
  const CyclicOps& ops_b() const { return *ob_; }

  LinMap aw(int n) const;        // diag_n -> tensor_n
  LinMap sh(int n) const;        // tensor_n -> diag_n
  LinMap sh_prime(int n) const;  // tensor_n -> diag_{n+2}
  LinMap phi(int n) const;       // diag_n -> diag_{n+1}
  LinMap aw_prime(int n) const;  // -AW B phi : diag_n -> tensor_{n+2}
  // AW (-B phi)^k : diag_n -> tensor_{n+2k}
  LinMap aw_series(int k, int n) const;

  // Unnormalized operators sending degenerate chains to degenerate chains;
  // witness names the operator and degree otherwise.
  bool check_descent(int n, std::string* witness = nullptr) const;

 private:
  LinMap diag_to_tensor(int n, const std::vector<EzTerm>& terms) const;
  LinMap tensor_to_diag(int n, int shift, const std::function<std::vector<EzTerm>(int, int)>& terms) const;
  Vec project_pair(const NormalizedModule& x, const NormalizedModule& y, int p, int q, const Vec& v) const;
  std::size_t tensor_offset(int n, int p) const;

  int cap_;
  NormalizedModule na_, nb_, np_;
  MixedComplex tensor_;
  OpsPtr oa_, ob_;
};

// S-map with components f_i : src_n -> dst_{n - 2 i dir}.
struct SMap {
  MixedComplex src, dst;
  std::vector<std::map<int, LinMap>> comps;
  SMap transpose() const;
};
SMap identity_smap(const MixedComplex& m);
SMap sh_tilde(const EzPair& p);                 // tensor -> diag: (sh, sh')
SMap aw_two_term(const EzPair& p);              // diag -> tensor: (AW, AW')
SMap aw_tilde(const EzPair& p);                 // diag -> tensor: AW (-B phi)^k for all k in the window
LinMap smap_tot(const SMap& f, const TotWindow& src, const TotWindow& dst, int n);
SMap compose_smap(const SMap& f, const SMap& g);  // f o g
// Componentwise [B, f_i] + [b, f_{i+1}] = 0 and commutation with the total
// differential and S on Tot windows.
bool smap_check(const SMap& f, std::string* witness = nullptr);

// HP from a Tot window: rank of S between the two highest untainted degrees
// of the given parity.
std::size_t hp_estimate(const MixedComplex& m, int parity);
struct HPResult {
  int parity = 0;
  std::size_t dim = 0;
  bool stabilized = false;
  int cap_lo = 0, cap_hi = 0;
  std::size_t dim_lo = 0, dim_hi = 0;
};
struct CyclicInvariants {
  HomologyReport hh, hc;
  std::array<HPResult, 2> hp;
  Json to_json() const;
};
// Normalized computation; HP compares the windows at caps cap-2 and cap.
CyclicInvariants hh_hc_hp(const CyclicModule& c, bool cohomological);
CyclicInvariants hh_hc_hp(const MixedComplex& lo, const MixedComplex& hi);

// Tensor product of two complexes in degrees 0..cap with the Koszul sign;
// summand tag i is the degree of the first factor.
ComplexWindow tensor_windows(const ComplexWindow& a, const ComplexWindow& b, int cap);
// Inclusion of the summand a_i (x) b_{n-i} into degree n of tensor_windows.
LinMap window_pair_inclusion(const ComplexWindow& a, const ComplexWindow& b, int n, int i);
// Class-level Kunneth maps sum_i H_i (x) H_{n-i} -> H_n, on rep bases; the
// domain is a direct sum tagged by the first degree.
LinMap kunneth_windows(const ComplexWindow& a, const ComplexWindow& b, const ComplexWindow& ab, int n);
// Same for Hochschild homology of mixed complexes of either direction.
LinMap kunneth_hh(const MixedComplex& a, const MixedComplex& b, int n);

struct Supercomplex {
  FreeSpace v0, v1;
  LinMap d0, d1;  // v0 -> v1, v1 -> v0
  bool check(std::string* witness = nullptr) const;
};
// b + B folded by parity over the window; components leaving it are dropped.
Supercomplex fold(const MixedComplex& m);
Supercomplex super_tensor(const Supercomplex& v, const Supercomplex& w);

struct LesAudit {
  std::vector<std::string> terms;
  std::vector<std::size_t> dims;
  std::vector<std::size_t> ranks;  // rank of the map out of each term
  bool exact = true;
  long long alternating_sum = 0;   // corrected by the rank entering the first term
  std::string witness;
};

struct KunnethMaps {
  MixedComplex a, b, tensor;
  TotWindow ta, tb, tt;
  ComplexWindow pair, pair_shift;
  std::map<int, LinMap> I;      // Tot(C (x) C')_n -> pair_n
  std::map<int, LinMap> shift;  // S (x) id - id (x) S : pair_n -> pair_{n-2}
  ShortExactSequence ses;       // chains: Tot(C (x) C') -> pair -> pair[-2]
  ShortExactSequence coses;     // cochains: pair[+2] -> pair -> Tot(C (x) C')

  // sum_{p+q=n} HH_p (x) HH_q -> HH_n(C (x) C')
  LinMap jay(int n) const;
  // varsigma = d mu (S (x) id - id (x) S) d on cyclic cohomology, degree n.
  LinMap varsigma(int n) const;
  LesAudit les_audit() const;
  // nabla: fold(a) (x)^ fold(b) -> fold(tensor), parity e
  LinMap nabla(int parity) const;
  bool check_nabla(std::string* witness = nullptr) const;
};
// a, b: chain mixed complexes with equal caps.
KunnethMaps kunneth_maps(const MixedComplex& a, const MixedComplex& b);

}  // namespace hopfcup
