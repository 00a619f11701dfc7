#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "hopfcup/hopf.hpp"

namespace hopfcup {

// Homological cyclic module truncated at degree `cap`.
//   faces[n][i]  : C_n -> C_{n-1}, 1 <= n <= cap, 0 <= i <= n
//   degens[n][i] : C_n -> C_{n+1}, 0 <= n < cap, 0 <= i <= n
//   cyc[n]       : t_n on C_n
struct CyclicModule {
  std::string name;
  int cap = 0;
  std::vector<FreeSpace> spaces;
  std::vector<std::vector<LinMap>> faces;
  std::vector<std::vector<LinMap>> degens;
  std::vector<LinMap> cyc;

  const FreeSpace& space(int n) const { return spaces.at(n); }
  const LinMap& d(int n, int i) const { return faces.at(n).at(i); }
  const LinMap& s(int n, int i) const { return degens.at(n).at(i); }
  const LinMap& t(int n) const { return cyc.at(n); }
};

// Cosimplicial mirror.
//   cofaces[n][i]  : C^{n-1} -> C^n, 1 <= n <= cap, 0 <= i <= n
//   codegens[n][i] : C^{n+1} -> C^n, 0 <= n < cap, 0 <= i <= n
struct CocyclicModule {
  std::string name;
  int cap = 0;
  std::vector<FreeSpace> spaces;
  std::vector<std::vector<LinMap>> cofaces;
  std::vector<std::vector<LinMap>> codegens;
  std::vector<LinMap> cyc;

  const FreeSpace& space(int n) const { return spaces.at(n); }
  // Transposed operators; every cohomological construction goes through this.
  CyclicModule dual() const;
  static CocyclicModule from_dual(const CyclicModule& c);
};

AxiomReport check_cyclic_identities(const CyclicModule& c);
AxiomReport check_cocyclic_identities(const CocyclicModule& c);

// k in every degree, all operators the identity.
CyclicModule one_point_module(int cap);
CyclicModule truncate(const CyclicModule& c, int cap);

LinMap hochschild_b(const CyclicModule& c, int n);   // C_n -> C_{n-1}; zero target at n = 0
LinMap lambda_map(const CyclicModule& c, int n);     // (-1)^n t_n
LinMap norm_map(const CyclicModule& c, int n);       // sum of lambda^k
LinMap extra_degeneracy(const CyclicModule& c, int n);  // t_{n+1} s_n : C_n -> C_{n+1}
LinMap connes_B(const CyclicModule& c, int n);       // (1 - lambda) s_{-1} N : C_n -> C_{n+1}

// Mixed complex in degrees 0..cap. dir = -1: b lowers, B raises; dir = +1
// the other way around. b[n], B[n] are keyed by source degree; maps whose
// target leaves the window are absent.
struct MixedComplex {
  int dir = -1;
  int cap = 0;
  std::vector<FreeSpace> spaces;
  std::map<int, LinMap> b, B;

  const FreeSpace& space(int n) const { return spaces.at(n); }
  LinMap b_from(int n) const;  // zero map into the zero space when absent
  LinMap B_from(int n) const;
  MixedComplex transpose() const;
  ComplexWindow hochschild_window() const;
};

bool check_mixed(const MixedComplex& m, std::string* witness = nullptr);

MixedComplex unnormalized_mixed(const CyclicModule& c);

// Homological normalization: C_n modulo the images of all degeneracies.
// Only b and B descend; single faces and t do not.
struct NormalizedModule {
  std::vector<Quotient> quot;
  MixedComplex mixed;
};
NormalizedModule normalize(const CyclicModule& c);

// Degreewise tensor product with diagonal operators.
CyclicModule diagonal(const CyclicModule& a, const CyclicModule& b);
CocyclicModule diagonal(const CocyclicModule& a, const CocyclicModule& b);

// (M (x) M')_n = sum_{p+q=n} M_p (x) M'_q, summand tag p. Both differentials
// act as f (x) 1 + (-1)^p 1 (x) f.
MixedComplex tensor_mixed(const MixedComplex& a, const MixedComplex& b);
// Inclusion / projection of the (p, q) summand.
LinMap tensor_summand_inclusion(const MixedComplex& a, const MixedComplex& b, int p, int q);
LinMap tensor_summand_projection(const MixedComplex& a, const MixedComplex& b, int p, int q);

// Total complex of the (b, B) bicomplex: Tot_n = sum_k C_{n - 2k}, summand tag
// k. S drops k = 0 homologically and shifts k up cohomologically.
struct TotWindow {
  MixedComplex source;
  ComplexWindow tot;
  std::map<int, LinMap> S;  // S[n]: Tot_n -> Tot_{n + 2 dir}
  int dir() const { return source.dir; }
  // Component maps between Tot summands.
  LinMap inclusion(int n, int k) const;   // C_{n-2k} -> Tot_n
  LinMap projection(int n, int k) const;  // Tot_n -> C_{n-2k}
};
TotWindow tot_window(const MixedComplex& m);
bool check_tot(const TotWindow& w, std::string* witness = nullptr);

// Basis-level access to structure maps, for modules too large or too truncated
// to hold as matrices. A word is read homologically, left to right: applied to
// chains in C_n it lands in C_{word_end(n, w)}. Cohomological modules
// (orientation +1) hold the transposed maps, so the same word is evaluated
// backwards on cochains of C^{word_end(n, w)} and lands in C^n.
enum class OpKind { Face, Degen, Cyc };
struct Op {
  OpKind kind;
  int i;  // face / degeneracy index, or the power of t
};
using Word = std::vector<Op>;
int word_end(int n, const Word& w);

class CyclicOps {
 public:
  virtual ~CyclicOps() = default;
  virtual int orientation() const = 0;  // -1 chains, +1 cochains
  virtual int cap() const = 0;
  virtual FreeSpace space(int n) const = 0;
  virtual std::size_t dim(int n) const { return space(n).dim(); }
  // Indexing as in CyclicModule / CocyclicModule; e is a basis index of the
  // source of the map in the module's own orientation.
  virtual Vec face(int n, int i, std::size_t e) const = 0;
  virtual Vec degen(int n, int i, std::size_t e) const = 0;
  virtual Vec cyc(int n, std::size_t e) const = 0;
};
using OpsPtr = std::shared_ptr<const CyclicOps>;

OpsPtr module_ops(const CyclicModule& c);
OpsPtr module_ops(const CocyclicModule& c);

Vec apply_word(const CyclicOps& c, int n, const Word& w, const Vec& v);
CyclicModule materialize_cyclic(const CyclicOps& c);
CocyclicModule materialize_cocyclic(const CyclicOps& c);

// Memo for lazily computed basis images; safe for concurrent readers.
class OpCache {
 public:
  template <class F>
  Vec get(int kind, int n, int i, std::size_t e, F compute) const {
    auto key = std::make_tuple(kind, n, i, e);
    {
      std::lock_guard<std::mutex> g(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    Vec v = compute();
    std::lock_guard<std::mutex> g(mu_);
    memo_.emplace(key, v);
    return v;
  }

 private:
  mutable std::mutex mu_;
  mutable std::map<std::tuple<int, int, int, std::size_t>, Vec> memo_;
};

}  // namespace hopfcup
