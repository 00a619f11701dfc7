#pragma once

#include <string>
#include <vector>

#include "hopfcup/cyclic.hpp"
#include "hopfcup/sayd.hpp"

namespace hopfcup {

// Mixed-radix digits of a product basis index and back.
std::vector<std::size_t> digits_of(std::size_t index, const std::vector<std::size_t>& radices);
std::size_t index_of_digits(const std::vector<std::size_t>& digits, const std::vector<std::size_t>& radices);

// Iterated coproduct of x into `legs` tensor legs (legs >= 1).
MultiVec iterated_comul(const HopfAlgebra& h, const Vec& x, int legs);

// M (x)_H H^{(x) n+1} for a right-left module M, as an honest cokernel of
//   mh (x) x - m (x) h.x   (h acting diagonally).
struct CoinvariantSpace {
  FreeSpace ambient;   // labels (m, h0, ..., hn)
  LinMap relations;    // relation generators -> ambient
  Quotient quot;
};
CoinvariantSpace coinvariants(const HopfAlgebra& h, const SAYDModule& m, int n);

struct CmQuotientModule {
  CocyclicModule module;
  std::vector<CoinvariantSpace> spaces;
};
// Every operator is checked to send relations to relations before it is kept.
CmQuotientModule cm_cocyclic_quotient(const HopfAlgebra& h, const SAYDModule& m, int cap);
CocyclicModule cm_cocyclic(const HopfAlgebra& h, const SAYDModule& m, int cap);

// The same module on M (x) H^{(x) n}, through
//   Psi(m (x) h0 (x) x) = m h0(1) (x) S(h0(2)).x,   section m (x) x -> m (x) 1 (x) x.
// Basis images are computed on demand, so truncated H is allowed as long as
// the products met stay under the cap.
OpsPtr cm_presentation(const HopfAlgebra& h, const SAYDModule& m, int cap);
// Psi as a map from the ambient of degree n.
LinMap cm_psi(const HopfAlgebra& h, const SAYDModule& m, int n);
// Psi kills the relations, induces a bijection, and intertwines every
// operator of the quotient module with the presentation.
AxiomReport check_cm_presentation(const HopfAlgebra& h, const SAYDModule& m, int cap);

// X box_H Y = ker(Delta_X (x) id - id (x) Delta_Y) inside X (x) Y.
struct CotensorSpace {
  FreeSpace ambient;
  Subspace kernel;
  LinMap inclusion() const { return kernel.inclusion(); }
};
// right_coaction: X -> X (x) H, left_coaction: Y -> H (x) Y.
CotensorSpace cotensor(const LinMap& right_coaction, const LinMap& left_coaction, std::size_t hdim);
// H^{(x) n+1} with the diagonal right coaction h0(1)..hn(1) (x) h0(2)...hn(2).
LinMap diagonal_coaction(const HopfAlgebra& h, int legs);

// Homological complex on H^{(x) n+1} (x) M, M left-left, before restriction.
OpsPtr cotensor_ambient_ops(const HopfAlgebra& h, const SAYDModule& m, int cap);

struct HopfCyclicModule {
  CyclicModule module;
  std::vector<CotensorSpace> spaces;
  OpsPtr ambient;
};
HopfCyclicModule hopf_cyclic(const HopfAlgebra& h, const SAYDModule& m, int cap);
CyclicModule hopf_cyclic_module(const HopfAlgebra& h, const SAYDModule& m, int cap);

// Omega isomorphisms. forward[n]: C(H (x) K)_n -> C(H)_n (x) C(K)_n.
struct OmegaIso {
  std::vector<LinMap> forward, inverse;
};
OmegaIso omega_cocyclic(const HopfAlgebra& h, const HopfAlgebra& k, const SAYDModule& m, const SAYDModule& n,
                        int cap);
OmegaIso omega_cyclic(const HopfAlgebra& h, const HopfAlgebra& k, const SAYDModule& m, const SAYDModule& n,
                      int cap);
// Vector-level Omega on ambient tuples ((h0,k0),...,(hn,kn), (m,r)) for the
// homological side; used where C(H (x) K) is too large to hold.
Vec omega_cyclic_ambient(std::size_t hdim, std::size_t kdim, std::size_t mdim, std::size_t ndim, int n,
                         const Vec& v);
// Same for keys ((m,r), (h1,k1), ..., (hn,kn)) with n H-legs, as in the cochain
// presentation and (with one more leg) the coinvariant ambient.
Vec omega_presentation(std::size_t hdim, std::size_t kdim, std::size_t mdim, std::size_t ndim, int n,
                       const Vec& v);

}  // namespace hopfcup
