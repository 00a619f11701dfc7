#pragma once

#include <string>
#include <vector>

#include "hopfcup/hopf.hpp"

namespace hopfcup {

enum class SaydSide {
  RightLeft,  // right action, left coaction
  LeftLeft,   // left action, left coaction
};

struct SAYDModule {
  std::string name;
  FreeSpace carrier;
  SaydSide side = SaydSide::RightLeft;
  // action_table[m][h]: m.h (RightLeft) or h.m (LeftLeft) as a vector in M.
  std::vector<std::vector<Vec>> action_table;
  // coaction_table[m]: terms (h, m', c) of m^(-1) (x) m^(0).
  std::vector<std::vector<Term2>> coaction_table;

  std::size_t dim() const { return carrier.dim(); }
  Vec act(const Vec& m, const Vec& h) const;  // argument order independent of side
  Vec act(std::size_t m, std::size_t h) const { return action_table.at(m).at(h); }
  // Coaction as a vector in H (x) M, index h * dim(M) + m.
  Vec coact(const Vec& m, std::size_t hdim) const;

  LinMap action_map(const HopfAlgebra& h) const;
  LinMap coaction_map(const HopfAlgebra& h) const;
};

AxiomReport check_sayd(const SAYDModule& m, const HopfAlgebra& h);

SAYDModule mpi_module(const HopfAlgebra& h, const Character& d, const GroupLike& s,
                      SaydSide side = SaydSide::RightLeft);
// k with action through the counit and coaction 1 (x) m.
SAYDModule trivial_module(const HopfAlgebra& h, SaydSide side);
SAYDModule tensor_sayd(const SAYDModule& m, const HopfAlgebra& h, const SAYDModule& n, const HopfAlgebra& k);

// Module over kG spanned by a conjugation-closed set of group elements:
// basis e_g, coaction g (x) e_g, action by conjugation.
SAYDModule conjugation_module(const FiniteGroup& g, const std::vector<int>& elements, SaydSide side);

struct PsiMap {
  LinMap psi;  // M -> M (x) M
};
PsiMap diagonal_psi(const SAYDModule& m);  // e_i -> e_i (x) e_i

bool check_psi_coaction(const PsiMap& psi, const SAYDModule& m, const HopfAlgebra& h,
                        std::string* witness = nullptr);
bool check_psi_action(const PsiMap& psi, const SAYDModule& m, const HopfAlgebra& h, std::string* witness = nullptr);

}  // namespace hopfcup
