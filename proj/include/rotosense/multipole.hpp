#pragma once

#include "rotosense/spin.hpp"

#include <memory>
#include <vector>

namespace rotosense {

struct MultipoleIndex {
  int L = 0;
  int M = 0;
  /// Position in the L^2 + L + M enumeration.
  int flat() const { return L * L + L + M; }
  static MultipoleIndex from_flat(int n);
};

bool valid_index(SpinLabel spin, MultipoleIndex idx);

/// T_LM stored as its single nonzero diagonal band: entry i of `band` is
/// <j, m_i + M | T_LM | j, m_i> for i = max(0, M) ... d-1+min(0, M).
struct MultipoleBand {
  MultipoleIndex index;
  int offset = 0;            // row = col - M in descending-m indexing
  std::vector<double> band;  // length d - |M|
  int first_col = 0;
};

/// Dense operators and bands for every index of a spin, built once per two_j.
struct MultipoleTable {
  SpinLabel spin;
  std::vector<CMatrix> dense;       // flat index order
  std::vector<MultipoleBand> bands; // flat index order
  const CMatrix& operator()(int L, int M) const { return dense[static_cast<std::size_t>(L * L + L + M)]; }
};

/// Shared immutable table; thread-safe, memoized per two_j.
std::shared_ptr<const MultipoleTable> multipole_table(SpinLabel spin);

/// <j,m'|T_LM|j,m> = sqrt((2L+1)/(2j+1)) <j,m; L,M | j,m'>.
CMatrix multipole_operator(SpinLabel spin, MultipoleIndex idx);
/// Same operator without touching the cache.
CMatrix multipole_operator_uncached(SpinLabel spin, MultipoleIndex idx);

/// rho_LM = Tr(rho T_LM^dagger), flat index order.
struct MultipoleExpansion {
  SpinLabel spin;
  std::vector<Complex> coefficients;

  explicit MultipoleExpansion(SpinLabel s);
  Complex operator()(int L, int M) const;
  Complex& at(int L, int M);
  /// max |rho*_LM - (-1)^M rho_{L,-M}|
  double conjugation_defect() const;
};

MultipoleExpansion expand(const DensityMatrix& rho);
MultipoleExpansion expand_operator(SpinLabel spin, const CMatrix& op);
CMatrix reconstruct_operator(const MultipoleExpansion& e);
/// Throws InvariantViolation when the coefficients break conjugation symmetry
/// or when the resulting operator is not a valid state.
DensityMatrix reconstruct(const MultipoleExpansion& e);

/// Tr(rho T_LM).
Complex multipole_expectation(const DensityMatrix& rho, MultipoleIndex idx);

}  // namespace rotosense
