#pragma once

#include "rotosense/spin.hpp"
#include "rotosense/subspaces.hpp"

#include <cstdint>
#include <vector>

namespace rotosense {

/// t | 2j - t split of the symmetric qubit realization.
struct Bipartition {
  Bipartition(int t, int n_total);
  int t;
  int n_total;
  int dim_a() const { return t + 1; }
  int dim_b() const { return n_total - t + 1; }
};

/// Amplitudes on H^(t/2) (x) H^(j-t/2), index a * dim_b + b.
CVector embed_bipartite(const PureState& psi, const Bipartition& bip);
CMatrix embed_bipartite(const DensityMatrix& rho, const Bipartition& bip);

/// (a b, a' b') -> (a b', a' b).
CMatrix partial_transpose_second(const CMatrix& op, int da, int db);
/// (a b, a' b') -> (a' b, a b').
CMatrix partial_transpose_first(const CMatrix& op, int da, int db);

struct NegativityReport {
  Bipartition bipartition;
  double negativity = 0.0;
  std::vector<double> negative_eigenvalues;
  RVector spectrum;  // ascending spectrum of the partial transpose
};

NegativityReport negativity(const DensityMatrix& rho, const Bipartition& bip);
/// Same quantity with the transpose taken on the first factor.
double negativity_first_factor(const DensityMatrix& rho, const Bipartition& bip);

/// Singular values of the dim_a x dim_b amplitude matrix, descending.
/// Requires t <= 2j - t.
RVector schmidt_spectrum(const PureState& psi, const Bipartition& bip);

struct FamilyCounts {
  int x = 0;       // lambda_m/(t+1)
  int y_plus = 0;  // +lambda_m/(t+1)
  int y_minus = 0; // -lambda_m/(t+1)
  int z = 0;       // 0
  int total() const { return x + y_plus + y_minus + z; }
  friend bool operator==(const FamilyCounts& a, const FamilyCounts& b) {
    return a.x == b.x && a.y_plus == b.y_plus && a.y_minus == b.y_minus && a.z == b.z;
  }
};

struct Theorem1Report {
  int samples = 0;
  int t = 0;
  /// max over samples and t' <= t of |N_t' - t'/2|.
  double max_negativity_error = 0.0;
  /// max |Gram - I| over all B-side Schmidt vectors of the frame.
  double schmidt_orthonormality_error = 0.0;
  FamilyCounts expected;
  FamilyCounts constructed;
  /// max ||rho^T_B v - mu v|| over the constructed family vectors and samples.
  double max_eigenvector_residual = 0.0;
  /// max |V^dagger V - I| of the constructed family vectors.
  double family_basis_defect = 0.0;
  /// Eigenvalue sign counts of rho^T_B agree with the family bookkeeping.
  bool spectrum_counts_match = true;
  bool passed = false;
};

/// Random weight vectors over the frame basis; checks maximal negativity, the
/// orthonormality of B-side Schmidt vectors and the four eigenvector families
/// of the partially transposed state.
Theorem1Report theorem1_suite(const SubspaceFrame& frame, int t, int weight_samples, std::uint64_t seed);

}  // namespace rotosense
