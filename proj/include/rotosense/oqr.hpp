#pragma once

#include "rotosense/spin.hpp"
#include "rotosense/subspaces.hpp"

#include <array>

namespace rotosense {

struct OqrTolerances {
  double g1 = 1e-10;         // G_1 of the image frame
  double multipole = 1e-8;   // |Tr(rho T_LM)| for L = 1, 2
  double isotropy = 1e-8;    // relative spread of the QFI quadratic form
  double rank = kDefaultRankTolerance;
};

struct OqrVerdict {
  bool is_oqr_fidelity = false;  // image is a 1-AC subspace
  bool is_oqr_qcrb = false;      // additionally rho is 2-AC
  SubspaceFrame image_frame;
  double image_g1 = 0.0;
  double anticoherence_order2_violation = 0.0;
  double isotropy_gap = 0.0;
  double averaged_qfi = 0.0;
  double qcrb = 0.0;  // averaged inverse QFI
  /// Whether (isotropic K and maximal averaged QFI) reproduces is_oqr_qcrb.
  bool routes_agree = false;
  OqrTolerances tolerances;
};

OqrVerdict certify(const DensityMatrix& rho, const OqrTolerances& tolerances = {});

/// The two spin-2 states (1, 0, +-sqrt2 i, 0, 1)/2.
std::array<PureState, 2> spin2_plane_states();

/// xi rho_1 + (1-xi) rho_2 on [1/2, 1]; ((5xi-1)/3)(rho_1 + rho_2) + ((1-2xi)/3) 1 on [1/5, 1/2].
DensityMatrix spin2_family(double xi);
double spin2_family_purity(double xi);
double spin2_family_inverse_qfi(double xi);

/// lambda_1 rho_1 + (2/3 - lambda_1) rho_2 + (1/3) rho_3 over the spin-3 three-state frame.
DensityMatrix spin3_oqr_family(double lambda1);
/// Arbitrary weights over the same frame.
DensityMatrix spin3_frame_mixture(const std::array<double, 3>& weights);
/// 3(2 - lambda_3)(4 + 3 lambda_3)/25.
double spin3_mixture_a2_formula(double lambda3);

/// a psi_1 + b psi_2 + c psi_3 over the spin-3 frame.
PureState spin3_superposition(Complex a, Complex b, Complex c);
/// (3/25)[8 - 4|a|^2|b|^2 - |c|^4 + 4 Re(a b conj(c)^2)].
double pure_coherent_superposition_a2(Complex a, Complex b, Complex c);

struct QcrbFloor {
  double variance_floor = 0.0;     // 3 / (4 M j (j+1))
  double inverse_qfi_floor = 0.0;  // 3 / (4 j (j+1)), the smallest averaged inverse QFI
};

QcrbFloor qcrb_floor(SpinLabel spin, int repetitions);

}  // namespace rotosense
