#include "rotosense/oqr.hpp"

#include "rotosense/anticoherence.hpp"
#include "rotosense/metrology.hpp"

#include <cmath>
#include <limits>

namespace rotosense {

OqrVerdict certify(const DensityMatrix& rho, const OqrTolerances& tol) {
  const SpinLabel spin = rho.spin();
  if (spin.two_j() < 1) throw InvariantViolation("certify: spin 0 has no rotation sensitivity");
  const EigenMixture em = eigen_mixture(rho, tol.rank);
  OqrVerdict v{false, false, SubspaceFrame(spin, em.states), 0.0, 0.0, 0.0, 0.0, 0.0, false, tol};
  v.image_g1 = objective_g_t(v.image_frame, 1);
  v.anticoherence_order2_violation = is_anticoherent(rho, 2, tol.multipole).max_violation;
  const QfiQuadraticForm form = qfi_quadratic_form(rho, tol.rank);
  v.isotropy_gap = form.isotropy_gap();
  v.averaged_qfi = form.averaged();
  v.qcrb = averaged_inverse_qfi(form).value;

  v.is_oqr_fidelity = v.image_g1 <= tol.g1;
  v.is_oqr_qcrb = v.is_oqr_fidelity && v.anticoherence_order2_violation <= tol.multipole;

  const double optimum = 4.0 * spin.casimir() / 3.0;
  const bool maximal = std::abs(v.averaged_qfi - optimum) <= 1e-8 * optimum;
  const bool isotropic = v.isotropy_gap <= tol.isotropy;
  v.routes_agree = (maximal && isotropic) == v.is_oqr_qcrb;
  return v;
}

std::array<PureState, 2> spin2_plane_states() {
  const SpinLabel s(4);
  const Complex i(0.0, 1.0);
  CVector a(5), b(5);
  a << 0.5, 0.0, std::sqrt(2.0) * i / 2.0, 0.0, 0.5;
  b << 0.5, 0.0, -std::sqrt(2.0) * i / 2.0, 0.0, 0.5;
  return {PureState(s, a), PureState(s, b)};
}

namespace {

void require_xi(double xi) {
  if (!(xi >= 0.2 - 1e-15 && xi <= 1.0 + 1e-15))
    throw InvariantViolation("spin-2 family: xi must lie in [1/5, 1]");
}

}  // namespace

DensityMatrix spin2_family(double xi) {
  require_xi(xi);
  const auto st = spin2_plane_states();
  const CMatrix p1 = st[0].amplitudes() * st[0].amplitudes().adjoint();
  const CMatrix p2 = st[1].amplitudes() * st[1].amplitudes().adjoint();
  if (xi >= 0.5) return DensityMatrix(SpinLabel(4), xi * p1 + (1.0 - xi) * p2);
  return DensityMatrix(SpinLabel(4),
                       (5.0 * xi - 1.0) / 3.0 * (p1 + p2) + (1.0 - 2.0 * xi) / 3.0 * CMatrix::Identity(5, 5));
}

double spin2_family_purity(double xi) {
  require_xi(xi);
  if (xi >= 0.5) return 1.0 + 2.0 * xi * (xi - 1.0);
  return (2.0 * xi * (5.0 * xi - 2.0) + 1.0) / 3.0;
}

double spin2_family_inverse_qfi(double xi) {
  require_xi(xi);
  if (xi >= 0.5) return 0.125;
  const double gap = 1.0 - 5.0 * xi;
  if (gap == 0.0) return std::numeric_limits<double>::infinity();
  return 3.0 * (xi + 1.0) / (16.0 * gap * gap);
}

namespace {

const SubspaceFrame& spin3_frame() { return find_catalog_entry("(3,3,1)")->frame; }

}  // namespace

DensityMatrix spin3_frame_mixture(const std::array<double, 3>& weights) {
  const auto& f = spin3_frame();
  return DensityMatrix::mixture({weights[0], weights[1], weights[2]}, f.basis());
}

DensityMatrix spin3_oqr_family(double lambda1) {
  if (!(lambda1 >= 0.0 && lambda1 <= 2.0 / 3.0 + 1e-15))
    throw InvariantViolation("spin-3 family: lambda1 must lie in [0, 2/3]");
  return spin3_frame_mixture({lambda1, std::max(0.0, 2.0 / 3.0 - lambda1), 1.0 / 3.0});
}

double spin3_mixture_a2_formula(double lambda3) { return 3.0 * (2.0 - lambda3) * (4.0 + 3.0 * lambda3) / 25.0; }

PureState spin3_superposition(Complex a, Complex b, Complex c) {
  const auto& f = spin3_frame();
  return PureState(f.spin(), a * f.basis()[0].amplitudes() + b * f.basis()[1].amplitudes() +
                                 c * f.basis()[2].amplitudes());
}

double pure_coherent_superposition_a2(Complex a, Complex b, Complex c) {
  const double n = std::norm(a) + std::norm(b) + std::norm(c);
  if (std::abs(n - 1.0) > 1e-10) throw InvariantViolation("superposition coefficients must be normalized");
  return 3.0 / 25.0 *
         (8.0 - 4.0 * std::norm(a) * std::norm(b) - std::norm(c) * std::norm(c) +
          4.0 * (a * b * std::conj(c) * std::conj(c)).real());
}

QcrbFloor qcrb_floor(SpinLabel spin, int repetitions) {
  if (repetitions < 1) throw InvariantViolation("QCRB floor: repetitions must be >= 1");
  if (spin.two_j() < 1) throw InvariantViolation("QCRB floor: spin must be positive");
  const double inv = 3.0 / (4.0 * spin.casimir());
  return {inv / repetitions, inv};
}

}  // namespace rotosense
