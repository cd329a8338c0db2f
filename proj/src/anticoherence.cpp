#include "rotosense/anticoherence.hpp"

#include <sstream>

namespace rotosense {

CMatrix partial_trace_second(const CMatrix& op, int da, int db) {
  if (op.rows() != da * db || op.cols() != da * db)
    throw InvariantViolation("partial trace: operator dimension does not match factors");
  CMatrix out = CMatrix::Zero(da, da);
  for (int a = 0; a < da; ++a)
    for (int ap = 0; ap < da; ++ap) {
      Complex acc = 0.0;
      for (int b = 0; b < db; ++b) acc += op(a * db + b, ap * db + b);
      out(a, ap) = acc;
    }
  return out;
}

CMatrix reduced_state(const DensityMatrix& rho, int t) {
  const int n = rho.spin().two_j();
  if (t < 1 || t > n - 1)
    throw InvariantViolation("reduced state: t=" + std::to_string(t) + " outside [1, " +
                             std::to_string(n - 1) + "]");
  const CMatrix e = symmetric_split_isometry(rho.spin(), t);
  return partial_trace_second(e * rho.matrix() * e.adjoint(), t + 1, n - t + 1);
}

double anticoherence_measure(const DensityMatrix& rho, int t) {
  const CMatrix r = reduced_state(rho, t);
  const double purity = (r * r).trace().real();
  return (t + 1.0) / t * (1.0 - purity);
}

AnticoherenceCheck is_anticoherent(const DensityMatrix& rho, int t, double tolerance) {
  AnticoherenceCheck out;
  out.order = t;
  out.tolerance = tolerance;
  const int top = std::min(t, rho.spin().two_j());
  for (int L = 1; L <= top; ++L)
    for (int M = -L; M <= L; ++M)
      out.max_violation = std::max(out.max_violation, std::abs(multipole_expectation(rho, {L, M})));
  out.anticoherent = out.max_violation <= tolerance;
  return out;
}

AnticoherenceReport anticoherence_report(const DensityMatrix& rho, double tolerance) {
  AnticoherenceReport out;
  out.tolerance = tolerance;
  bool prefix = true;
  for (int t = 1; t <= rho.spin().two_j() - 1; ++t) {
    const double a = anticoherence_measure(rho, t);
    out.orders[t] = a;
    if (prefix && std::abs(a - 1.0) <= tolerance)
      out.certified_order = t;
    else
      prefix = false;
  }
  return out;
}

DensityMatrix perturbed_anticoherent_state(SpinLabel spin, const std::set<int>& excluded_sectors,
                                           const MultipoleCoefficients& coefficients,
                                           std::optional<double> epsilon) {
  MultipoleExpansion e(spin);
  for (const auto& [key, value] : coefficients) {
    const auto [L, M] = key;
    if (L < 1) throw InvariantViolation("perturbation: sector L=0 is fixed by the trace");
    if (excluded_sectors.count(L))
      throw InvariantViolation("perturbation: coefficient in excluded sector L=" + std::to_string(L));
    e.at(L, M) = value;
  }
  const double defect = e.conjugation_defect();
  if (defect > 1e-12) {
    std::ostringstream os;
    os << "perturbation: coefficients do not define a Hermitian operator (defect " << defect << ")";
    throw InvariantViolation(os.str());
  }
  const int d = spin.dimension();
  const CMatrix a = reconstruct_operator(e);
  const CMatrix rho0 = CMatrix::Identity(d, d) / static_cast<double>(d);
  if (coefficients.empty()) return DensityMatrix(spin, rho0);
  double eps;
  if (epsilon) {
    eps = *epsilon;
  } else {
    const double lmin = hermitian_eigen(a).values.minCoeff();
    if (lmin >= 0.0) throw InvariantViolation("perturbation: traceless operator has no negative eigenvalue");
    eps = 1.0 / (d * std::abs(lmin));
  }
  return DensityMatrix(spin, rho0 + eps * a);
}

double spin32_family_x(double c0, double c1, double c2, double phi) {
  const double c1s = c1 * c1, c0s = c0 * c0, c2s = c2 * c2;
  return 2.0 * c1s * (-2.0 * std::sqrt(30.0) * c2 * c0 * std::cos(2.0 * phi) + 8.0 * c0s + 15.0 * c2s) +
         21.0 * c1s * c1s + 4.0 * c0s * (c0s + 10.0 * c2s);
}

Spin32TwoAcState spin32_two_ac_family(double w, double c0, double c1, double c2, double phi) {
  const double norm = c0 * c0 + 2.0 * c1 * c1 + 2.0 * c2 * c2;
  if (std::abs(norm - 1.0) > 1e-10)
    throw InvariantViolation("spin-3/2 family: c0^2 + 2c1^2 + 2c2^2 must equal 1");
  const double x = spin32_family_x(c0, c1, c2, phi);
  const double sx = std::sqrt(std::max(x, 0.0));
  const double bound = std::sqrt(5.0) / (2.0 * std::sqrt(5.0 + 2.0 * sx));
  if (w < 0.0 || w > bound + 1e-12) {
    std::ostringstream os;
    os << "spin-3/2 family: w=" << w << " violates positivity bound " << bound;
    throw InvariantViolation(os.str());
  }
  const SpinLabel spin(3);
  const auto table = multipole_table(spin);
  const Complex ph = std::exp(Complex(0.0, phi));
  const CMatrix m = CMatrix::Identity(4, 4) / 4.0 +
                    w * (c0 * (*table)(3, 0) + c1 * (ph * (*table)(3, 1) - std::conj(ph) * (*table)(3, -1)) +
                         c2 * ((*table)(3, 2) + (*table)(3, -2)));
  Spin32TwoAcState out{DensityMatrix(spin, m), x, bound, {}};
  const double inner_p = std::sqrt(std::max(0.0, 1.0 + 0.4 * sx));
  const double inner_m = std::sqrt(std::max(0.0, 1.0 - 0.4 * sx));
  out.closed_form_eigenvalues = {0.25 - 0.5 * w * inner_p, 0.25 - 0.5 * w * inner_m,
                                 0.25 + 0.5 * w * inner_m, 0.25 + 0.5 * w * inner_p};
  return out;
}

}  // namespace rotosense
