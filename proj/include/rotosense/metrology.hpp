#pragma once

#include "rotosense/spin.hpp"

#include <string>
#include <vector>

namespace rotosense {

/// (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

enum class QfiForm {
  weighted_pairs,    // 2 sum p_lm |<l|J_n|m>|^2 over the full eigenbasis
  trace_difference,  // 4 Tr(rho J_n^2) - 8 sum_image lambda_l lambda_m/(lambda_l+lambda_m) |<l|J_n|m>|^2
};

double qfi(const DensityMatrix& rho, const Vec3& axis,
           double rank_tolerance = kDefaultRankTolerance,
           QfiForm form = QfiForm::weighted_pairs);

/// 4 (<J_n^2> - <J_n>^2).
double pure_state_qfi(const PureState& psi, const Vec3& axis);

/// I(n, rho) = n^T K n.
struct QfiQuadraticForm {
  SpinLabel spin;
  Mat3 K;

  double evaluate(const Vec3& n) const { return n.dot(K * n); }
  Eigen::Vector3d eigenvalues() const;  // ascending
  double averaged() const { return K.trace() / 3.0; }
  /// (lambda_max - lambda_min) / lambda_max, 0 for K = 0.
  double isotropy_gap() const;
};

QfiQuadraticForm qfi_quadratic_form(const DensityMatrix& rho,
                                    double rank_tolerance = kDefaultRankTolerance);

double averaged_qfi(const DensityMatrix& rho);

struct InverseQfiAverage {
  double value = 0.0;  // +infinity when K is singular
  bool finite = true;
  int order_used = 0;
  double last_change = 0.0;
  std::string diagnostic;
};

/// Sphere average of 1/(n^T K n). The azimuthal integral is done in closed form
/// in the eigenframe of K; the polar integral uses Gauss-Legendre nodes,
/// doubled from `quadrature_order` until successive values differ by < 1e-8.
InverseQfiAverage averaged_inverse_qfi(const QfiQuadraticForm& form, int quadrature_order = 16);
InverseQfiAverage averaged_inverse_qfi(const DensityMatrix& rho, int quadrature_order = 16);

struct CrbReport {
  double averaged_qfi = 0.0;
  double averaged_inverse_qfi = 0.0;
  double isotropy_gap = 0.0;
  double qcrb_lower_bound = 0.0;  // 3 / (4 j (j+1))
};

CrbReport crb_report(const DensityMatrix& rho, int quadrature_order = 16);

struct TaylorCheck {
  std::vector<double> etas;
  std::vector<double> infidelity;  // 1 - F(rho, R rho R^dagger)
  std::vector<double> predicted;   // eta^2 I / 4
  double max_relative_residual = 0.0;
};

TaylorCheck fidelity_taylor_check(const DensityMatrix& rho, const Vec3& axis,
                                  const std::vector<double>& etas);

struct FixedAxisOptimum {
  double max_qfi = 0.0;
  std::vector<double> weights;
  std::vector<PureState> states;
  DensityMatrix assembled() const;
};

/// Closed-form fixed-axis (e_z) value 4 sum_l lambda_l (j - floor((l-1)/2))^2 and
/// the paired eigenstates N_l(|j, j-floor((l-1)/2)> + (-1)^(l-1) |j, floor((l-1)/2)-j>).
FixedAxisOptimum fixed_axis_optimum(SpinLabel spin, const std::vector<double>& weights);

}  // namespace rotosense
