#pragma once

#include "rotosense/multipole.hpp"
#include "rotosense/spin.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <utility>

namespace rotosense {

/// Partial trace over the second factor of a (da*db)-dimensional operator,
/// rows indexed a * db + b.
CMatrix partial_trace_second(const CMatrix& op, int da, int db);

/// State of t qubits of the symmetric 2j-qubit realization, in the spin-t/2
/// basis (descending m). Requires 1 <= t <= 2j - 1.
CMatrix reduced_state(const DensityMatrix& rho, int t);

/// (t+1)/t (1 - Tr rho_t^2).
double anticoherence_measure(const DensityMatrix& rho, int t);

struct AnticoherenceCheck {
  bool anticoherent = false;
  double max_violation = 0.0;  // max |Tr(rho T_LM)| over 1 <= L <= min(t, 2j)
  int order = 0;
  double tolerance = 0.0;
};

AnticoherenceCheck is_anticoherent(const DensityMatrix& rho, int t, double tolerance = 1e-8);

struct AnticoherenceReport {
  std::map<int, double> orders;  // t -> A_t
  int certified_order = 0;
  double tolerance = 0.0;
};

/// A_t for t = 1 .. 2j-1; certified_order is the largest t with A_1..A_t within
/// `tolerance` of 1.
AnticoherenceReport anticoherence_report(const DensityMatrix& rho, double tolerance = 1e-9);

using MultipoleCoefficients = std::map<std::pair<int, int>, Complex>;

/// rho_0 + eps A with A = sum A_LM T_LM. With no epsilon, the largest eps that
/// keeps the state positive, [(2j+1) |lambda_min(A)|]^-1, is used.
DensityMatrix perturbed_anticoherent_state(SpinLabel spin, const std::set<int>& excluded_sectors,
                                           const MultipoleCoefficients& coefficients,
                                           std::optional<double> epsilon = std::nullopt);

struct Spin32TwoAcState {
  DensityMatrix rho;
  double x = 0.0;
  double weight_bound = 0.0;
  std::array<double, 4> closed_form_eigenvalues{};  // ascending
};

double spin32_family_x(double c0, double c1, double c2, double phi);

/// 1/4 + w [c0 T_30 + c1 (e^{i phi} T_31 - e^{-i phi} T_3-1) + c2 (T_32 + T_3-2)]
/// with c0^2 + 2c1^2 + 2c2^2 = 1.
Spin32TwoAcState spin32_two_ac_family(double w, double c0, double c1, double c2, double phi);

}  // namespace rotosense
