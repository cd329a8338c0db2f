#pragma once

#include "rotosense/spin.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rotosense {

/// k orthonormal states of one spin; k between 1 and 2j+1.
class SubspaceFrame {
 public:
  SubspaceFrame(SpinLabel spin, std::vector<PureState> basis);
  /// Columns of `columns` are the basis vectors.
  static SubspaceFrame from_columns(SpinLabel spin, const CMatrix& columns);

  SpinLabel spin() const { return spin_; }
  int k() const { return static_cast<int>(basis_.size()); }
  const std::vector<PureState>& basis() const { return basis_; }
  CMatrix matrix() const;
  CMatrix projector() const;

 private:
  SpinLabel spin_;
  std::vector<PureState> basis_;
};

/// sum over m1 <= m2 of |<psi_m1|T_LM|psi_m2>|^2.
double objective_g_lm(const SubspaceFrame& frame, int L, int M);
/// Tr(P T_LM P T_LM^dagger); depends only on the projector P.
double projector_objective_g_lm(const SubspaceFrame& frame, int L, int M);
/// Projector form for an arbitrary orthonormal column matrix.
double projector_objective_g_t(SpinLabel spin, const CMatrix& columns, int t);

/// sum_{L=1..t} sum_M objective_g_lm.
double objective_g_t(const SubspaceFrame& frame, int t);
double projector_objective_g_t(const SubspaceFrame& frame, int t);

struct SubspaceCertificate {
  SubspaceFrame frame;
  int order_t = 0;
  double objective_value = 0.0;  // objective_g_t
  double tolerance = 0.0;
  bool verified = false;         // objective_value <= tolerance
  /// Largest |<chi1|T_LM|chi2>|^2 over random unit pairs in the span.
  double spot_check_max = 0.0;
  bool spot_check_passed = false;
};

SubspaceCertificate verify_subspace(const SubspaceFrame& frame, int t, double tolerance = 1e-10,
                                    int spot_checks = 20, std::uint64_t spot_seed = 0x5eed);

struct SearchConfig {
  int restarts = 64;
  int max_iterations = 5000;
  std::uint64_t seed = 0;
  double success_threshold = 1e-10;
  /// Successful restarts keep iterating until the objective drops below this.
  double polish_target = 1e-26;
  double initial_step = 0.5;
  double armijo = 1e-4;
  double backtrack = 0.5;
  /// Stop a restart when the objective improved by less than this factor over
  /// `stall_window` iterations.
  double stall_ratio = 1e-6;
  int stall_window = 400;
};

struct RestartRecord {
  int index = 0;
  std::uint64_t seed = 0;
  double objective = 0.0;
  int iterations = 0;
  bool success = false;
};

struct SearchResult {
  SubspaceCertificate best;
  std::vector<RestartRecord> restarts;
  int best_restart = 0;
  bool success = false;
};

/// Multi-start Riemannian conjugate-gradient minimization of the projector
/// form of G_t over orthonormal k-frames.
SearchResult search_subspace(SpinLabel spin, int k, int t, const SearchConfig& config);

/// floor((2j - t + 1) / (t + 1)).
int upper_bound_kmax(SpinLabel spin, int t);

struct KmaxScan {
  int k_max = 0;
  int bound = 0;
  std::vector<SearchResult> per_k;  // entry i is k = i + 1
  std::vector<std::string> anomalies;
};

/// Searches every k from 1 to the bound and reports the largest success.
KmaxScan kmax_scan(SpinLabel spin, int t, const SearchConfig& config);

/// (|j,m_a> + |j,-m_a>)/sqrt2 with m_a = j - 2a, plus |j,0> when j is an integer
/// and 2j - 3 - 4 floor((j-1)/2) > 0.
SubspaceFrame construct_one_ac_family(SpinLabel spin);
/// floor((j-1)/2) + 1 for half-integer j, floor((j-1)/2) + 2 for integer j.
int one_ac_dimension_formula(SpinLabel spin);

struct TwoAcParameters {
  int kappa = 0;
  int k2 = 0;
  std::vector<double> alpha;
  std::vector<double> beta;
};

/// kappa = ceil(j - sqrt(j(j+1)/3)), k2 = min(floor((j-kappa-3)/3), floor((kappa-2)/3)) + 1,
/// and the amplitudes solving j(j+1) = 6[(j-3a)^2 alpha^2 + (j-3a-1-kappa)^2 beta^2]
/// with 2 alpha^2 + 2 beta^2 = 1. Requires j >= 5.
TwoAcParameters two_ac_parameters(SpinLabel spin);
SubspaceFrame construct_two_ac_family(SpinLabel spin);

struct RotationMatch {
  bool equivalent = false;
  double residual = 0.0;  // || P_a - R P_b R^dagger ||_F
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
};

/// Least-squares fit of Euler angles with R = R_z(alpha) R_y(beta) R_z(gamma).
RotationMatch rotation_equivalent(const SubspaceFrame& a, const SubspaceFrame& b,
                                  double threshold = 1e-8);

struct CatalogEntry {
  std::string name;
  int k = 0;
  int t = 0;
  double tolerance = 1e-10;
  std::string description;
  SubspaceFrame frame;
};

const std::vector<CatalogEntry>& catalog();
/// nullptr when absent.
const CatalogEntry* find_catalog_entry(const std::string& name);

}  // namespace rotosense
