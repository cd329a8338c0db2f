#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rotosense {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Eigenvalues below this are treated as belonging to the kernel of a state.
inline constexpr double kDefaultRankTolerance = 1e-10;

/// Raised when a value fails the invariants of the type it is loaded into.
class InvariantViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Spin quantum number stored as the integer 2j.
class SpinLabel {
 public:
  SpinLabel() = default;
  explicit SpinLabel(int two_j);

  /// Accepts j = 0, 1/2, 1, ... given as a double; anything else throws.
  static SpinLabel from_j(double j);
  /// Parses "3/2", "1.5" or "2".
  static SpinLabel parse(const std::string& text);

  int two_j() const { return two_j_; }
  int dimension() const { return two_j_ + 1; }
  double j() const { return 0.5 * two_j_; }
  double casimir() const { return j() * (j() + 1.0); }
  bool half_integer() const { return two_j_ % 2 != 0; }

  /// Basis index i runs over m = j, j-1, ..., -j.
  int two_m(int index) const { return two_j_ - 2 * index; }
  double m(int index) const { return 0.5 * two_m(index); }
  int index_of_two_m(int two_m) const { return (two_j_ - two_m) / 2; }

  std::string to_string() const;

  friend bool operator==(SpinLabel a, SpinLabel b) { return a.two_j_ == b.two_j_; }
  friend bool operator!=(SpinLabel a, SpinLabel b) { return a.two_j_ != b.two_j_; }

 private:
  int two_j_ = 0;
};

/// Normalized amplitude vector in the |j,m> basis, m descending.
class PureState {
 public:
  PureState(SpinLabel spin, CVector amplitudes);
  /// Rescales the amplitudes to unit norm before validating.
  static PureState normalized(SpinLabel spin, CVector amplitudes);
  static PureState basis(SpinLabel spin, int two_m);

  SpinLabel spin() const { return spin_; }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex operator[](int index) const { return amplitudes_(index); }

 private:
  SpinLabel spin_;
  CVector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite operator on the spin-j space.
class DensityMatrix {
 public:
  DensityMatrix(SpinLabel spin, CMatrix entries);

  static DensityMatrix pure(const PureState& psi);
  static DensityMatrix maximally_mixed(SpinLabel spin);
  /// sum_m w_m |psi_m><psi_m|; weights must be a probability vector.
  static DensityMatrix mixture(const std::vector<double>& weights,
                               const std::vector<PureState>& states);

  SpinLabel spin() const { return spin_; }
  const CMatrix& matrix() const { return entries_; }
  double purity() const;
  /// U rho U^dagger.
  DensityMatrix transformed(const CMatrix& unitary) const;

 private:
  SpinLabel spin_;
  CMatrix entries_;
};

struct AxisAngle {
  AxisAngle(Vec3 axis, double angle);
  Vec3 axis;
  double angle;
};

/// Spectral data of a DensityMatrix split into image and kernel.
struct EigenMixture {
  SpinLabel spin;
  std::vector<double> weights;   // retained eigenvalues, descending
  std::vector<PureState> states; // matching eigenvectors
  CMatrix kernel;                // columns spanning ker(rho)
  double rank_tolerance = kDefaultRankTolerance;

  int rank() const { return static_cast<int>(weights.size()); }
  /// d x k matrix whose columns are the image eigenvectors.
  CMatrix image_basis() const;
  CMatrix image_projector() const;
  CMatrix kernel_projector() const;
};

struct AngularMomentum {
  CMatrix x, y, z;
  CMatrix raising, lowering;
  /// n_x Jx + n_y Jy + n_z Jz; no normalization check.
  CMatrix along(const Vec3& n) const { return n.x() * x + n.y() * y + n.z() * z; }
};

AngularMomentum angular_momentum_operators(SpinLabel spin);

/// J_n for a unit axis; rejects axes whose norm differs from 1 by more than 1e-12.
CMatrix component_along(SpinLabel spin, const Vec3& axis);

/// exp(-i eta J.n), computed from the spectral decomposition of J.n.
CMatrix rotation_operator(SpinLabel spin, const AxisAngle& r);

/// R_z(alpha) R_y(beta) R_z(gamma), active z-y-z convention.
CMatrix rotation_operator_euler(SpinLabel spin, double alpha, double beta, double gamma);

/// SO(3) matrix of the rotation by `angle` about `axis` (Rodrigues).
Mat3 rotation_matrix(const AxisAngle& r);

/// Condon-Shortley Clebsch-Gordan coefficient <j1 m1; j2 m2 | j m>, all
/// arguments doubled. Returns 0 whenever a selection rule fails.
double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_j, int two_m);

/// Isometry H^(j) -> H^(t/2) (x) H^(j - t/2) of the symmetric t | 2j-t split.
/// Row index is a * dim_B + b with both factors in descending-m order.
CMatrix symmetric_split_isometry(SpinLabel spin, int t);

EigenMixture eigen_mixture(const DensityMatrix& rho,
                           double rank_tolerance = kDefaultRankTolerance);

/// Hermitian eigendecomposition with eigenvalues in ascending order.
struct HermitianEigen {
  RVector values;
  CMatrix vectors;
};
HermitianEigen hermitian_eigen(const CMatrix& m);

/// Largest elementwise |M - M^dagger|.
double hermiticity_defect(const CMatrix& m);

}  // namespace rotosense
