#include "rotosense/spin.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

namespace rotosense {

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kHermitianTolerance = 1e-12;
constexpr double kTraceTolerance = 1e-12;
constexpr double kPsdTolerance = 1e-10;

// n! for n < 400 in long double (400! ~ 6e868 fits comfortably).
const std::array<long double, 400>& factorials() {
  static const auto table = [] {
    std::array<long double, 400> f{};
    f[0] = 1.0L;
    for (std::size_t n = 1; n < f.size(); ++n) f[n] = f[n - 1] * static_cast<long double>(n);
    return f;
  }();
  return table;
}

long double fact(int n) {
  if (n < 0 || n >= 400) throw std::out_of_range("factorial argument out of table range");
  return factorials()[static_cast<std::size_t>(n)];
}

}  // namespace

SpinLabel::SpinLabel(int two_j) : two_j_(two_j) {
  if (two_j < 0) throw InvariantViolation("spin: 2j must be non-negative");
}

SpinLabel SpinLabel::from_j(double j) {
  const double twice = 2.0 * j;
  const double rounded = std::round(twice);
  if (j < 0.0 || std::abs(twice - rounded) > 1e-9)
    throw InvariantViolation("spin: j must be a non-negative half-integer");
  return SpinLabel(static_cast<int>(rounded));
}

SpinLabel SpinLabel::parse(const std::string& text) {
  auto number = [&](const std::string& part, auto convert) {
    std::size_t used = 0;
    try {
      const auto v = convert(part, &used);
      if (used == part.size()) return v;
    } catch (const std::logic_error&) {
    }
    throw InvariantViolation("spin: cannot parse '" + text + "'");
  };
  auto to_int = [](const std::string& p, std::size_t* n) { return std::stoi(p, n); };
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const int num = number(text.substr(0, slash), to_int);
    const int den = number(text.substr(slash + 1), to_int);
    if (den == 1) return SpinLabel(2 * num);
    if (den != 2) throw InvariantViolation("spin: denominator must be 1 or 2 in '" + text + "'");
    return SpinLabel(num);
  }
  return from_j(number(text, [](const std::string& p, std::size_t* n) { return std::stod(p, n); }));
}

std::string SpinLabel::to_string() const {
  if (half_integer()) return std::to_string(two_j_) + "/2";
  return std::to_string(two_j_ / 2);
}

PureState::PureState(SpinLabel spin, CVector amplitudes)
    : spin_(spin), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != spin_.dimension())
    throw InvariantViolation("pure state: expected " + std::to_string(spin_.dimension()) +
                             " amplitudes, got " + std::to_string(amplitudes_.size()));
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    std::ostringstream os;
    os << "pure state: squared norm " << norm2 << " differs from 1 by more than "
       << kNormTolerance;
    throw InvariantViolation(os.str());
  }
}

PureState PureState::normalized(SpinLabel spin, CVector amplitudes) {
  const double n = amplitudes.norm();
  if (n == 0.0) throw InvariantViolation("pure state: zero vector cannot be normalized");
  return PureState(spin, amplitudes / n);
}

PureState PureState::basis(SpinLabel spin, int two_m) {
  if (std::abs(two_m) > spin.two_j() || (spin.two_j() - two_m) % 2 != 0)
    throw InvariantViolation("basis state: m out of range");
  CVector v = CVector::Zero(spin.dimension());
  v(spin.index_of_two_m(two_m)) = 1.0;
  return PureState(spin, v);
}

double hermiticity_defect(const CMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianEigen hermitian_eigen(const CMatrix& m) {
  const CMatrix h = 0.5 * (m + CMatrix(m.adjoint()));
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

DensityMatrix::DensityMatrix(SpinLabel spin, CMatrix entries) : spin_(spin) {
  const int d = spin.dimension();
  if (entries.rows() != d || entries.cols() != d)
    throw InvariantViolation("density matrix: expected " + std::to_string(d) + "x" +
                             std::to_string(d) + " entries");
  const double herm = hermiticity_defect(entries);
  if (herm > kHermitianTolerance) {
    std::ostringstream os;
    os << "density matrix: not Hermitian (max |M - M^dagger| = " << herm << ")";
    throw InvariantViolation(os.str());
  }
  const Complex tr = entries.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    std::ostringstream os;
    os << "density matrix: trace " << tr.real() << (tr.imag() >= 0 ? "+" : "") << tr.imag()
       << "i differs from 1";
    throw InvariantViolation(os.str());
  }
  entries_ = 0.5 * (entries + CMatrix(entries.adjoint()));
  const double lmin = hermitian_eigen(entries_).values.minCoeff();
  if (lmin < -kPsdTolerance) {
    std::ostringstream os;
    os << "density matrix: not positive semidefinite (smallest eigenvalue " << lmin << ")";
    throw InvariantViolation(os.str());
  }
}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
  return DensityMatrix(psi.spin(), psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(SpinLabel spin) {
  const int d = spin.dimension();
  return DensityMatrix(spin, CMatrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::mixture(const std::vector<double>& weights,
                                     const std::vector<PureState>& states) {
  if (weights.size() != states.size() || states.empty())
    throw InvariantViolation("mixture: need one weight per state");
  const SpinLabel spin = states.front().spin();
  const int d = spin.dimension();
  CMatrix m = CMatrix::Zero(d, d);
  double total = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].spin() != spin) throw InvariantViolation("mixture: spins differ");
    if (weights[i] < 0.0) throw InvariantViolation("mixture: negative weight");
    total += weights[i];
    m += weights[i] * states[i].amplitudes() * states[i].amplitudes().adjoint();
  }
  if (std::abs(total - 1.0) > kTraceTolerance)
    throw InvariantViolation("mixture: weights do not sum to 1");
  return DensityMatrix(spin, m);
}

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

DensityMatrix DensityMatrix::transformed(const CMatrix& unitary) const {
  return DensityMatrix(spin_, unitary * entries_ * unitary.adjoint());
}

AxisAngle::AxisAngle(Vec3 axis_, double angle_) : axis(axis_), angle(angle_) {
  if (std::abs(axis.norm() - 1.0) > kNormTolerance)
    throw InvariantViolation("axis-angle: axis must have unit norm");
}

CMatrix EigenMixture::image_basis() const {
  CMatrix b(spin.dimension(), rank());
  for (int i = 0; i < rank(); ++i) b.col(i) = states[static_cast<std::size_t>(i)].amplitudes();
  return b;
}

CMatrix EigenMixture::image_projector() const {
  const CMatrix b = image_basis();
  return b * b.adjoint();
}

CMatrix EigenMixture::kernel_projector() const { return kernel * kernel.adjoint(); }

AngularMomentum angular_momentum_operators(SpinLabel spin) {
  const int d = spin.dimension();
  const double jj = spin.casimir();
  AngularMomentum ops;
  ops.z = CMatrix::Zero(d, d);
  ops.raising = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const double m = spin.m(i);
    ops.z(i, i) = m;
    // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> sits at index i-1.
    if (i > 0) ops.raising(i - 1, i) = std::sqrt(jj - m * (m + 1.0));
  }
  ops.lowering = ops.raising.adjoint();
  ops.x = 0.5 * (ops.raising + ops.lowering);
  ops.y = (ops.raising - ops.lowering) / Complex(0.0, 2.0);
  return ops;
}

CMatrix component_along(SpinLabel spin, const Vec3& axis) {
  if (std::abs(axis.norm() - 1.0) > kNormTolerance)
    throw InvariantViolation("component_along: axis must have unit norm");
  return angular_momentum_operators(spin).along(axis);
}

CMatrix rotation_operator(SpinLabel spin, const AxisAngle& r) {
  const HermitianEigen eig = hermitian_eigen(component_along(spin, r.axis));
  const int d = spin.dimension();
  CVector phases(d);
  for (int i = 0; i < d; ++i) phases(i) = std::exp(Complex(0.0, -r.angle * eig.values(i)));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

CMatrix rotation_operator_euler(SpinLabel spin, double alpha, double beta, double gamma) {
  const Vec3 ez = Vec3::UnitZ();
  const Vec3 ey = Vec3::UnitY();
  return rotation_operator(spin, AxisAngle(ez, alpha)) * rotation_operator(spin, AxisAngle(ey, beta)) *
         rotation_operator(spin, AxisAngle(ez, gamma));
}

Mat3 rotation_matrix(const AxisAngle& r) {
  return Eigen::AngleAxisd(r.angle, r.axis).toRotationMatrix();
}

double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_j, int two_m) {
  if (two_j1 < 0 || two_j2 < 0 || two_j < 0) return 0.0;
  if (two_m1 + two_m2 != two_m) return 0.0;
  if (std::abs(two_m1) > two_j1 || std::abs(two_m2) > two_j2 || std::abs(two_m) > two_j) return 0.0;
  if ((two_j1 + two_m1) % 2 || (two_j2 + two_m2) % 2 || (two_j + two_m) % 2) return 0.0;
  if (two_j < std::abs(two_j1 - two_j2) || two_j > two_j1 + two_j2) return 0.0;
  if ((two_j1 + two_j2 + two_j) % 2) return 0.0;

  // Racah's closed form; every bracket below is an integer because of the parity checks.
  const int a = (two_j1 + two_j2 - two_j) / 2;
  const int b = (two_j1 - two_j2 + two_j) / 2;
  const int c = (-two_j1 + two_j2 + two_j) / 2;
  const int s = (two_j1 + two_j2 + two_j) / 2 + 1;
  const int jpm = (two_j + two_m) / 2, jmm = (two_j - two_m) / 2;
  const int j1pm = (two_j1 + two_m1) / 2, j1mm = (two_j1 - two_m1) / 2;
  const int j2pm = (two_j2 + two_m2) / 2, j2mm = (two_j2 - two_m2) / 2;

  const long double pre =
      std::sqrt(static_cast<long double>(two_j + 1) * fact(a) * fact(b) * fact(c) / fact(s)) *
      std::sqrt(fact(jpm) * fact(jmm) * fact(j1pm) * fact(j1mm) * fact(j2pm) * fact(j2mm));

  const int e1 = (two_j - two_j2 + two_m1) / 2;  // j - j2 + m1
  const int e2 = (two_j - two_j1 - two_m2) / 2;  // j - j1 - m2
  const int kmin = std::max({0, -e1, -e2});
  const int kmax = std::min({a, j1mm, j2pm});
  long double sum = 0.0L;
  for (int k = kmin; k <= kmax; ++k) {
    const long double den =
        fact(k) * fact(a - k) * fact(j1mm - k) * fact(j2pm - k) * fact(e1 + k) * fact(e2 + k);
    sum += ((k % 2) ? -1.0L : 1.0L) / den;
  }
  return static_cast<double>(pre * sum);
}

CMatrix symmetric_split_isometry(SpinLabel spin, int t) {
  const int two_j = spin.two_j();
  if (t < 0 || t > two_j) throw InvariantViolation("split isometry: t must lie in [0, 2j]");
  const int two_ja = t;
  const int two_jb = two_j - t;
  const int da = two_ja + 1;
  const int db = two_jb + 1;
  CMatrix e = CMatrix::Zero(da * db, spin.dimension());
  for (int i = 0; i < spin.dimension(); ++i) {
    const int two_m = spin.two_m(i);
    for (int a = 0; a < da; ++a) {
      const int two_mu = two_ja - 2 * a;
      const int two_nu = two_m - two_mu;
      if (std::abs(two_nu) > two_jb) continue;
      const int b = (two_jb - two_nu) / 2;
      e(a * db + b, i) = clebsch_gordan(two_ja, two_mu, two_jb, two_nu, two_j, two_m);
    }
  }
  return e;
}

EigenMixture eigen_mixture(const DensityMatrix& rho, double rank_tolerance) {
  const HermitianEigen eig = hermitian_eigen(rho.matrix());
  const int d = rho.spin().dimension();
  EigenMixture out{rho.spin(), {}, {}, CMatrix(d, 0), rank_tolerance};
  std::vector<int> kernel_cols;
  // SelfAdjointEigenSolver sorts ascending; walk from the top.
  for (int i = d - 1; i >= 0; --i) {
    if (eig.values(i) >= rank_tolerance) {
      out.weights.push_back(eig.values(i));
      out.states.push_back(PureState::normalized(rho.spin(), eig.vectors.col(i)));
    } else {
      kernel_cols.push_back(i);
    }
  }
  out.kernel.resize(d, static_cast<Eigen::Index>(kernel_cols.size()));
  for (std::size_t c = 0; c < kernel_cols.size(); ++c)
    out.kernel.col(static_cast<Eigen::Index>(c)) = eig.vectors.col(kernel_cols[c]);
  return out;
}

}  // namespace rotosense
