#include "rotosense/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rotosense {

namespace {

// Eigenvalues this close to zero come from roundoff; their square roots would
// otherwise leak ~1e-8 into fidelities of pure states.
constexpr double kFidelityCutoff = 1e-14;

struct Spectrum {
  RVector lambda;  // clamped: entries below the rank tolerance are exactly 0
  CMatrix vectors;
};

Spectrum clamped_spectrum(const DensityMatrix& rho, double rank_tolerance) {
  HermitianEigen eig = hermitian_eigen(rho.matrix());
  for (int i = 0; i < eig.values.size(); ++i)
    if (eig.values(i) < rank_tolerance) eig.values(i) = 0.0;
  return {eig.values, eig.vectors};
}

double pair_weight(double ll, double lm) {
  const double s = ll + lm;
  if (s <= 0.0) return 0.0;
  return (lm - ll) * (lm - ll) / s;
}

void require_unit(const Vec3& axis) {
  if (std::abs(axis.norm() - 1.0) > 1e-12) throw InvariantViolation("axis must have unit norm");
}

// Gauss-Legendre nodes and weights on [-1, 1] (Newton iteration on P_n).
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  const double pi = std::acos(-1.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * k - 1.0) * z * p2 - (k - 1.0) * p3) / k;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / pp;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const auto lo = static_cast<std::size_t>(i), hi = static_cast<std::size_t>(n - 1 - i);
    x[lo] = -z;
    x[hi] = z;
    w[lo] = w[hi] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

// int_0^1 dz / sqrt((a + p z^2)(b + q z^2)) with z = sqrt(a/p) sinh(s), which
// removes the peak at z = 0 when a << p.
double polar_integral(double a, double b, double p, double q, int n) {
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  if (p <= 0.0) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double z = 0.5 * (x[static_cast<std::size_t>(i)] + 1.0);
      acc += 0.5 * w[static_cast<std::size_t>(i)] / std::sqrt((a + p * z * z) * (b + q * z * z));
    }
    return acc;
  }
  const double r = std::sqrt(a / p);
  const double smax = std::asinh(1.0 / r);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = 0.5 * smax * (x[static_cast<std::size_t>(i)] + 1.0);
    const double z = r * std::sinh(s);
    acc += 0.5 * smax * w[static_cast<std::size_t>(i)] / (std::sqrt(p) * std::sqrt(b + q * z * z));
  }
  return acc;
}

}  // namespace

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.spin() != sigma.spin()) throw InvariantViolation("fidelity: spins differ");
  const HermitianEigen er = hermitian_eigen(rho.matrix());
  const HermitianEigen es = hermitian_eigen(sigma.matrix());
  const int d = rho.spin().dimension();
  RVector sr = RVector::Zero(d), ss = RVector::Zero(d);
  for (int i = 0; i < d; ++i) {
    if (er.values(i) > kFidelityCutoff) sr(i) = std::sqrt(er.values(i));
    if (es.values(i) > kFidelityCutoff) ss(i) = std::sqrt(es.values(i));
  }
  const CMatrix m = ss.asDiagonal() * (es.vectors.adjoint() * er.vectors) * sr.asDiagonal();
  const double nuclear = Eigen::JacobiSVD<CMatrix>(m).singularValues().sum();
  return std::min(1.0, nuclear * nuclear);
}

double qfi(const DensityMatrix& rho, const Vec3& axis, double rank_tolerance, QfiForm form) {
  require_unit(axis);
  const Spectrum sp = clamped_spectrum(rho, rank_tolerance);
  const CMatrix jn = angular_momentum_operators(rho.spin()).along(axis);
  const CMatrix a = sp.vectors.adjoint() * jn * sp.vectors;
  const int d = rho.spin().dimension();
  double acc = 0.0;
  if (form == QfiForm::weighted_pairs) {
    for (int l = 0; l < d; ++l)
      for (int m = 0; m < d; ++m) acc += pair_weight(sp.lambda(l), sp.lambda(m)) * std::norm(a(l, m));
    return 2.0 * acc;
  }
  for (int l = 0; l < d; ++l) {
    if (sp.lambda(l) == 0.0) continue;
    for (int m = 0; m < d; ++m) {
      if (sp.lambda(m) == 0.0) continue;
      acc += sp.lambda(l) * sp.lambda(m) / (sp.lambda(l) + sp.lambda(m)) * std::norm(a(l, m));
    }
  }
  return 4.0 * (rho.matrix() * jn * jn).trace().real() - 8.0 * acc;
}

double pure_state_qfi(const PureState& psi, const Vec3& axis) {
  const CMatrix jn = component_along(psi.spin(), axis);
  const CVector v = jn * psi.amplitudes();
  const double mean = psi.amplitudes().dot(v).real();
  return 4.0 * (v.squaredNorm() - mean * mean);
}

Eigen::Vector3d QfiQuadraticForm::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Mat3> s(K);
  return s.eigenvalues();
}

double QfiQuadraticForm::isotropy_gap() const {
  const Eigen::Vector3d ev = eigenvalues();
  if (ev(2) <= 0.0) return 0.0;
  return (ev(2) - ev(0)) / ev(2);
}

QfiQuadraticForm qfi_quadratic_form(const DensityMatrix& rho, double rank_tolerance) {
  const Spectrum sp = clamped_spectrum(rho, rank_tolerance);
  const AngularMomentum ops = angular_momentum_operators(rho.spin());
  const CMatrix* comps[3] = {&ops.x, &ops.y, &ops.z};
  CMatrix a[3];
  for (int c = 0; c < 3; ++c) a[c] = sp.vectors.adjoint() * (*comps[c]) * sp.vectors;
  const int d = rho.spin().dimension();
  Eigen::MatrixXd p(d, d);
  for (int l = 0; l < d; ++l)
    for (int m = 0; m < d; ++m) p(l, m) = pair_weight(sp.lambda(l), sp.lambda(m));
  QfiQuadraticForm f{rho.spin(), Mat3::Zero()};
  for (int x = 0; x < 3; ++x)
    for (int y = x; y < 3; ++y) {
      const double v = 2.0 * (p.array() * (a[x].array() * a[y].array().conjugate()).real()).sum();
      f.K(x, y) = v;
      f.K(y, x) = v;
    }
  return f;
}

double averaged_qfi(const DensityMatrix& rho) { return qfi_quadratic_form(rho).averaged(); }

InverseQfiAverage averaged_inverse_qfi(const QfiQuadraticForm& form, int quadrature_order) {
  InverseQfiAverage out;
  const Eigen::Vector3d ev = form.eigenvalues();
  const double a = std::max(ev(0), 0.0), b = std::max(ev(1), 0.0), c = ev(2);
  if (c <= 0.0 || a <= 1e-12 * c) {
    out.value = std::numeric_limits<double>::infinity();
    out.finite = false;
    out.diagnostic = c <= 0.0 ? "QFI vanishes for every axis"
                              : "QFI vanishes along an axis; the average of its inverse diverges";
    return out;
  }
  const double p = c - a, q = c - b;
  int n = std::max(quadrature_order, 2);
  double prev = polar_integral(a, b, p, q, n);
  for (int rounds = 0; rounds < 12; ++rounds) {
    const int n2 = 2 * n;
    const double next = polar_integral(a, b, p, q, n2);
    out.last_change = std::abs(next - prev);
    n = n2;
    prev = next;
    if (out.last_change < 1e-8 && rounds > 0) break;
  }
  out.value = prev;
  out.order_used = n;
  return out;
}

InverseQfiAverage averaged_inverse_qfi(const DensityMatrix& rho, int quadrature_order) {
  return averaged_inverse_qfi(qfi_quadratic_form(rho), quadrature_order);
}

CrbReport crb_report(const DensityMatrix& rho, int quadrature_order) {
  const QfiQuadraticForm f = qfi_quadratic_form(rho);
  CrbReport r;
  r.averaged_qfi = f.averaged();
  r.averaged_inverse_qfi = averaged_inverse_qfi(f, quadrature_order).value;
  r.isotropy_gap = f.isotropy_gap();
  r.qcrb_lower_bound = 3.0 / (4.0 * rho.spin().casimir());
  return r;
}

TaylorCheck fidelity_taylor_check(const DensityMatrix& rho, const Vec3& axis,
                                  const std::vector<double>& etas) {
  const double info = qfi(rho, axis);
  TaylorCheck out;
  out.etas = etas;
  for (double eta : etas) {
    if (std::abs(eta) > 0.1) throw InvariantViolation("Taylor check: angles must not exceed 0.1");
    const CMatrix r = rotation_operator(rho.spin(), AxisAngle(axis, eta));
    const double inf = 1.0 - uhlmann_fidelity(rho, rho.transformed(r));
    const double pred = eta * eta * info / 4.0;
    out.infidelity.push_back(inf);
    out.predicted.push_back(pred);
    const double resid = pred > 0.0 ? std::abs(inf - pred) / pred : std::abs(inf);
    out.max_relative_residual = std::max(out.max_relative_residual, resid);
  }
  return out;
}

DensityMatrix FixedAxisOptimum::assembled() const { return DensityMatrix::mixture(weights, states); }

FixedAxisOptimum fixed_axis_optimum(SpinLabel spin, const std::vector<double>& weights) {
  if (weights.empty() || static_cast<int>(weights.size()) > spin.dimension())
    throw InvariantViolation("fixed-axis optimum: need between 1 and 2j+1 weights");
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0.0) throw InvariantViolation("fixed-axis optimum: negative weight");
    if (i > 0 && weights[i] > weights[i - 1])
      throw InvariantViolation("fixed-axis optimum: weights must be in descending order");
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvariantViolation("fixed-axis optimum: weights must sum to 1");

  FixedAxisOptimum out;
  out.weights = weights;
  const int d = spin.dimension();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const int l = static_cast<int>(i) + 1;
    const int pair = (l - 1) / 2;
    const int two_top = spin.two_j() - 2 * pair;  // 2(j - pair)
    out.max_qfi += 4.0 * weights[i] * 0.25 * two_top * two_top;
    const bool middle = !spin.half_integer() && l == d;
    const double norm = middle ? 0.5 : 1.0 / std::sqrt(2.0);
    const double sign = ((l - 1) % 2) ? -1.0 : 1.0;
    CVector v = CVector::Zero(d);
    v(spin.index_of_two_m(two_top)) += norm;
    v(spin.index_of_two_m(-two_top)) += sign * norm;
    out.states.emplace_back(spin, v);
  }
  return out;
}

}  // namespace rotosense
