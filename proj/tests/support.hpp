#pragma once

// Random generators and independent reference computations shared by the test suites.

#include "rotosense/spin.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <tuple>
#include <vector>

namespace testing {

using namespace rotosense;

inline CVector random_vector(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(g(rng), g(rng));
  return v / v.norm();
}

inline PureState random_pure(SpinLabel s, std::mt19937_64& rng) {
  return PureState::normalized(s, random_vector(s.dimension(), rng));
}

/// Ginibre ensemble: G G^dagger / Tr, full rank almost surely.
inline DensityMatrix random_mixed(SpinLabel s, std::mt19937_64& rng) {
  const int d = s.dimension();
  std::normal_distribution<double> g;
  CMatrix m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = Complex(g(rng), g(rng));
  CMatrix rho = m * m.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(s, 0.5 * (rho + rho.adjoint()));
}

/// Rank-r state with random orthonormal eigenvectors and uniform-simplex weights.
inline DensityMatrix random_rank(SpinLabel s, int r, std::mt19937_64& rng) {
  const int d = s.dimension();
  std::normal_distribution<double> g;
  CMatrix m(d, r);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < r; ++b) m(a, b) = Complex(g(rng), g(rng));
  const CMatrix q = Eigen::HouseholderQR<CMatrix>(m).householderQ() * CMatrix::Identity(d, r);
  std::exponential_distribution<double> e;
  std::vector<double> w(static_cast<std::size_t>(r));
  double tot = 0;
  for (auto& x : w) tot += (x = e(rng));
  CMatrix rho = CMatrix::Zero(d, d);
  for (int b = 0; b < r; ++b) rho += (w[static_cast<std::size_t>(b)] / tot) * q.col(b) * q.col(b).adjoint();
  return DensityMatrix(s, 0.5 * (rho + rho.adjoint()));
}

inline CMatrix random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) m(r, c) = Complex(g(rng), g(rng));
  return Eigen::HouseholderQR<CMatrix>(m).householderQ();
}

inline Vec3 random_axis(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec3 v(g(rng), g(rng), g(rng));
  return v.normalized();
}

inline double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

/// Lowering operator written out from its matrix elements, descending m.
inline CMatrix lowering(int two_j) {
  const int d = two_j + 1;
  CMatrix l = CMatrix::Zero(d, d);
  const double j = 0.5 * two_j;
  for (int i = 0; i + 1 < d; ++i) {
    const double m = j - i;
    l(i + 1, i) = std::sqrt(j * (j + 1) - m * (m - 1));
  }
  return l;
}

/// Dense Kronecker product.
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Clebsch-Gordan table built by orthogonalizing highest-weight vectors and
/// lowering them, with the Condon-Shortley phase <j1 j1; j2 J-j1 | J J> > 0.
class CouplingOracle {
 public:
  CouplingOracle(int two_j1, int two_j2) : tj1_(two_j1), tj2_(two_j2) {
    const int d1 = two_j1 + 1, d2 = two_j2 + 1, d = d1 * d2;
    const CMatrix lower = kron(lowering(two_j1), CMatrix::Identity(d2, d2)) + kron(CMatrix::Identity(d1, d1), lowering(two_j2));
    std::vector<CVector> built;
    for (int tJ = two_j1 + two_j2; tJ >= std::abs(two_j1 - two_j2); tJ -= 2) {
      CVector v = CVector::Zero(d);
      for (int i1 = 0; i1 < d1; ++i1)
        for (int i2 = 0; i2 < d2; ++i2)
          if ((two_j1 - 2 * i1) + (two_j2 - 2 * i2) == tJ) v(i1 * d2 + i2) = 1.0 + 0.1 * i1;
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : built) v -= b.dot(v) * b;
        v /= v.norm();
      }
      int lead = -1;
      for (int i2 = 0; i2 < d2; ++i2)
        if (two_j1 + two_j2 - 2 * i2 == tJ) lead = i2;
      if (v(lead).real() < 0) v = -v;
      for (int tM = tJ; tM >= -tJ; tM -= 2) {
        table_[{tJ, tM}] = v;
        built.push_back(v);
        if (tM > -tJ) {
          v = lower * v;
          v /= v.norm();
        }
      }
    }
  }

  double operator()(int two_m1, int two_m2, int two_J, int two_M) const {
    auto it = table_.find({two_J, two_M});
    if (it == table_.end() || two_m1 + two_m2 != two_M) return 0.0;
    if (std::abs(two_m1) > tj1_ || std::abs(two_m2) > tj2_) return 0.0;
    const int i1 = (tj1_ - two_m1) / 2, i2 = (tj2_ - two_m2) / 2;
    return it->second(i1 * (tj2_ + 1) + i2).real();
  }

 private:
  int tj1_, tj2_;
  std::map<std::pair<int, int>, CVector> table_;
};

/// Dicke state with `ones` excitations on n qubits, bit 0 the leftmost factor.
inline CVector dicke(int n, int ones) {
  CVector v = CVector::Zero(1 << n);
  int count = 0;
  for (int s = 0; s < (1 << n); ++s)
    if (__builtin_popcount(static_cast<unsigned>(s)) == ones) {
      v(s) = 1.0;
      ++count;
    }
  return v / std::sqrt(static_cast<double>(count));
}

/// Reduced state of the first t qubits computed in the full 2^N qubit space.
inline CMatrix qubit_reduced_state(const DensityMatrix& rho, int t) {
  const int n = rho.spin().two_j(), d = n + 1;
  CMatrix embed(1 << n, d);
  for (int i = 0; i < d; ++i) embed.col(i) = dicke(n, i);
  const CMatrix big = embed * rho.matrix() * embed.adjoint();
  const int da = 1 << t, db = 1 << (n - t);
  CMatrix red = CMatrix::Zero(da, da);
  for (int a = 0; a < da; ++a)
    for (int ap = 0; ap < da; ++ap)
      for (int b = 0; b < db; ++b) red(a, ap) += big((a << (n - t)) | b, (ap << (n - t)) | b);
  CMatrix sym(da, t + 1);
  for (int i = 0; i <= t; ++i) sym.col(i) = dicke(t, i);
  return sym.adjoint() * red * sym;
}

/// Gauss-Legendre nodes and weights from the Jacobi matrix eigenproblem.
inline std::pair<RVector, RVector> golub_welsch(int n) {
  Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) jm(k, k - 1) = jm(k - 1, k) = k / std::sqrt(4.0 * k * k - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jm);
  RVector w = 2.0 * es.eigenvectors().row(0).transpose().array().square();
  return {es.eigenvalues(), w};
}

/// Sphere average of 1/(n^T K n) on a Gauss-Legendre x trapezoid product grid.
inline double sphere_average_inverse(const Mat3& K, int n_theta, int n_phi) {
  const auto [u, w] = golub_welsch(n_theta);
  double acc = 0.0;
  for (int a = 0; a < n_theta; ++a) {
    const double s = std::sqrt(1.0 - u(a) * u(a));
    for (int b = 0; b < n_phi; ++b) {
      const double phi = 2.0 * std::numbers::pi * b / n_phi;
      const Vec3 n(s * std::cos(phi), s * std::sin(phi), u(a));
      acc += w(a) / n.dot(K * n);
    }
  }
  return acc / (2.0 * n_phi);
}

/// Fidelity from the spectrum of the non-Hermitian product rho sigma.
inline double product_spectrum_fidelity(const CMatrix& rho, const CMatrix& sigma) {
  Eigen::ComplexEigenSolver<CMatrix> es(rho * sigma);
  double acc = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) acc += std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
  return acc * acc;
}

}  // namespace testing
