#include "rotosense/subspaces.hpp"

#include "rotosense/multipole.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace rotosense {

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// T Y for a band-stored multipole operator.
CMatrix apply_band(const MultipoleBand& b, const CMatrix& y) {
  CMatrix out = CMatrix::Zero(y.rows(), y.cols());
  for (std::size_t i = 0; i < b.band.size(); ++i) {
    const int col = b.first_col + static_cast<int>(i);
    out.row(col - b.offset) = b.band[i] * y.row(col);
  }
  return out;
}

CMatrix matrix_elements(const MultipoleTable& table, const CMatrix& y, int L, int M) {
  return y.adjoint() * apply_band(table.bands[static_cast<std::size_t>(L * L + L + M)], y);
}

}  // namespace

SubspaceFrame::SubspaceFrame(SpinLabel spin, std::vector<PureState> basis)
    : spin_(spin), basis_(std::move(basis)) {
  const int k = static_cast<int>(basis_.size());
  if (k < 1 || k > spin.dimension())
    throw InvariantViolation("subspace frame: k must lie in [1, 2j+1]");
  for (const auto& s : basis_)
    if (s.spin() != spin) throw InvariantViolation("subspace frame: basis states have different spins");
  const CMatrix y = matrix();
  const double defect = (y.adjoint() * y - CMatrix::Identity(k, k)).cwiseAbs().maxCoeff();
  if (defect > 1e-10) {
    std::ostringstream os;
    os << "subspace frame: basis not orthonormal (max Gram defect " << defect << ")";
    throw InvariantViolation(os.str());
  }
}

SubspaceFrame SubspaceFrame::from_columns(SpinLabel spin, const CMatrix& columns) {
  std::vector<PureState> states;
  for (int c = 0; c < columns.cols(); ++c) states.push_back(PureState::normalized(spin, columns.col(c)));
  return SubspaceFrame(spin, std::move(states));
}

CMatrix SubspaceFrame::matrix() const {
  CMatrix y(spin_.dimension(), k());
  for (int c = 0; c < k(); ++c) y.col(c) = basis_[static_cast<std::size_t>(c)].amplitudes();
  return y;
}

CMatrix SubspaceFrame::projector() const {
  const CMatrix y = matrix();
  return y * y.adjoint();
}

double objective_g_lm(const SubspaceFrame& frame, int L, int M) {
  if (!valid_index(frame.spin(), {L, M})) throw InvariantViolation("objective: invalid multipole index");
  const CMatrix a = matrix_elements(*multipole_table(frame.spin()), frame.matrix(), L, M);
  double acc = 0.0;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = r; c < a.cols(); ++c) acc += std::norm(a(r, c));
  return acc;
}

double projector_objective_g_lm(const SubspaceFrame& frame, int L, int M) {
  if (!valid_index(frame.spin(), {L, M})) throw InvariantViolation("objective: invalid multipole index");
  return matrix_elements(*multipole_table(frame.spin()), frame.matrix(), L, M).squaredNorm();
}

double projector_objective_g_t(SpinLabel spin, const CMatrix& columns, int t) {
  const auto table = multipole_table(spin);
  double acc = 0.0;
  for (int L = 1; L <= std::min(t, spin.two_j()); ++L)
    for (int M = -L; M <= L; ++M) acc += matrix_elements(*table, columns, L, M).squaredNorm();
  return acc;
}

double objective_g_t(const SubspaceFrame& frame, int t) {
  if (t < 1 || t > frame.spin().two_j()) throw InvariantViolation("objective: t must lie in [1, 2j]");
  double acc = 0.0;
  for (int L = 1; L <= t; ++L)
    for (int M = -L; M <= L; ++M) acc += objective_g_lm(frame, L, M);
  return acc;
}

double projector_objective_g_t(const SubspaceFrame& frame, int t) {
  if (t < 1 || t > frame.spin().two_j()) throw InvariantViolation("objective: t must lie in [1, 2j]");
  return projector_objective_g_t(frame.spin(), frame.matrix(), t);
}

SubspaceCertificate verify_subspace(const SubspaceFrame& frame, int t, double tolerance,
                                    int spot_checks, std::uint64_t spot_seed) {
  SubspaceCertificate cert{frame, t, objective_g_t(frame, t), tolerance, false, 0.0, false};
  cert.verified = cert.objective_value <= tolerance;
  const auto table = multipole_table(frame.spin());
  const CMatrix y = frame.matrix();
  std::mt19937_64 rng(spot_seed);
  std::normal_distribution<double> normal;
  auto random_in_span = [&] {
    CVector c(frame.k());
    for (int i = 0; i < frame.k(); ++i) c(i) = Complex(normal(rng), normal(rng));
    CVector v = y * c;
    return CVector(v / v.norm());
  };
  for (int s = 0; s < spot_checks; ++s) {
    const CVector chi1 = random_in_span();
    const CVector chi2 = random_in_span();
    for (int L = 1; L <= t; ++L)
      for (int M = -L; M <= L; ++M) {
        const CMatrix tv = apply_band(table->bands[static_cast<std::size_t>(L * L + L + M)], chi2);
        cert.spot_check_max = std::max(cert.spot_check_max, std::norm(chi1.dot(tv.col(0))));
      }
  }
  cert.spot_check_passed = cert.spot_check_max <= tolerance;
  return cert;
}

int upper_bound_kmax(SpinLabel spin, int t) {
  if (t < 1 || t > spin.two_j()) throw InvariantViolation("bound: t must lie in [1, 2j]");
  return (spin.two_j() - t + 1) / (t + 1);
}

int one_ac_dimension_formula(SpinLabel spin) {
  // floor((j-1)/2) = floor((2j-2)/4)
  const int base = floor_div(spin.two_j() - 2, 4);
  return spin.half_integer() ? base + 1 : base + 2;
}

SubspaceFrame construct_one_ac_family(SpinLabel spin) {
  const int two_j = spin.two_j();
  if (two_j < 2) throw InvariantViolation("1-AC construction needs j >= 1");
  const int d = spin.dimension();
  const int amax = floor_div(two_j - 2, 4);
  std::vector<PureState> states;
  for (int a = 0; a <= amax; ++a) {
    CVector v = CVector::Zero(d);
    v(2 * a) = 1.0 / std::sqrt(2.0);
    v(d - 1 - 2 * a) = 1.0 / std::sqrt(2.0);
    states.emplace_back(spin, v);
  }
  if (!spin.half_integer() && two_j - 3 - 4 * amax > 0) states.push_back(PureState::basis(spin, 0));
  return SubspaceFrame(spin, std::move(states));
}

TwoAcParameters two_ac_parameters(SpinLabel spin) {
  const double j = spin.j();
  if (spin.two_j() < 10) throw InvariantViolation("2-AC construction needs j >= 5");
  TwoAcParameters p;
  p.kappa = static_cast<int>(std::ceil(j - std::sqrt(j * (j + 1.0) / 3.0)));
  // (j - kappa - 3)/3 = (2j - 2 kappa - 6)/6
  p.k2 = std::min(floor_div(spin.two_j() - 2 * p.kappa - 6, 6), floor_div(p.kappa - 2, 3)) + 1;
  if (p.k2 < 1) throw InvariantViolation("2-AC construction: empty family for spin " + spin.to_string());
  for (int a = 0; a < p.k2; ++a) {
    const double m1 = j - 3.0 * a;
    const double m2 = j - 3.0 * a - 1.0 - p.kappa;
    const double u = (j * (j + 1.0) / 6.0 - 0.5 * m2 * m2) / (m1 * m1 - m2 * m2);
    if (!(u >= 0.0 && u <= 0.5)) {
      std::ostringstream os;
      os << "2-AC construction: no real amplitudes for spin " << spin.to_string() << ", a=" << a
         << " (alpha^2 = " << u << ", kappa = " << p.kappa << ")";
      throw std::runtime_error(os.str());
    }
    p.alpha.push_back(std::sqrt(u));
    p.beta.push_back(std::sqrt(0.5 - u));
  }
  return p;
}

SubspaceFrame construct_two_ac_family(SpinLabel spin) {
  const TwoAcParameters p = two_ac_parameters(spin);
  const int d = spin.dimension();
  std::vector<PureState> states;
  for (int a = 0; a < p.k2; ++a) {
    CVector v = CVector::Zero(d);
    const int i_alpha = 3 * a;
    const int i_beta = 3 * a + 1 + p.kappa;
    v(i_alpha) = p.alpha[static_cast<std::size_t>(a)];
    v(d - 1 - i_alpha) = p.alpha[static_cast<std::size_t>(a)];
    v(i_beta) = p.beta[static_cast<std::size_t>(a)];
    v(d - 1 - i_beta) = p.beta[static_cast<std::size_t>(a)];
    states.emplace_back(spin, v);
  }
  return SubspaceFrame(spin, std::move(states));
}

RotationMatch rotation_equivalent(const SubspaceFrame& fa, const SubspaceFrame& fb, double threshold) {
  if (fa.spin() != fb.spin() || fa.k() != fb.k())
    throw InvariantViolation("rotation equivalence: frames differ in spin or dimension");
  const SpinLabel spin = fa.spin();
  const int d = spin.dimension();
  const CMatrix pa = fa.projector();
  const CMatrix pb = fb.projector();
  const AngularMomentum ops = angular_momentum_operators(spin);
  const HermitianEigen ey = hermitian_eigen(ops.y);
  const Complex mi(0.0, -1.0);

  auto rz = [&](double ang) {
    CVector diag(d);
    for (int i = 0; i < d; ++i) diag(i) = std::exp(mi * ang * spin.m(i));
    return diag;
  };
  auto ry = [&](double ang) {
    CVector ph(d);
    for (int i = 0; i < d; ++i) ph(i) = std::exp(mi * ang * ey.values(i));
    return CMatrix(ey.vectors * ph.asDiagonal() * ey.vectors.adjoint());
  };
  auto flatten = [&](const CMatrix& m) {
    Eigen::VectorXd v(2 * d * d);
    for (int c = 0; c < d; ++c)
      for (int r = 0; r < d; ++r) {
        v(2 * (c * d + r)) = m(r, c).real();
        v(2 * (c * d + r) + 1) = m(r, c).imag();
      }
    return v;
  };

  struct Eval {
    Eigen::VectorXd r;
    Eigen::MatrixXd jac;
  };
  auto evaluate = [&](const Eigen::Vector3d& th) {
    const CVector za = rz(th(0)), zg = rz(th(2));
    const CMatrix yb = ry(th(1));
    const CMatrix r = za.asDiagonal() * yb * zg.asDiagonal();
    const CMatrix rpb = r * pb;
    Eval e;
    e.r = flatten(pa - rpb * r.adjoint());
    const CMatrix dr[3] = {mi * ops.z * r, za.asDiagonal() * (mi * ops.y) * yb * zg.asDiagonal(),
                           r * (mi * ops.z)};
    e.jac.resize(2 * d * d, 3);
    for (int c = 0; c < 3; ++c) {
      const CMatrix dm = dr[c] * pb * r.adjoint();
      e.jac.col(c) = -flatten(dm + dm.adjoint());
    }
    return e;
  };

  RotationMatch best;
  best.residual = std::numeric_limits<double>::infinity();
  const double pi = std::acos(-1.0);
  std::vector<Eigen::Vector3d> starts{{0.0, 0.0, 0.0}};
  for (int ia = 0; ia < 4; ++ia)
    for (int ib = 0; ib < 3; ++ib)
      for (int ig = 0; ig < 4; ++ig)
        starts.emplace_back(ia * pi / 2.0, (2 * ib + 1) * pi / 6.0, ig * pi / 2.0);

  for (const auto& start : starts) {
    Eigen::Vector3d th = start;
    Eval e = evaluate(th);
    double f = e.r.squaredNorm();
    double mu = 1e-3;
    for (int it = 0; it < 200 && f > 1e-30; ++it) {
      const Eigen::Matrix3d jtj = e.jac.transpose() * e.jac;
      const Eigen::Vector3d g = e.jac.transpose() * e.r;
      bool improved = false;
      for (int tries = 0; tries < 30; ++tries) {
        const Eigen::Matrix3d a = jtj + mu * Eigen::Matrix3d(jtj.diagonal().asDiagonal()) +
                                  1e-14 * Eigen::Matrix3d::Identity();
        const Eigen::Vector3d step = a.ldlt().solve(-g);
        const Eigen::Vector3d cand = th + step;
        Eval ec = evaluate(cand);
        const double fc = ec.r.squaredNorm();
        if (fc < f) {
          th = cand;
          e = std::move(ec);
          improved = f - fc > 1e-16 * f;
          f = fc;
          mu = std::max(mu / 3.0, 1e-12);
          break;
        }
        mu *= 4.0;
      }
      if (!improved) break;
    }
    const double res = std::sqrt(f);
    if (res < best.residual) {
      best.residual = res;
      best.alpha = th(0);
      best.beta = th(1);
      best.gamma = th(2);
    }
    if (best.residual <= 1e-3 * threshold) break;
  }
  best.equivalent = best.residual <= threshold;
  return best;
}

}  // namespace rotosense
