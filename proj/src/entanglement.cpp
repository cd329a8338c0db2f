#include "rotosense/entanglement.hpp"

#include <cmath>
#include <random>

namespace rotosense {

namespace {

constexpr double kZeroEigenvalue = 1e-9;

CMatrix amplitude_matrix(const PureState& psi, const Bipartition& bip) {
  const CVector v = embed_bipartite(psi, bip);
  CMatrix c(bip.dim_a(), bip.dim_b());
  for (int a = 0; a < bip.dim_a(); ++a)
    for (int b = 0; b < bip.dim_b(); ++b) c(a, b) = v(a * bip.dim_b() + b);
  return c;
}

double negativity_of(const CMatrix& pt) {
  const RVector ev = hermitian_eigen(pt).values;
  double acc = 0.0;
  for (int i = 0; i < ev.size(); ++i) acc += 0.5 * (std::abs(ev(i)) - ev(i));
  return acc;
}

void check_spin(const Bipartition& bip, SpinLabel spin) {
  if (bip.n_total != spin.two_j()) throw InvariantViolation("bipartition does not match the spin");
}

}  // namespace

Bipartition::Bipartition(int t_, int n_total_) : t(t_), n_total(n_total_) {
  if (t < 1 || t > n_total - 1)
    throw InvariantViolation("bipartition: t=" + std::to_string(t) + " outside [1, " +
                             std::to_string(n_total - 1) + "]");
}

CVector embed_bipartite(const PureState& psi, const Bipartition& bip) {
  check_spin(bip, psi.spin());
  return symmetric_split_isometry(psi.spin(), bip.t) * psi.amplitudes();
}

CMatrix embed_bipartite(const DensityMatrix& rho, const Bipartition& bip) {
  check_spin(bip, rho.spin());
  const CMatrix e = symmetric_split_isometry(rho.spin(), bip.t);
  return e * rho.matrix() * e.adjoint();
}

CMatrix partial_transpose_second(const CMatrix& op, int da, int db) {
  CMatrix out(op.rows(), op.cols());
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int ap = 0; ap < da; ++ap)
        for (int bp = 0; bp < db; ++bp) out(a * db + b, ap * db + bp) = op(a * db + bp, ap * db + b);
  return out;
}

CMatrix partial_transpose_first(const CMatrix& op, int da, int db) {
  CMatrix out(op.rows(), op.cols());
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int ap = 0; ap < da; ++ap)
        for (int bp = 0; bp < db; ++bp) out(a * db + b, ap * db + bp) = op(ap * db + b, a * db + bp);
  return out;
}

NegativityReport negativity(const DensityMatrix& rho, const Bipartition& bip) {
  const CMatrix pt = partial_transpose_second(embed_bipartite(rho, bip), bip.dim_a(), bip.dim_b());
  NegativityReport r{bip, 0.0, {}, hermitian_eigen(pt).values};
  for (int i = 0; i < r.spectrum.size(); ++i) {
    const double v = r.spectrum(i);
    r.negativity += 0.5 * (std::abs(v) - v);
    if (v < 0.0) r.negative_eigenvalues.push_back(v);
  }
  return r;
}

double negativity_first_factor(const DensityMatrix& rho, const Bipartition& bip) {
  return negativity_of(partial_transpose_first(embed_bipartite(rho, bip), bip.dim_a(), bip.dim_b()));
}

RVector schmidt_spectrum(const PureState& psi, const Bipartition& bip) {
  if (2 * bip.t > bip.n_total) throw InvariantViolation("Schmidt spectrum: requires t <= 2j - t");
  return Eigen::JacobiSVD<CMatrix>(amplitude_matrix(psi, bip)).singularValues();
}

Theorem1Report theorem1_suite(const SubspaceFrame& frame, int t, int weight_samples, std::uint64_t seed) {
  const SpinLabel spin = frame.spin();
  if (2 * t > spin.two_j()) throw InvariantViolation("theorem check: requires t <= j");
  const double g = objective_g_t(frame, t);
  if (g > 1e-8) throw InvariantViolation("theorem check: frame is not t-anticoherent (G_t = " + std::to_string(g) + ")");

  const Bipartition bip(t, spin.two_j());
  const int da = bip.dim_a(), db = bip.dim_b(), k = frame.k();
  Theorem1Report rep;
  rep.samples = weight_samples;
  rep.t = t;
  rep.expected = {(t + 1) * k, t * (t + 1) * k / 2, t * (t + 1) * k / 2,
                  (spin.two_j() - k * (t + 1) - t + 1) * (t + 1)};

  // phi^B_{m,alpha} = sqrt(t+1) * row alpha of the amplitude matrix, A basis = standard.
  CMatrix phi(db, k * da);
  for (int m = 0; m < k; ++m) {
    const CMatrix c = amplitude_matrix(frame.basis()[static_cast<std::size_t>(m)], bip);
    for (int a = 0; a < da; ++a) phi.col(m * da + a) = std::sqrt(static_cast<double>(t + 1)) * c.row(a).transpose();
  }
  rep.schmidt_orthonormality_error =
      (phi.adjoint() * phi - CMatrix::Identity(k * da, k * da)).cwiseAbs().maxCoeff();

  const CMatrix phic = phi.conjugate();
  CMatrix complement(db, 0);
  if (db > k * da) {
    Eigen::HouseholderQR<CMatrix> qr(phic);
    const CMatrix q = qr.householderQ();
    complement = q.rightCols(db - k * da);
  }

  struct FamilyVector {
    CVector v;
    int m;        // weight index, -1 for the kernel family
    double sign;  // eigenvalue sign relative to lambda_m/(t+1)
  };
  std::vector<FamilyVector> fam;
  auto product = [&](int a, const CVector& b) {
    CVector v = CVector::Zero(da * db);
    v.segment(a * db, db) = b;
    return v;
  };
  for (int m = 0; m < k; ++m)
    for (int a = 0; a < da; ++a) {
      fam.push_back({product(a, phic.col(m * da + a)), m, 1.0});
      ++rep.constructed.x;
    }
  for (int m = 0; m < k; ++m)
    for (int a = 0; a < da; ++a)
      for (int b = a + 1; b < da; ++b) {
        const CVector u = product(a, phic.col(m * da + b));
        const CVector w = product(b, phic.col(m * da + a));
        fam.push_back({(u + w) / std::sqrt(2.0), m, 1.0});
        fam.push_back({(u - w) / std::sqrt(2.0), m, -1.0});
        ++rep.constructed.y_plus;
        ++rep.constructed.y_minus;
      }
  for (int n = 0; n < complement.cols(); ++n)
    for (int a = 0; a < da; ++a) {
      fam.push_back({product(a, complement.col(n)), -1, 0.0});
      ++rep.constructed.z;
    }
  CMatrix basis(da * db, static_cast<Eigen::Index>(fam.size()));
  for (std::size_t i = 0; i < fam.size(); ++i) basis.col(static_cast<Eigen::Index>(i)) = fam[i].v;
  rep.family_basis_defect =
      basis.cols() == da * db
          ? (basis.adjoint() * basis - CMatrix::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff()
          : std::numeric_limits<double>::infinity();

  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  for (int s = 0; s < weight_samples; ++s) {
    std::vector<double> w(static_cast<std::size_t>(k));
    double total = 0.0;
    for (auto& x : w) total += (x = expo(rng));
    for (auto& x : w) x /= total;
    total = 0.0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) total += w[i];
    w.back() = 1.0 - total;
    const DensityMatrix rho = DensityMatrix::mixture(w, frame.basis());

    for (int tp = 1; tp <= t; ++tp) {
      const double n = negativity(rho, Bipartition(tp, spin.two_j())).negativity;
      rep.max_negativity_error = std::max(rep.max_negativity_error, std::abs(n - 0.5 * tp));
    }
    const CMatrix pt = partial_transpose_second(embed_bipartite(rho, bip), da, db);
    for (const auto& f : fam) {
      const double mu = f.m < 0 ? 0.0 : f.sign * w[static_cast<std::size_t>(f.m)] / (t + 1.0);
      rep.max_eigenvector_residual = std::max(rep.max_eigenvector_residual, (pt * f.v - mu * f.v).norm());
    }
    const RVector ev = hermitian_eigen(pt).values;
    int neg = 0, zero = 0, pos = 0;
    for (int i = 0; i < ev.size(); ++i) {
      if (ev(i) < -kZeroEigenvalue) ++neg;
      else if (ev(i) > kZeroEigenvalue) ++pos;
      else ++zero;
    }
    if (neg != rep.expected.y_minus || zero != rep.expected.z || pos != rep.expected.x + rep.expected.y_plus)
      rep.spectrum_counts_match = false;
  }
  rep.passed = rep.max_negativity_error <= 1e-9 && rep.schmidt_orthonormality_error <= 1e-9 &&
               rep.constructed == rep.expected && rep.max_eigenvector_residual <= 1e-9 &&
               rep.family_basis_defect <= 1e-9 && rep.spectrum_counts_match;
  return rep;
}

}  // namespace rotosense
