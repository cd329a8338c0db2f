#include "rotosense/multipole.hpp"

#include "support.hpp"

#include <doctest.h>

#include <thread>

using namespace rotosense;
using namespace testing;

namespace {

/// c with op = c * ref, or NaN when op is not a real multiple of ref.
double real_ratio(const CMatrix& op, const CMatrix& ref) {
  Eigen::Index r = 0, c = 0;
  ref.cwiseAbs().maxCoeff(&r, &c);
  const Complex k = op(r, c) / ref(r, c);
  if (std::abs(k.imag()) > 1e-12 || max_abs(op - k.real() * ref) > 1e-12) return std::nan("");
  return k.real();
}

}  // namespace

TEST_CASE("multipole indices") {
  for (int n = 0; n < 49; ++n) CHECK(MultipoleIndex::from_flat(n).flat() == n);
  CHECK(valid_index(SpinLabel(2), {2, -2}));
  CHECK_FALSE(valid_index(SpinLabel(2), {3, 0}));
  CHECK_FALSE(valid_index(SpinLabel(4), {1, 2}));
  CHECK_THROWS_AS(multipole_operator(SpinLabel(2), {3, 0}), InvariantViolation);
}

TEST_CASE("multipole operators are orthonormal with adjoint symmetry for j <= 8") {
  for (int tj = 0; tj <= 16; ++tj) {
    const SpinLabel s(tj);
    const auto table = multipole_table(s);
    const int n = (tj + 1) * (tj + 1);
    double ortho = 0.0, adj = 0.0;
    for (int a = 0; a < n; ++a) {
      const CMatrix& ta = table->dense[static_cast<std::size_t>(a)];
      for (int b = 0; b < n; ++b) {
        const Complex ip = (ta.adjoint() * table->dense[static_cast<std::size_t>(b)]).trace();
        ortho = std::max(ortho, std::abs(ip - (a == b ? 1.0 : 0.0)));
      }
      const auto idx = MultipoleIndex::from_flat(a);
      const double sign = idx.M % 2 == 0 ? 1.0 : -1.0;
      adj = std::max(adj, max_abs(CMatrix(ta.adjoint()) - sign * (*table)(idx.L, -idx.M)));
    }
    CHECK(ortho < 1e-12);
    CHECK(adj < 1e-12);
  }
}

TEST_CASE("low-order multipoles") {
  for (int tj = 1; tj <= 10; ++tj) {
    const SpinLabel s(tj);
    const int d = s.dimension();
    const double j = s.j();
    CHECK(max_abs(multipole_operator(s, {0, 0}) - CMatrix::Identity(d, d) / std::sqrt(double(d))) < 1e-14);
    for (int n = 1; n < d * d; ++n) CHECK(std::abs(multipole_operator(s, MultipoleIndex::from_flat(n)).trace()) < 1e-12);

    const auto J = angular_momentum_operators(s);
    const double c10 = real_ratio(multipole_operator(s, {1, 0}), J.z);
    CHECK(c10 == doctest::Approx(1.0 / std::sqrt(j * (j + 1) * (2 * j + 1) / 3.0)).epsilon(1e-12));
  }
}

TEST_CASE("multipoles are real multiples of ladder-operator products") {
  for (int tj = 2; tj <= 10; ++tj) {
    const SpinLabel s(tj);
    const double j = s.j();
    const auto J = angular_momentum_operators(s);
    const double norm1 = 1.0 / std::sqrt(2.0 * j * (j + 1) * (2 * j + 1) / 3.0);
    const double c11 = real_ratio(multipole_operator(s, {1, 1}), J.raising);
    const double c1m = real_ratio(multipole_operator(s, {1, -1}), J.lowering);
    CHECK(std::abs(c11) == doctest::Approx(norm1).epsilon(1e-12));
    CHECK(std::abs(c1m) == doctest::Approx(norm1).epsilon(1e-12));
    // Condon-Shortley phases give T_{1,+1} a negative constant.
    CHECK(c11 < 0.0);
    CHECK(c1m > 0.0);

    CHECK(std::isfinite(real_ratio(multipole_operator(s, {2, 2}), J.raising * J.raising)));
    CHECK(std::isfinite(real_ratio(multipole_operator(s, {2, -2}), J.lowering * J.lowering)));
    CHECK(real_ratio(multipole_operator(s, {2, 2}), J.raising * J.raising) > 0.0);
    CHECK(std::isfinite(real_ratio(multipole_operator(s, {2, 1}), J.z * J.raising + J.raising * J.z)));
    CHECK(std::isfinite(real_ratio(multipole_operator(s, {2, -1}), J.z * J.lowering + J.lowering * J.z)));
  }
}

TEST_CASE("multipole matrix elements agree with the coupling oracle") {
  for (int tj = 0; tj <= 6; ++tj) {
    const SpinLabel s(tj);
    const int d = s.dimension();
    double worst = 0.0;
    for (int L = 0; L <= tj; ++L) {
      const CouplingOracle cg(tj, 2 * L);
      for (int M = -L; M <= L; ++M) {
        const CMatrix t = multipole_operator(s, {L, M});
        for (int r = 0; r < d; ++r)
          for (int c = 0; c < d; ++c) {
            const double expect = std::sqrt((2.0 * L + 1) / d) * cg(s.two_m(c), 2 * M, tj, s.two_m(r));
            worst = std::max(worst, std::abs(t(r, c) - expect));
          }
      }
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("multipoles transform as irreducible tensors") {
  for (int tj = 1; tj <= 8; ++tj) {
    const SpinLabel s(tj);
    const auto J = angular_momentum_operators(s);
    double worst = 0.0;
    for (int L = 0; L <= tj; ++L)
      for (int M = -L; M <= L; ++M) {
        const CMatrix t = multipole_operator(s, {L, M});
        worst = std::max(worst, max_abs(J.z * t - t * J.z - double(M) * t));
        const CMatrix up = J.raising * t - t * J.raising;
        CMatrix expect_up = CMatrix::Zero(s.dimension(), s.dimension());
        if (M < L) expect_up = std::sqrt(double(L * (L + 1) - M * (M + 1))) * multipole_operator(s, {L, M + 1});
        worst = std::max(worst, max_abs(up - expect_up));
      }
    CHECK(worst < 1e-11);
  }
}

TEST_CASE("the operator cache is transparent and thread-safe") {
  for (int tj = 0; tj <= 9; ++tj) {
    const SpinLabel s(tj);
    for (int n = 0; n < s.dimension() * s.dimension(); ++n) {
      const auto idx = MultipoleIndex::from_flat(n);
      CHECK(max_abs(multipole_operator(s, idx) - multipole_operator_uncached(s, idx)) == 0.0);
    }
  }
  std::vector<std::shared_ptr<const MultipoleTable>> seen(8);
  std::vector<std::thread> pool;
  for (int i = 0; i < 8; ++i) pool.emplace_back([&, i] { seen[static_cast<std::size_t>(i)] = multipole_table(SpinLabel(23)); });
  for (auto& th : pool) th.join();
  for (const auto& p : seen) CHECK(p.get() == seen[0].get());
}

TEST_CASE("expansion and reconstruction") {
  const SpinLabel s(4);
  const MultipoleExpansion mm = expand(DensityMatrix::maximally_mixed(s));
  CHECK(std::abs(mm(0, 0) - 1.0 / std::sqrt(5.0)) < 1e-14);
  for (int n = 1; n < 25; ++n) CHECK(std::abs(mm.coefficients[static_cast<std::size_t>(n)]) < 1e-14);

  MultipoleExpansion only(s);
  only.at(0, 0) = 1.0 / std::sqrt(5.0);
  CHECK(max_abs(reconstruct(only).matrix() - CMatrix::Identity(5, 5) / 5.0) < 1e-14);

  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const SpinLabel sp(1 + i % 8);
    const DensityMatrix rho = random_mixed(sp, rng);
    const MultipoleExpansion e = expand(rho);
    CHECK(e.conjugation_defect() < 1e-12);
    CHECK(std::abs(e(0, 0) - 1.0 / std::sqrt(double(sp.dimension()))) < 1e-12);
    CHECK(max_abs(reconstruct(e).matrix() - rho.matrix()) < 1e-10);
    CHECK(std::abs(multipole_expectation(rho, {1, 0}) - std::conj(e(1, 0))) < 1e-12);
  }

  // Highest-weight state: only M = 0 components, real and nonzero.
  for (int tj = 1; tj <= 8; ++tj) {
    const SpinLabel sp(tj);
    const MultipoleExpansion e = expand(DensityMatrix::pure(PureState::basis(sp, tj)));
    for (int L = 0; L <= tj; ++L)
      for (int M = -L; M <= L; ++M) {
        if (M == 0) {
          CHECK(std::abs(e(L, 0).real()) > 1e-6);
          CHECK(std::abs(e(L, 0).imag()) < 1e-14);
        } else {
          CHECK(std::abs(e(L, M)) < 1e-14);
        }
      }
  }
}

TEST_CASE("reconstruction rejects invalid coefficient sets") {
  const SpinLabel s(3);
  MultipoleExpansion e(s);
  e.at(0, 0) = 0.5;
  e.at(1, 1) = Complex(0.1, 0.0);  // partner (1,-1) missing
  CHECK_THROWS_AS(reconstruct(e), InvariantViolation);

  MultipoleExpansion big(s);
  big.at(0, 0) = 0.5;
  big.at(1, 0) = 5.0;  // far outside the state space
  CHECK_THROWS_AS(reconstruct(big), InvariantViolation);
}

TEST_CASE("spin-3/2 maximal-purity 2-anticoherent state from octupole components") {
  const SpinLabel s(3);
  MultipoleExpansion e(s);
  e.at(0, 0) = 0.5;
  const double wc2 = 0.5 / std::sqrt(2.0);
  e.at(3, 2) = wc2;
  e.at(3, -2) = wc2;
  const DensityMatrix rho = reconstruct(e);
  const RVector ev = hermitian_eigen(rho.matrix()).values;
  CHECK(std::abs(ev(0)) < 1e-12);
  CHECK(std::abs(ev(1)) < 1e-12);
  CHECK(std::abs(ev(2) - 0.5) < 1e-12);
  CHECK(std::abs(ev(3) - 0.5) < 1e-12);
  CVector a(4), b(4);
  a << 1, 0, 1, 0;
  b << 0, -1, 0, 1;
  a /= std::sqrt(2.0);
  b /= std::sqrt(2.0);
  const CMatrix p = a * a.adjoint() + b * b.adjoint();
  CHECK(max_abs(2.0 * rho.matrix() - p) < 1e-12);

  const MultipoleExpansion back = expand(rho);
  for (int L = 1; L <= 2; ++L)
    for (int M = -L; M <= L; ++M) CHECK(std::abs(back(L, M)) < 1e-14);
}
