#include "support.hpp"

#include <doctest.h>

using namespace rotosense;
using namespace testing;

TEST_CASE("spin labels parse, print and validate") {
  CHECK(SpinLabel::parse("3/2").two_j() == 3);
  CHECK(SpinLabel::parse("1.5").two_j() == 3);
  CHECK(SpinLabel::parse("2").two_j() == 4);
  CHECK(SpinLabel::from_j(2.5).two_j() == 5);
  CHECK(SpinLabel(3).to_string() == "3/2");
  CHECK(SpinLabel(4).to_string() == "2");
  CHECK(SpinLabel(7).half_integer());
  CHECK_FALSE(SpinLabel(8).half_integer());
  CHECK(SpinLabel(5).dimension() == 6);
  CHECK_THROWS_AS(SpinLabel(-1), InvariantViolation);
  CHECK_THROWS_AS(SpinLabel::parse("1.25"), InvariantViolation);
  CHECK_THROWS_AS(SpinLabel::parse("abc"), InvariantViolation);
}

TEST_CASE("pure states and density matrices enforce their invariants") {
  const SpinLabel s(2);
  CVector v(3);
  v << 1.0, 0.0, 0.0;
  CHECK_NOTHROW(PureState(s, v));
  v << 1.0, 1e-6, 0.0;
  CHECK_THROWS_AS(PureState(s, v), InvariantViolation);
  CHECK_THROWS_AS(PureState(s, CVector::Zero(2)), InvariantViolation);

  CMatrix m = CMatrix::Identity(3, 3) / 3.0;
  CHECK_NOTHROW(DensityMatrix(s, m));
  CMatrix bad = m;
  bad(0, 1) = 1e-9;
  CHECK_THROWS_AS(DensityMatrix(s, bad), InvariantViolation);  // not Hermitian
  CHECK_THROWS_AS(DensityMatrix(s, 2.0 * m), InvariantViolation);  // trace 2
  CMatrix neg = CMatrix::Zero(3, 3);
  neg(0, 0) = 1.1;
  neg(1, 1) = -0.1;
  CHECK_THROWS_AS(DensityMatrix(s, neg), InvariantViolation);  // not PSD
  CHECK(DensityMatrix::maximally_mixed(s).purity() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("angular momentum matrices") {
  const auto half = angular_momentum_operators(SpinLabel(1));
  CHECK(std::abs(half.z(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(half.z(1, 1) + 0.5) < 1e-15);

  const auto one = angular_momentum_operators(SpinLabel(2));
  const CMatrix casimir = one.x * one.x + one.y * one.y + one.z * one.z;
  CHECK(max_abs(casimir - 2.0 * CMatrix::Identity(3, 3)) < 1e-14);

  const auto three_half = angular_momentum_operators(SpinLabel(3));
  const Complex i(0, 1);
  CHECK(max_abs(three_half.x * three_half.y - three_half.y * three_half.x - i * three_half.z) < 1e-14);
}

TEST_CASE("su(2) commutation relations up to two_j = 40") {
  const Complex i(0, 1);
  for (int tj = 0; tj <= 40; ++tj) {
    const auto J = angular_momentum_operators(SpinLabel(tj));
    CHECK(max_abs(J.x * J.y - J.y * J.x - i * J.z) < 1e-12);
    CHECK(max_abs(J.y * J.z - J.z * J.y - i * J.x) < 1e-12);
    CHECK(max_abs(J.z * J.x - J.x * J.z - i * J.y) < 1e-12);
  }
}

TEST_CASE("components along axes") {
  const CMatrix jz = component_along(SpinLabel(2), Vec3(0, 0, 1));
  CMatrix expect = CMatrix::Zero(3, 3);
  expect(0, 0) = 1;
  expect(2, 2) = -1;
  CHECK(max_abs(jz - expect) < 1e-15);

  const CMatrix jx = component_along(SpinLabel(1), Vec3(1, 0, 0));
  CMatrix ex(2, 2);
  ex << 0, 0.5, 0.5, 0;
  CHECK(max_abs(jx - ex) < 1e-15);

  CHECK_THROWS_AS(component_along(SpinLabel(2), Vec3(1, 1, 0)), InvariantViolation);

  std::mt19937_64 rng(11);
  for (int tj = 1; tj <= 8; ++tj) {
    const SpinLabel s(tj);
    const RVector ev = hermitian_eigen(component_along(s, random_axis(rng))).values;
    for (int i = 0; i < s.dimension(); ++i) CHECK(std::abs(ev(i) - s.m(s.dimension() - 1 - i)) < 1e-12);
  }
}

TEST_CASE("rotation operators") {
  std::mt19937_64 rng(5);
  const Complex i(0, 1);
  for (int tj = 1; tj <= 8; ++tj) {
    const SpinLabel s(tj);
    const int d = s.dimension();
    const Vec3 n = random_axis(rng);
    CHECK(max_abs(rotation_operator(s, AxisAngle(n, 0.0)) - CMatrix::Identity(d, d)) < 1e-14);
    const CMatrix r = rotation_operator(s, AxisAngle(n, 0.7));
    CHECK(max_abs(r * r.adjoint() - CMatrix::Identity(d, d)) < 1e-12);
    CHECK(max_abs(r * rotation_operator(s, AxisAngle(n, -0.7)) - CMatrix::Identity(d, d)) < 1e-12);
    CHECK(max_abs(r * rotation_operator(s, AxisAngle(n, 1.1)) - rotation_operator(s, AxisAngle(n, 1.8))) < 1e-10);

    const CMatrix rz = rotation_operator(s, AxisAngle(Vec3(0, 0, 1), 0.3));
    for (int k = 0; k < d; ++k) CHECK(std::abs(rz(k, k) - std::exp(-i * 0.3 * s.m(k))) < 1e-13);

    // 2 pi rotation is (-1)^(2j).
    const CMatrix full = rotation_operator(s, AxisAngle(n, 2.0 * std::numbers::pi));
    CHECK(max_abs(full - (s.half_integer() ? -1.0 : 1.0) * CMatrix::Identity(d, d)) < 1e-11);
  }
  CHECK_THROWS_AS(AxisAngle(Vec3(0, 0, 2), 1.0), InvariantViolation);
}

TEST_CASE("rotations act covariantly on the angular momentum vector") {
  std::mt19937_64 rng(8);
  for (int tj = 1; tj <= 6; ++tj) {
    const SpinLabel s(tj);
    const AxisAngle a(random_axis(rng), 1.234);
    const CMatrix r = rotation_operator(s, a);
    const Vec3 n = random_axis(rng);
    CHECK(max_abs(r * component_along(s, n) * r.adjoint() - component_along(s, rotation_matrix(a) * n)) < 1e-11);
  }
}

TEST_CASE("Euler rotations") {
  const SpinLabel one(2);
  CHECK(max_abs(rotation_operator_euler(one, 0, 0, 0) - CMatrix::Identity(3, 3)) < 1e-15);
  const double al = 0.4, be = 1.1, ga = -0.8;
  const CVector v = rotation_operator_euler(one, al, be, ga) * PureState::basis(one, 0).amplitudes();
  const Complex i(0, 1);
  CHECK(std::abs(v(0) - (-std::exp(-i * al) * std::sin(be) / std::sqrt(2.0))) < 1e-13);
  CHECK(std::abs(v(1) - std::cos(be)) < 1e-13);
  CHECK(std::abs(v(2) - std::exp(i * al) * std::sin(be) / std::sqrt(2.0)) < 1e-13);

  // Composition agrees with SO(3) composition.
  std::mt19937_64 rng(3);
  for (int tj = 1; tj <= 6; ++tj) {
    const SpinLabel s(tj);
    const AxisAngle a(random_axis(rng), 0.9), b(random_axis(rng), -2.1);
    const Eigen::AngleAxisd composed(rotation_matrix(a) * rotation_matrix(b));
    const CMatrix prod = rotation_operator(s, a) * rotation_operator(s, b);
    const CMatrix direct = rotation_operator(s, AxisAngle(composed.axis(), composed.angle()));
    // Spinor representations agree up to the sign of SU(2).
    const double err = std::min(max_abs(prod - direct), max_abs(prod + direct));
    CHECK(err < 1e-10);
  }
}

TEST_CASE("Clebsch-Gordan coefficients") {
  CHECK(clebsch_gordan(1, 1, 1, 1, 2, 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(clebsch_gordan(1, 1, 1, -1, 0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(clebsch_gordan(1, -1, 1, 1, 0, 0) == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(clebsch_gordan(1, 1, 1, 1, 0, 0) == 0.0);   // m selection
  CHECK(clebsch_gordan(2, 0, 2, 0, 6, 0) == 0.0);   // triangle
  CHECK(clebsch_gordan(2, 4, 2, 0, 2, 4) == 0.0);   // |m| > j
}

TEST_CASE("Clebsch-Gordan coefficients agree with the lowering-operator oracle") {
  double worst = 0.0;
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b) {
      const CouplingOracle oracle(a, b);
      for (int J = std::abs(a - b); J <= a + b; J += 2)
        for (int M = -J; M <= J; M += 2)
          for (int m1 = -a; m1 <= a; m1 += 2) {
            const int m2 = M - m1;
            if (std::abs(m2) > b) continue;
            worst = std::max(worst, std::abs(clebsch_gordan(a, m1, b, m2, J, M) - oracle(m1, m2, J, M)));
          }
    }
  CHECK(worst < 1e-12);
}

TEST_CASE("Clebsch-Gordan transform is orthogonal for j1, j2 <= 4") {
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; b <= 8; ++b) {
      const int d = (a + 1) * (b + 1);
      Eigen::MatrixXd u = Eigen::MatrixXd::Zero(d, d);
      int col = 0;
      for (int J = std::abs(a - b); J <= a + b; J += 2)
        for (int M = -J; M <= J; M += 2, ++col)
          for (int i1 = 0; i1 <= a; ++i1)
            for (int i2 = 0; i2 <= b; ++i2)
              u(i1 * (b + 1) + i2, col) = clebsch_gordan(a, a - 2 * i1, b, b - 2 * i2, J, M);
      REQUIRE(col == d);
      CHECK((u.transpose() * u - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("symmetric split isometry matches Clebsch-Gordan coupling and the qubit picture") {
  for (int tj = 2; tj <= 10; ++tj) {
    const SpinLabel s(tj);
    for (int t = 1; t < tj; ++t) {
      const CMatrix e = symmetric_split_isometry(s, t);
      const int db = tj - t + 1;
      CHECK(max_abs(e.adjoint() * e - CMatrix::Identity(tj + 1, tj + 1)) < 1e-12);
      double worst = 0.0;
      for (int i = 0; i <= tj; ++i)
        for (int a = 0; a <= t; ++a)
          for (int b = 0; b < db; ++b)
            worst = std::max(worst, std::abs(e(a * db + b, i).real() -
                                             clebsch_gordan(t, t - 2 * a, tj - t, tj - t - 2 * b, tj, tj - 2 * i)));
      CHECK(worst < 1e-12);
    }
  }
  // |j,j> maps to the product of highest weights.
  const CMatrix e = symmetric_split_isometry(SpinLabel(5), 2);
  CHECK(std::abs(e(0, 0) - 1.0) < 1e-15);
}

TEST_CASE("eigen mixtures") {
  const SpinLabel s(2);
  const EigenMixture pure = eigen_mixture(DensityMatrix::pure(PureState::basis(s, 2)));
  CHECK(pure.rank() == 1);
  CHECK(pure.weights[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(pure.kernel.cols() == 2);

  const EigenMixture mm = eigen_mixture(DensityMatrix::maximally_mixed(s));
  CHECK(mm.rank() == 3);
  for (double w : mm.weights) CHECK(std::abs(w - 1.0 / 3.0) < 1e-14);

  std::mt19937_64 rng(21);
  for (int tj = 1; tj <= 8; ++tj) {
    const DensityMatrix rho = random_rank(SpinLabel(tj), std::min(3, tj + 1), rng);
    const EigenMixture em = eigen_mixture(rho);
    CHECK(em.rank() == std::min(3, tj + 1));
    CMatrix sum = CMatrix::Zero(tj + 1, tj + 1);
    for (int k = 0; k < em.rank(); ++k)
      sum += em.weights[static_cast<std::size_t>(k)] * em.states[static_cast<std::size_t>(k)].amplitudes() *
             em.states[static_cast<std::size_t>(k)].amplitudes().adjoint();
    CHECK(max_abs(sum - rho.matrix()) < 1e-10);
    for (int k = 1; k < em.rank(); ++k) CHECK(em.weights[static_cast<std::size_t>(k - 1)] >= em.weights[static_cast<std::size_t>(k)]);
    CHECK(max_abs(em.image_projector() + em.kernel_projector() - CMatrix::Identity(tj + 1, tj + 1)) < 1e-10);
  }
}
