#include "rotosense/subspaces.hpp"

#include <cmath>

namespace rotosense {

namespace {

using std::sqrt;

PureState state(SpinLabel spin, std::initializer_list<Complex> amps) {
  CVector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (const Complex& a : amps) v(i++) = a;
  return PureState(spin, v);
}

// Sum of c |j, m> terms, m given doubled.
PureState combo(SpinLabel spin, std::initializer_list<std::pair<int, Complex>> terms) {
  CVector v = CVector::Zero(spin.dimension());
  for (const auto& [two_m, c] : terms) v(spin.index_of_two_m(two_m)) += c;
  return PureState(spin, v);
}

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> out;
  const Complex i(0.0, 1.0);

  {
    const SpinLabel s(4);
    out.push_back({"(2,2,1)", 2, 1, 1e-10, "spin-2 plane spanned by (1,0,+-sqrt2 i,0,1)/2",
                   SubspaceFrame(s, {state(s, {0.5, 0.0, sqrt(2.0) * i / 2.0, 0.0, 0.5}),
                                     state(s, {0.5, 0.0, -sqrt(2.0) * i / 2.0, 0.0, 0.5})})});
  }
  {
    const SpinLabel s(4);
    out.push_back({"(2,2,1)-rotated", 2, 1, 1e-10, "rotated copy of the spin-2 plane used for the Schmidt example",
                   SubspaceFrame(s, {combo(s, {{4, 1.0 / sqrt(3.0)}, {-2, sqrt(2.0 / 3.0)}}),
                                     combo(s, {{2, sqrt(2.0 / 3.0)}, {-4, -1.0 / sqrt(3.0)}})})});
  }
  {
    const SpinLabel s(5);
    const double r8 = sqrt(8.0);
    out.push_back({"(5/2,2,1)-V1", 2, 1, 1e-10, "spin-5/2 plane V1",
                   SubspaceFrame(s, {state(s, {sqrt(3.0) / r8, 0, 0, 0, sqrt(5.0) / r8, 0}),
                                     state(s, {0, -sqrt(5.0) / r8, 0, 0, 0, sqrt(3.0) / r8})})});
  }
  {
    const SpinLabel s(5);
    const double s7 = sqrt(7.0);
    const double a = sqrt(20.0 - 5.0 * s7) / 4.0, b = sqrt(10.0 * s7 - 20.0) / 4.0,
                 g = sqrt(16.0 - 5.0 * s7) / 4.0;
    out.push_back({"(5/2,2,1)-V2", 2, 1, 1e-10, "spin-5/2 plane V2",
                   SubspaceFrame(s, {state(s, {0, a, 0, -b, 0, g}), state(s, {g, 0, b, 0, a, 0})})});
  }
  {
    const SpinLabel s(6);
    out.push_back({"(3,3,1)", 3, 1, 1e-10, "spin-3 three-dimensional 1-AC subspace",
                   SubspaceFrame(s, {combo(s, {{6, sqrt(0.4)}, {-4, sqrt(0.6)}}),
                                     combo(s, {{4, -sqrt(0.6)}, {-6, sqrt(0.4)}}),
                                     PureState::basis(s, 0)})});
  }
  {
    const SpinLabel s(9);
    const double zeta = std::atan(2.0 * sqrt(7.0 / 5.0));
    const Complex ez = std::exp(i * zeta);
    const double p = sqrt(2.5) / 2.0, q = sqrt(1.5) / 2.0;
    out.push_back(
        {"(9/2,4,1)", 4, 1, 1e-10, "spin-9/2 four-dimensional 1-AC subspace",
         SubspaceFrame(s, {state(s, {0, 0, 0, p, 0, 0, 0, -q, 0, 0}),
                           state(s, {0, 0, -q, 0, 0, 0, -p, 0, 0, 0}),
                           state(s, {sqrt(5.5) / 4.0 * ez, 0, 0, 0, sqrt(3.0) / 4.0, 0, 0, 0, sqrt(7.5) / 4.0, 0}),
                           state(s, {0, sqrt(7.5) / 4.0, 0, 0, 0, -sqrt(3.0) / 4.0, 0, 0, 0, sqrt(5.5) / 4.0 * ez})})});
  }
  {
    const SpinLabel s(7);
    out.push_back({"(7/2,2,2)", 2, 2, 1e-10, "spin-7/2 2-AC plane",
                   SubspaceFrame(s, {combo(s, {{7, sqrt(0.3)}, {-3, sqrt(0.7)}}),
                                     combo(s, {{3, sqrt(0.7)}, {-7, -sqrt(0.3)}})})});
  }
  {
    const SpinLabel s(10);
    out.push_back({"(5,2,2)", 2, 2, 1e-10, "spin-5 2-AC plane",
                   SubspaceFrame(s, {combo(s, {{10, sqrt(2.0 / 7.0)}, {-4, sqrt(5.0 / 7.0)}}),
                                     combo(s, {{4, -sqrt(5.0 / 7.0)}, {-10, sqrt(2.0 / 7.0)}})})});
  }
  {
    const SpinLabel s(14);
    const Complex a(-0.4604769924899385, 0.2090691916016556), b(0.2215035777892046, -0.4925631870366248),
        c(0.3036273245094665, 0.3014334601129537), d(-0.1069092203207547, 0.2403277996106323),
        e(-0.3180190622270446, -0.3149505431871214), f(0.4395729087324888, 0.1474365706612073),
        g(0.4058433985142867, 0.1117167627487395), h(0.4038887232746600, 0.2292839547339512);
    const Complex z = 0.0;
    out.push_back({"(7,3,2)", 3, 2, 1e-8, "spin-7 three-dimensional 2-AC subspace (16-digit amplitudes)",
                   SubspaceFrame(s, {state(s, {z, z, a, z, z, b, z, z, c, z, z, d, z, z, e}),
                                     state(s, {e, z, z, d, z, z, c, z, z, b, z, z, a, z, z}),
                                     state(s, {z, f, z, z, g, z, z, h, z, z, g, z, z, f, z})})});
  }
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

const CatalogEntry* find_catalog_entry(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace rotosense
