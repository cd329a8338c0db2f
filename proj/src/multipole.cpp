#include "rotosense/multipole.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace rotosense {

namespace {

std::mutex cache_mutex;
std::map<int, std::shared_ptr<const MultipoleTable>> cache;

MultipoleBand build_band(SpinLabel spin, MultipoleIndex idx) {
  const int d = spin.dimension();
  const double scale = std::sqrt((2.0 * idx.L + 1.0) / static_cast<double>(d));
  MultipoleBand b;
  b.index = idx;
  b.offset = idx.M;
  b.first_col = std::max(0, idx.M);
  const int last_col = d - 1 + std::min(0, idx.M);
  for (int col = b.first_col; col <= last_col; ++col) {
    const int two_m = spin.two_m(col);
    const int two_mp = two_m + 2 * idx.M;
    b.band.push_back(scale * clebsch_gordan(spin.two_j(), two_m, 2 * idx.L, 2 * idx.M,
                                            spin.two_j(), two_mp));
  }
  return b;
}

CMatrix dense_from_band(SpinLabel spin, const MultipoleBand& b) {
  const int d = spin.dimension();
  CMatrix t = CMatrix::Zero(d, d);
  for (std::size_t n = 0; n < b.band.size(); ++n) {
    const int col = b.first_col + static_cast<int>(n);
    t(col - b.offset, col) = b.band[n];
  }
  return t;
}

void require_valid(SpinLabel spin, MultipoleIndex idx) {
  if (!valid_index(spin, idx))
    throw InvariantViolation("multipole index (L=" + std::to_string(idx.L) + ", M=" +
                             std::to_string(idx.M) + ") invalid for spin " + spin.to_string());
}

}  // namespace

MultipoleIndex MultipoleIndex::from_flat(int n) {
  const int L = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n)) + 1e-9));
  return {L, n - L * L - L};
}

bool valid_index(SpinLabel spin, MultipoleIndex idx) {
  return idx.L >= 0 && idx.L <= spin.two_j() && std::abs(idx.M) <= idx.L;
}

std::shared_ptr<const MultipoleTable> multipole_table(SpinLabel spin) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(spin.two_j());
  if (it != cache.end()) return it->second;
  auto table = std::make_shared<MultipoleTable>();
  table->spin = spin;
  const int d = spin.dimension();
  for (int n = 0; n < d * d; ++n) {
    const MultipoleIndex idx = MultipoleIndex::from_flat(n);
    table->bands.push_back(build_band(spin, idx));
    table->dense.push_back(dense_from_band(spin, table->bands.back()));
  }
  cache.emplace(spin.two_j(), table);
  return table;
}

CMatrix multipole_operator(SpinLabel spin, MultipoleIndex idx) {
  require_valid(spin, idx);
  return multipole_table(spin)->dense[static_cast<std::size_t>(idx.flat())];
}

CMatrix multipole_operator_uncached(SpinLabel spin, MultipoleIndex idx) {
  require_valid(spin, idx);
  return dense_from_band(spin, build_band(spin, idx));
}

MultipoleExpansion::MultipoleExpansion(SpinLabel s)
    : spin(s), coefficients(static_cast<std::size_t>(s.dimension() * s.dimension()), Complex(0.0)) {}

Complex MultipoleExpansion::operator()(int L, int M) const {
  require_valid(spin, {L, M});
  return coefficients[static_cast<std::size_t>(L * L + L + M)];
}

Complex& MultipoleExpansion::at(int L, int M) {
  require_valid(spin, {L, M});
  return coefficients[static_cast<std::size_t>(L * L + L + M)];
}

double MultipoleExpansion::conjugation_defect() const {
  double worst = 0.0;
  for (int L = 0; L <= spin.two_j(); ++L)
    for (int M = -L; M <= L; ++M) {
      const double sign = (M % 2) ? -1.0 : 1.0;
      worst = std::max(worst, std::abs(std::conj((*this)(L, M)) - sign * (*this)(L, -M)));
    }
  return worst;
}

MultipoleExpansion expand_operator(SpinLabel spin, const CMatrix& op) {
  const auto table = multipole_table(spin);
  MultipoleExpansion e(spin);
  for (std::size_t n = 0; n < e.coefficients.size(); ++n) {
    // Tr(op T^dagger) = sum over the band of op(row, col) * conj(T(row, col)).
    const MultipoleBand& b = table->bands[n];
    Complex acc = 0.0;
    for (std::size_t i = 0; i < b.band.size(); ++i) {
      const int col = b.first_col + static_cast<int>(i);
      acc += op(col - b.offset, col) * b.band[i];
    }
    e.coefficients[n] = acc;
  }
  return e;
}

MultipoleExpansion expand(const DensityMatrix& rho) { return expand_operator(rho.spin(), rho.matrix()); }

CMatrix reconstruct_operator(const MultipoleExpansion& e) {
  const auto table = multipole_table(e.spin);
  const int d = e.spin.dimension();
  CMatrix m = CMatrix::Zero(d, d);
  for (std::size_t n = 0; n < e.coefficients.size(); ++n)
    if (e.coefficients[n] != Complex(0.0)) m += e.coefficients[n] * table->dense[n];
  return m;
}

DensityMatrix reconstruct(const MultipoleExpansion& e) {
  const double defect = e.conjugation_defect();
  if (defect > 1e-12)
    throw InvariantViolation("multipole expansion: conjugation symmetry violated by " +
                             std::to_string(defect));
  return DensityMatrix(e.spin, reconstruct_operator(e));
}

Complex multipole_expectation(const DensityMatrix& rho, MultipoleIndex idx) {
  require_valid(rho.spin(), idx);
  const auto table = multipole_table(rho.spin());
  const MultipoleBand& b = table->bands[static_cast<std::size_t>(idx.flat())];
  Complex acc = 0.0;
  // Tr(rho T) = sum_{row,col} rho(col,row) T(row,col)
  for (std::size_t i = 0; i < b.band.size(); ++i) {
    const int col = b.first_col + static_cast<int>(i);
    acc += rho.matrix()(col, col - b.offset) * b.band[i];
  }
  return acc;
}

}  // namespace rotosense
