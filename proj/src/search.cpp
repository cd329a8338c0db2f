#include "rotosense/multipole.hpp"
#include "rotosense/parallel.hpp"
#include "rotosense/subspaces.hpp"

#include <cmath>
#include <random>

namespace rotosense {

namespace {

struct Objective {
  SpinLabel spin;
  int t;
  std::shared_ptr<const MultipoleTable> table;

  CMatrix apply(const MultipoleBand& b, const CMatrix& y) const {
    CMatrix out = CMatrix::Zero(y.rows(), y.cols());
    for (std::size_t i = 0; i < b.band.size(); ++i) {
      const int col = b.first_col + static_cast<int>(i);
      out.row(col - b.offset) = b.band[i] * y.row(col);
    }
    return out;
  }

  double value(const CMatrix& y) const {
    double acc = 0.0;
    for (int n = 1; n < (t + 1) * (t + 1); ++n) {
      const CMatrix ty = apply(table->bands[static_cast<std::size_t>(n)], y);
      acc += (y.adjoint() * ty).squaredNorm();
    }
    return acc;
  }

  // Euclidean gradient 4 S(P) Y with S(P) = sum T P T^dagger, written as
  // 4 sum (T Y)(Y^dagger T Y)^dagger.
  double value_and_gradient(const CMatrix& y, CMatrix& grad) const {
    double acc = 0.0;
    grad = CMatrix::Zero(y.rows(), y.cols());
    for (int n = 1; n < (t + 1) * (t + 1); ++n) {
      const CMatrix ty = apply(table->bands[static_cast<std::size_t>(n)], y);
      const CMatrix a = y.adjoint() * ty;
      acc += a.squaredNorm();
      grad += ty * a.adjoint();
    }
    grad *= 4.0;
    return acc;
  }
};

CMatrix orthonormalize(const CMatrix& m) {
  Eigen::HouseholderQR<CMatrix> qr(m);
  CMatrix q = qr.householderQ() * CMatrix::Identity(m.rows(), m.cols());
  return q;
}

double real_inner(const CMatrix& a, const CMatrix& b) { return (a.adjoint() * b).trace().real(); }

struct RestartOutcome {
  RestartRecord record;
  CMatrix frame;
};

RestartOutcome run_restart(const Objective& obj, int k, const SearchConfig& cfg, int index) {
  const int d = obj.spin.dimension();
  RestartOutcome out;
  out.record.index = index;
  out.record.seed = splitmix64(cfg.seed + static_cast<std::uint64_t>(index));
  std::mt19937_64 rng(out.record.seed);
  std::normal_distribution<double> normal;
  CMatrix y(d, k);
  for (int c = 0; c < k; ++c)
    for (int r = 0; r < d; ++r) y(r, c) = Complex(normal(rng), normal(rng));
  y = orthonormalize(y);

  auto project = [&](const CMatrix& at, const CMatrix& v) { return CMatrix(v - at * (at.adjoint() * v)); };

  CMatrix egrad;
  double f = obj.value_and_gradient(y, egrad);
  CMatrix xi = project(y, egrad);
  CMatrix dir = -xi;
  double step = cfg.initial_step;
  double window_start = f;
  int it = 0;
  for (; it < cfg.max_iterations; ++it) {
    if (f <= cfg.polish_target) break;
    double slope = real_inner(xi, dir);
    if (slope >= 0.0) {
      dir = -xi;
      slope = -xi.squaredNorm();
    }
    if (slope == 0.0) break;
    double s = std::min(step * 2.0, 1e3);
    CMatrix ynew;
    double fnew = f;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      ynew = orthonormalize(y + s * dir);
      fnew = obj.value(ynew);
      if (fnew <= f + cfg.armijo * s * slope) {
        accepted = true;
        break;
      }
      s *= cfg.backtrack;
    }
    if (!accepted) break;
    step = s;
    CMatrix gnew;
    fnew = obj.value_and_gradient(ynew, gnew);
    const CMatrix xinew = project(ynew, gnew);
    const CMatrix xi_old_moved = project(ynew, xi);
    const double denom = xi.squaredNorm();
    double beta = denom > 0.0 ? real_inner(xinew, xinew - xi_old_moved) / denom : 0.0;
    beta = std::max(beta, 0.0);
    dir = -xinew + beta * project(ynew, dir);
    y = ynew;
    f = fnew;
    xi = xinew;
    if ((it + 1) % cfg.stall_window == 0) {
      if (window_start - f < cfg.stall_ratio * window_start) break;
      window_start = f;
    }
  }
  out.record.iterations = it;
  out.record.objective = f;
  out.record.success = f <= cfg.success_threshold;
  out.frame = y;
  return out;
}

}  // namespace

SearchResult search_subspace(SpinLabel spin, int k, int t, const SearchConfig& config) {
  if (k < 1 || k > spin.dimension()) throw InvariantViolation("search: k must lie in [1, 2j+1]");
  if (t < 1 || t > spin.two_j()) throw InvariantViolation("search: t must lie in [1, 2j]");
  if (config.restarts < 1) throw InvariantViolation("search: restarts must be >= 1");
  if (!(config.success_threshold > 0.0)) throw InvariantViolation("search: success threshold must be positive");
  const Objective obj{spin, t, multipole_table(spin)};
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.restarts));
  parallel_for(config.restarts, [&](int i) { outcomes[static_cast<std::size_t>(i)] = run_restart(obj, k, config, i); });

  int best = 0;
  for (int i = 1; i < config.restarts; ++i)
    if (outcomes[static_cast<std::size_t>(i)].record.objective < outcomes[static_cast<std::size_t>(best)].record.objective)
      best = i;
  const auto& win = outcomes[static_cast<std::size_t>(best)];
  SearchResult result{verify_subspace(SubspaceFrame::from_columns(spin, win.frame), t, config.success_threshold),
                      {}, best, win.record.success};
  for (const auto& o : outcomes) result.restarts.push_back(o.record);
  return result;
}

KmaxScan kmax_scan(SpinLabel spin, int t, const SearchConfig& config) {
  KmaxScan scan;
  scan.bound = upper_bound_kmax(spin, t);
  bool failed_before = false;
  for (int k = 1; k <= std::max(scan.bound, 1); ++k) {
    SearchConfig c = config;
    c.seed = splitmix64(config.seed ^ (static_cast<std::uint64_t>(k) << 32));
    scan.per_k.push_back(search_subspace(spin, k, t, c));
    if (scan.per_k.back().success) {
      if (failed_before)
        scan.anomalies.push_back("k=" + std::to_string(k) + " found after a smaller k failed");
      scan.k_max = k;
    } else {
      failed_before = true;
    }
  }
  return scan;
}

}  // namespace rotosense
