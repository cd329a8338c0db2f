#include "commands.hpp"

#include "rotosense/anticoherence.hpp"
#include "rotosense/entanglement.hpp"
#include "rotosense/io.hpp"
#include "rotosense/metrology.hpp"
#include "rotosense/oqr.hpp"
#include "rotosense/subspaces.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace rotosense::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::string file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Numbers that JSON cannot carry are written as strings.
Json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "infinity" : "-infinity";
}

/// 15 significant digits, scientific.
std::string csv_number(double x) {
  if (std::isinf(x)) return x > 0 ? "infinity" : "-infinity";
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.14e", x);
  return buf;
}

std::string j_label(SpinLabel s) { return s.to_string(); }

std::string m_label(int two_m) {
  if (two_m % 2 == 0) return std::to_string(two_m / 2);
  return std::to_string(two_m) + "/2";
}

class Manifest {
 public:
  Manifest(std::string command_line, Json config, std::optional<std::uint64_t> seed)
      : start_(Clock::now()), command_(std::move(command_line)), config_(std::move(config)), seed_(seed) {}

  void add_input(const std::string& path, const std::string& bytes) { inputs_[path] = sha256_hex(bytes); }
  void add_output(const std::string& path, const std::string& bytes) { outputs_[path] = sha256_hex(bytes); }

  Json json() const {
    const double wall = std::chrono::duration<double>(Clock::now() - start_).count();
    Json j = {{"command", command_},     {"config", config_},   {"tool_version", kToolVersion},
              {"wall_time_seconds", wall}, {"input_hashes", inputs_}};
    j["seed"] = seed_ ? Json(*seed_) : Json(nullptr);
    if (!outputs_.empty()) j["output_hashes"] = outputs_;
    return j;
  }

 private:
  Clock::time_point start_;
  std::string command_;
  Json config_;
  std::optional<std::uint64_t> seed_;
  Json inputs_ = Json::object();
  Json outputs_ = Json::object();
};

StateFile load_state(const std::string& path, Manifest& m) {
  const std::string bytes = file_bytes(path);
  m.add_input(path, bytes);
  Json j;
  try {
    j = Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw FormatError(path + ": invalid JSON (" + e.what() + ")");
  }
  return parse_state(j);
}

/// Runs a command body, mapping load failures to exit 1.
template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const InvariantViolation& e) {
    std::cerr << "error: invariant violated: " << e.what() << "\n";
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const Json::exception& e) {
    std::cerr << "error: malformed file: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kInputError;
}

Json certificate_json(const SubspaceCertificate& c) {
  return {{"order_t", c.order_t},
          {"objective", c.objective_value},
          {"tolerance", c.tolerance},
          {"verified", c.verified},
          {"spot_check_max", c.spot_check_max},
          {"spot_check_passed", c.spot_check_passed}};
}

void emit(const std::string& path, const std::string& text, Manifest& m) {
  write_text_file(path, text);
  m.add_output(path, text);
}

}  // namespace

int run_qfi(const QfiOptions& o, const std::string& command_line) {
  return guarded([&] {
    Manifest m(command_line,
               {{"state_file", o.state_file}, {"axis", o.axis}, {"averaged", o.averaged},
                {"averaged_inverse", o.averaged_inverse}, {"quadrature_order", o.quadrature_order}},
               std::nullopt);
    const StateFile sf = load_state(o.state_file, m);
    const bool all = o.axis.empty() && !o.averaged && !o.averaged_inverse;
    Json report = {{"two_j", sf.rho.spin().two_j()}, {"kind", sf.kind}};
    const QfiQuadraticForm form = qfi_quadratic_form(sf.rho);
    if (!o.axis.empty()) {
      if (o.axis.size() != 3) throw InvariantViolation("--axis needs three components x,y,z");
      Vec3 n(o.axis[0], o.axis[1], o.axis[2]);
      if (n.norm() == 0.0) throw InvariantViolation("--axis must be nonzero");
      n.normalize();
      report["axis"] = {n.x(), n.y(), n.z()};
      report["qfi"] = number(qfi(sf.rho, n));
    }
    if (o.averaged || all) report["averaged_qfi"] = number(form.averaged());
    if (o.averaged_inverse || all) {
      const InverseQfiAverage inv = averaged_inverse_qfi(form, o.quadrature_order);
      report["averaged_inverse_qfi"] = number(inv.value);
      report["quadrature_order_used"] = inv.order_used;
      if (!inv.diagnostic.empty()) report["diagnostic"] = inv.diagnostic;
    }
    report["isotropy_gap"] = number(form.isotropy_gap());
    report["qcrb_lower_bound"] = number(qcrb_floor(sf.rho.spin(), 1).inverse_qfi_floor);
    const Eigen::Vector3d ev = form.eigenvalues();
    report["qfi_form_eigenvalues"] = {ev(0), ev(1), ev(2)};
    std::cout << Json{{"report", report}, {"manifest", m.json()}}.dump(2) << "\n";
    return static_cast<int>(kOk);
  });
}

int run_certify(const CertifyOptions& o, const std::string& command_line) {
  return guarded([&] {
    Manifest m(command_line, {{"state_file", o.state_file}}, std::nullopt);
    const StateFile sf = load_state(o.state_file, m);
    const OqrVerdict v = certify(sf.rho);
    Json verdict = {{"is_oqr_fidelity", v.is_oqr_fidelity},
                    {"is_oqr_qcrb", v.is_oqr_qcrb},
                    {"image_dimension", v.image_frame.k()},
                    {"image_g1", v.image_g1},
                    {"anticoherence_order2_violation", v.anticoherence_order2_violation},
                    {"isotropy_gap", number(v.isotropy_gap)},
                    {"averaged_qfi", number(v.averaged_qfi)},
                    {"averaged_inverse_qfi", number(v.qcrb)},
                    {"routes_agree", v.routes_agree},
                    {"tolerances",
                     {{"g1", v.tolerances.g1}, {"multipole", v.tolerances.multipole},
                      {"isotropy", v.tolerances.isotropy}, {"rank", v.tolerances.rank}}}};
    std::cout << Json{{"verdict", verdict}, {"manifest", m.json()}}.dump(2) << "\n";
    if (v.is_oqr_qcrb) return static_cast<int>(kOk);
    return static_cast<int>(v.is_oqr_fidelity ? kOqrFidelityOnly : kNotOqr);
  });
}

int run_search(const SearchOptions& o, const std::string& command_line) {
  return guarded([&] {
    if (!o.seed) throw InvariantViolation("--seed is required");
    const SpinLabel spin = SpinLabel::parse(o.j);
    Manifest m(command_line,
               {{"j", spin.to_string()}, {"k", o.k}, {"t", o.t}, {"restarts", o.restarts},
                {"max_iterations", o.max_iterations}, {"threshold", o.threshold},
                {"skip_bound_check", o.skip_bound_check}, {"out", o.out}},
               o.seed);
    if (o.t < 1) throw InvariantViolation("t must be >= 1");
    if (o.k < 1) throw InvariantViolation("k must be >= 1");
    const int bound = upper_bound_kmax(spin, o.t);
    if (o.k > bound && !o.skip_bound_check) {
      std::cerr << "k = " << o.k << " exceeds the upper bound floor((2j - t + 1)/(t + 1)) = " << bound
                << " for j = " << spin.to_string() << ", t = " << o.t << "\n";
      return static_cast<int>(kBoundExceeded);
    }
    SearchConfig cfg;
    cfg.restarts = o.restarts;
    cfg.seed = *o.seed;
    cfg.max_iterations = o.max_iterations;
    cfg.success_threshold = o.threshold;
    const SearchResult r = search_subspace(spin, o.k, o.t, cfg);

    const double objective = projector_objective_g_t(r.best.frame, o.t);
    Json file = subspace_json(r.best.frame, o.t, objective, o.seed);
    file["certificate"] = certificate_json(r.best);
    file["success"] = r.success;
    file["best_restart"] = r.best_restart;
    Json restarts = Json::array();
    for (const auto& rec : r.restarts)
      restarts.push_back({{"index", rec.index}, {"seed", rec.seed}, {"objective", rec.objective},
                          {"iterations", rec.iterations}, {"success", rec.success}});
    file["restarts"] = restarts;
    file["manifest"] = m.json();
    const std::string text = file.dump(2) + "\n";
    if (!o.out.empty()) write_text_file(o.out, text);
    else std::cout << text;
    std::cerr << (r.success ? "found" : "not found") << ": best objective " << csv_number(objective) << " (restart "
              << r.best_restart << ")\n";
    return static_cast<int>(r.success ? kOk : kNotFound);
  });
}

namespace {

void reproduce_fig1(const std::string& dir, Manifest& m) {
  std::ostringstream csv;
  csv << "xi,purity,inv_qfi,isotropy_gap\n";
  const int n = 200;
  for (int i = 0; i < n; ++i) {
    const double xi = i == n - 1 ? 1.0 : 0.2 + 0.8 * i / (n - 1);
    const DensityMatrix rho = spin2_family(xi);
    const QfiQuadraticForm form = qfi_quadratic_form(rho);
    csv << csv_number(xi) << "," << csv_number(rho.purity()) << "," << csv_number(averaged_inverse_qfi(form).value)
        << "," << csv_number(form.isotropy_gap()) << "\n";
  }
  emit(dir + "/fig1.csv", csv.str(), m);
}

void reproduce_kmax(const std::string& dir, const ReproduceOptions& o, Manifest& m) {
  const SpinLabel jmax = SpinLabel::parse(o.kmax_j_max);
  SearchConfig cfg;
  cfg.restarts = o.restarts;
  cfg.seed = *o.seed;
  std::ostringstream csv, notes;
  csv << "j,t,k,bound\n";
  for (int two_j = 2; two_j <= jmax.two_j(); ++two_j) {
    const SpinLabel spin(two_j);
    for (int t = 1; t <= 2; ++t) {
      const KmaxScan scan = kmax_scan(spin, t, cfg);
      csv << j_label(spin) << "," << t << "," << scan.k_max << "," << scan.bound << "\n";
      for (const auto& a : scan.anomalies) notes << j_label(spin) << "," << t << "," << a << "\n";
      std::cerr << "j=" << j_label(spin) << " t=" << t << " k_max=" << scan.k_max << " bound=" << scan.bound << "\n";
    }
  }
  emit(dir + "/kmax.csv", csv.str(), m);
  if (!notes.str().empty()) emit(dir + "/kmax_anomalies.csv", "j,t,note\n" + notes.str(), m);

  const SpinLabel cmax = SpinLabel::parse(o.construction_j_max);
  std::ostringstream cons;
  cons << "j,k1,k1_formula,k2,bound_t1,bound_t2\n";
  for (int two_j = 2; two_j <= cmax.two_j(); ++two_j) {
    const SpinLabel spin(two_j);
    int k2 = 0;
    if (two_j >= 10) {
      try {
        k2 = two_ac_parameters(spin).k2;
      } catch (const std::exception&) {
        k2 = 0;
      }
    }
    cons << j_label(spin) << "," << construct_one_ac_family(spin).k() << "," << one_ac_dimension_formula(spin)
         << "," << k2 << "," << upper_bound_kmax(spin, 1) << "," << upper_bound_kmax(spin, 2) << "\n";
  }
  emit(dir + "/constructions.csv", cons.str(), m);
}

void reproduce_negativity(const std::string& dir, Manifest& m) {
  std::ostringstream csv;
  csv << "j,k,t,lambda1,purity,N1,N2\n";
  for (const char* name : {"(2,2,1)", "(7/2,2,2)"}) {
    const CatalogEntry* e = find_catalog_entry(name);
    const SpinLabel spin = e->frame.spin();
    const int n = 101;
    for (int i = 0; i < n; ++i) {
      const double l1 = 0.5 + 0.5 * i / (n - 1);
      const DensityMatrix rho = DensityMatrix::mixture({l1, 1.0 - l1}, e->frame.basis());
      const double n1 = negativity(rho, Bipartition(1, spin.two_j())).negativity;
      const double n2 = negativity(rho, Bipartition(2, spin.two_j())).negativity;
      csv << j_label(spin) << "," << e->k << "," << e->t << "," << csv_number(l1) << "," << csv_number(rho.purity())
          << "," << csv_number(n1) << "," << csv_number(n2) << "\n";
    }
  }
  emit(dir + "/negativity.csv", csv.str(), m);
}

void reproduce_tables(const std::string& dir, Manifest& m) {
  std::ostringstream csv;
  csv << "j,t,k,state,m,re,im\n";
  auto write = [&](const SubspaceFrame& f, int t) {
    for (int a = 0; a < f.k(); ++a)
      for (int i = 0; i < f.spin().dimension(); ++i) {
        const Complex z = f.basis()[static_cast<std::size_t>(a)][i];
        csv << j_label(f.spin()) << "," << t << "," << f.k() << "," << a << "," << m_label(f.spin().two_m(i)) << "," << csv_number(z.real()) << "," << csv_number(z.imag()) << "\n";
      }
  };
  for (int two_j : {4, 7, 8}) write(construct_one_ac_family(SpinLabel(two_j)), 1);
  for (int two_j : {10, 22, 35}) write(construct_two_ac_family(SpinLabel(two_j)), 2);
  emit(dir + "/tables.csv", csv.str(), m);
}

}  // namespace

int run_reproduce(const ReproduceOptions& o, const std::string& command_line) {
  return guarded([&] {
    if (o.target == "kmax" && !o.seed) throw InvariantViolation("--seed is required for the kmax target");
    Manifest m(command_line,
               {{"target", o.target}, {"out", o.out_dir}, {"kmax_j_max", o.kmax_j_max},
                {"construction_j_max", o.construction_j_max}, {"restarts", o.restarts}},
               o.seed);
    std::filesystem::create_directories(o.out_dir);
    if (o.target == "fig1") reproduce_fig1(o.out_dir, m);
    else if (o.target == "kmax") reproduce_kmax(o.out_dir, o, m);
    else if (o.target == "negativity") reproduce_negativity(o.out_dir, m);
    else if (o.target == "tables") reproduce_tables(o.out_dir, m);
    else throw InvariantViolation("unknown target \"" + o.target + "\" (fig1, kmax, negativity, tables)");
    write_text_file(o.out_dir + "/" + o.target + "_manifest.json", m.json().dump(2) + "\n");
    return static_cast<int>(kOk);
  });
}

int run_catalog(const CatalogOptions& o, const std::string& command_line) {
  return guarded([&] {
    if (o.list) {
      Json rows = Json::array();
      for (const auto& e : catalog()) {
        const double g = objective_g_t(e.frame, e.t);
        rows.push_back({{"name", e.name}, {"j", e.frame.spin().to_string()}, {"k", e.k}, {"t", e.t},
                        {"residual", g}, {"tolerance", e.tolerance}, {"verified", g <= e.tolerance},
                        {"description", e.description}});
      }
      std::cout << rows.dump(2) << "\n";
      return static_cast<int>(kOk);
    }
    if (o.get.empty()) throw InvariantViolation("catalog needs --list or --get NAME");
    const CatalogEntry* e = find_catalog_entry(o.get);
    if (!e) {
      std::cerr << "error: no catalog entry named \"" << o.get << "\"\n";
      return static_cast<int>(kInputError);
    }
    Manifest m(command_line, {{"get", o.get}, {"out", o.out}}, std::nullopt);
    const SubspaceCertificate c = verify_subspace(e->frame, e->t, e->tolerance);
    if (!c.verified) throw InvariantViolation("catalog entry " + e->name + " fails verification");
    Json file = subspace_json(e->frame, e->t, c.objective_value, std::nullopt);
    file["name"] = e->name;
    file["certificate"] = certificate_json(c);
    file["manifest"] = m.json();
    const std::string text = file.dump(2) + "\n";
    if (!o.out.empty()) write_text_file(o.out, text);
    else std::cout << text;
    return static_cast<int>(kOk);
  });
}

int run_state(const StateOptions& o, const std::string& command_line) {
  return guarded([&] {
    const SpinLabel spin = SpinLabel::parse(o.j);
    Json j;
    if (o.kind == "coherent") {
      j = pure_state_json(PureState::basis(spin, spin.two_j()));
    } else if (o.kind == "ghz") {
      CVector v = CVector::Zero(spin.dimension());
      v(0) = v(spin.dimension() - 1) = 1.0 / std::sqrt(2.0);
      j = pure_state_json(PureState(spin, v));
    } else if (o.kind == "maximally-mixed") {
      j = mixed_matrix_json(DensityMatrix::maximally_mixed(spin));
    } else if (o.kind == "spin2-family") {
      j = mixed_matrix_json(spin2_family(o.param));
    } else if (o.kind == "spin3-family") {
      const EigenMixture em = eigen_mixture(spin3_oqr_family(o.param));
      j = mixed_eigen_json(em.weights, em.states);
    } else {
      throw InvariantViolation("unknown state kind \"" + o.kind +
                               "\" (coherent, ghz, maximally-mixed, spin2-family, spin3-family)");
    }
    j["generated_by"] = command_line;
    const std::string text = j.dump(2) + "\n";
    if (!o.out.empty()) write_text_file(o.out, text);
    else std::cout << text;
    return static_cast<int>(kOk);
  });
}

}  // namespace rotosense::cli
