#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rotosense::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Exit codes shared by the subcommands.
enum Exit : int {
  kOk = 0,
  kInputError = 1,
  kOqrFidelityOnly = 2,
  kNotOqr = 3,
  kNotFound = 4,
  kBoundExceeded = 5,
};

struct QfiOptions {
  std::string state_file;
  std::vector<double> axis;
  bool averaged = false;
  bool averaged_inverse = false;
  int quadrature_order = 16;
};

struct CertifyOptions {
  std::string state_file;
};

struct SearchOptions {
  std::string j;
  int k = 0;
  int t = 1;
  int restarts = 64;
  std::optional<std::uint64_t> seed;
  int max_iterations = 5000;
  double threshold = 1e-10;
  bool skip_bound_check = false;
  std::string out;
};

struct ReproduceOptions {
  std::string target;
  std::string out_dir;
  std::string kmax_j_max = "17/2";
  std::string construction_j_max = "40";
  int restarts = 64;
  std::optional<std::uint64_t> seed;
};

struct CatalogOptions {
  bool list = false;
  std::string get;
  std::string out;
};

struct StateOptions {
  std::string kind;
  std::string j = "1";
  double param = 0.0;
  std::string out;
};

int run_qfi(const QfiOptions& o, const std::string& command_line);
int run_certify(const CertifyOptions& o, const std::string& command_line);
int run_search(const SearchOptions& o, const std::string& command_line);
int run_reproduce(const ReproduceOptions& o, const std::string& command_line);
int run_catalog(const CatalogOptions& o, const std::string& command_line);
int run_state(const StateOptions& o, const std::string& command_line);

}  // namespace rotosense::cli
