#pragma once

#include "rotosense/spin.hpp"
#include "rotosense/subspaces.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rotosense {

using Json = nlohmann::json;

/// Raised for files that are unreadable or structurally malformed.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& where);
Json vector_to_json(const CVector& v);
CVector vector_from_json(const Json& j, const std::string& where);

/// A state file: kind is "pure", "mixed-eigen" or "mixed-matrix".
struct StateFile {
  std::string kind;
  DensityMatrix rho;
  std::optional<PureState> pure;
};

StateFile parse_state(const Json& j);
StateFile load_state_file(const std::string& path);

Json pure_state_json(const PureState& psi);
Json mixed_eigen_json(const std::vector<double>& weights, const std::vector<PureState>& states);
Json mixed_matrix_json(const DensityMatrix& rho);

struct SubspaceFile {
  SubspaceFrame frame;
  int t = 0;
  double objective = 0.0;
  std::optional<std::uint64_t> seed;
};

Json subspace_json(const SubspaceFrame& frame, int t, double objective, std::optional<std::uint64_t> seed);
SubspaceFile parse_subspace(const Json& j);
SubspaceFile load_subspace_file(const std::string& path);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace rotosense
