#include "rotosense/io.hpp"

#include <fstream>
#include <sstream>

namespace rotosense {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw FormatError(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

int two_j_of(const Json& j) {
  const Json& v = field(j, "two_j", "file");
  if (!v.is_number_integer() || v.get<int>() < 0)
    throw FormatError("file: \"two_j\" must be a non-negative integer");
  return v.get<int>();
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw FormatError(where + ": complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json vector_to_json(const CVector& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

CVector vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw FormatError(where + ": expected an array of [re, im] pairs");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

StateFile parse_state(const Json& j) {
  const SpinLabel spin(two_j_of(j));
  const Json& kind_field = field(j, "kind", "state file");
  if (!kind_field.is_string()) throw FormatError("state file: \"kind\" must be a string");
  const std::string kind = kind_field.get<std::string>();
  if (kind == "pure") {
    PureState psi(spin, vector_from_json(field(j, "amplitudes", "pure state"), "amplitudes"));
    return {kind, DensityMatrix::pure(psi), psi};
  }
  if (kind == "mixed-eigen") {
    const Json& w = field(j, "weights", "mixed-eigen state");
    const Json& s = field(j, "states", "mixed-eigen state");
    if (!w.is_array() || !s.is_array() || w.size() != s.size())
      throw FormatError("mixed-eigen state: \"weights\" and \"states\" must be arrays of equal length");
    std::vector<double> weights;
    std::vector<PureState> states;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (!w[i].is_number()) throw FormatError("mixed-eigen state: weights must be numbers");
      weights.push_back(w[i].get<double>());
      states.emplace_back(spin, vector_from_json(s[i], "states[" + std::to_string(i) + "]"));
    }
    // Eigenstates must be orthonormal.
    SubspaceFrame check(spin, states);
    (void)check;
    return {kind, DensityMatrix::mixture(weights, states), std::nullopt};
  }
  if (kind == "mixed-matrix") {
    const Json& rows = field(j, "matrix", "mixed-matrix state");
    const int d = spin.dimension();
    if (!rows.is_array() || static_cast<int>(rows.size()) != d)
      throw InvariantViolation("mixed-matrix state: expected " + std::to_string(d) + " rows");
    CMatrix m(d, d);
    for (int r = 0; r < d; ++r) {
      const CVector row = vector_from_json(rows[static_cast<std::size_t>(r)], "matrix[" + std::to_string(r) + "]");
      if (row.size() != d) throw InvariantViolation("mixed-matrix state: row " + std::to_string(r) + " has wrong length");
      m.row(r) = row.transpose();
    }
    return {kind, DensityMatrix(spin, m), std::nullopt};
  }
  throw FormatError("state file: unknown kind \"" + kind + "\"");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw FormatError(path + ": invalid JSON (" + e.what() + ")");
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
}

StateFile load_state_file(const std::string& path) { return parse_state(read_json_file(path)); }

Json pure_state_json(const PureState& psi) {
  return {{"two_j", psi.spin().two_j()}, {"kind", "pure"}, {"amplitudes", vector_to_json(psi.amplitudes())}};
}

Json mixed_eigen_json(const std::vector<double>& weights, const std::vector<PureState>& states) {
  if (states.empty()) throw InvariantViolation("mixed-eigen state needs at least one state");
  Json s = Json::array();
  for (const auto& st : states) s.push_back(vector_to_json(st.amplitudes()));
  return {{"two_j", states.front().spin().two_j()}, {"kind", "mixed-eigen"}, {"weights", weights}, {"states", s}};
}

Json mixed_matrix_json(const DensityMatrix& rho) {
  Json rows = Json::array();
  for (int r = 0; r < rho.matrix().rows(); ++r) rows.push_back(vector_to_json(rho.matrix().row(r).transpose()));
  return {{"two_j", rho.spin().two_j()}, {"kind", "mixed-matrix"}, {"matrix", rows}};
}

Json subspace_json(const SubspaceFrame& frame, int t, double objective, std::optional<std::uint64_t> seed) {
  Json basis = Json::array();
  for (const auto& s : frame.basis()) basis.push_back(vector_to_json(s.amplitudes()));
  Json j = {{"two_j", frame.spin().two_j()}, {"k", frame.k()}, {"t", t}, {"basis", basis}, {"objective", objective}};
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  return j;
}

SubspaceFile parse_subspace(const Json& j) {
  const SpinLabel spin(two_j_of(j));
  const Json& k = field(j, "k", "subspace file");
  const Json& t = field(j, "t", "subspace file");
  const Json& basis = field(j, "basis", "subspace file");
  if (!k.is_number_integer() || !t.is_number_integer() || !basis.is_array())
    throw FormatError("subspace file: \"k\" and \"t\" must be integers and \"basis\" an array");
  if (static_cast<int>(basis.size()) != k.get<int>())
    throw InvariantViolation("subspace file: basis has " + std::to_string(basis.size()) + " vectors but k = " +
                             std::to_string(k.get<int>()));
  std::vector<PureState> states;
  for (std::size_t i = 0; i < basis.size(); ++i)
    states.emplace_back(spin, vector_from_json(basis[i], "basis[" + std::to_string(i) + "]"));
  SubspaceFile out{SubspaceFrame(spin, std::move(states)), t.get<int>(), 0.0, std::nullopt};
  if (j.contains("objective") && j["objective"].is_number()) out.objective = j["objective"].get<double>();
  if (j.contains("seed") && j["seed"].is_number_unsigned()) out.seed = j["seed"].get<std::uint64_t>();
  return out;
}

SubspaceFile load_subspace_file(const std::string& path) { return parse_subspace(read_json_file(path)); }

}  // namespace rotosense
