#include "commands.hpp"

#include <CLI11.hpp>

#include <string>

namespace {

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace rotosense::cli;
  const std::string command_line = join_args(argc, argv);

  CLI::App app{"Rotation-sensing metrology for spin-j states: QFI, anticoherence, subspace search"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  int code = kOk;

  QfiOptions qo;
  auto* qfi = app.add_subcommand("qfi", "Quantum Fisher information of a state file");
  qfi->add_option("state-file", qo.state_file, "state JSON")->required();
  qfi->add_option("--axis", qo.axis, "rotation axis x,y,z")->delimiter(',')->expected(3);
  qfi->add_flag("--averaged", qo.averaged, "axis-averaged QFI");
  qfi->add_flag("--averaged-inverse", qo.averaged_inverse, "axis-averaged inverse QFI");
  qfi->add_option("--quadrature-order", qo.quadrature_order, "initial polar quadrature order")
      ->check(CLI::PositiveNumber);
  qfi->callback([&] { code = run_qfi(qo, command_line); });

  CertifyOptions co;
  auto* cert = app.add_subcommand("certify", "OQR certification (exit 0 both criteria, 2 fidelity only, 3 neither)");
  cert->add_option("state-file", co.state_file, "state JSON")->required();
  cert->callback([&] { code = run_certify(co, command_line); });

  SearchOptions so;
  std::uint64_t search_seed = 0;
  auto* search = app.add_subcommand("search", "Search for a (j,k,t) anticoherent subspace (exit 0 found, 4 not, 5 bound)");
  search->add_option("--j", so.j, "spin, e.g. 2 or 7/2")->required();
  search->add_option("--k", so.k, "subspace dimension")->required();
  search->add_option("--t", so.t, "anticoherence order")->required();
  search->add_option("--restarts", so.restarts, "random restarts")->check(CLI::PositiveNumber);
  search->add_option("--seed", search_seed, "master seed")->required();
  search->add_option("--max-iterations", so.max_iterations, "iterations per restart")->check(CLI::PositiveNumber);
  search->add_option("--threshold", so.threshold, "success threshold on the objective");
  search->add_option("--out", so.out, "output subspace file");
  search->add_flag("--skip-bound-check", so.skip_bound_check, "search even when k exceeds the dimension bound");
  search->callback([&] {
    so.seed = search_seed;
    code = run_search(so, command_line);
  });

  ReproduceOptions ro;
  std::uint64_t reproduce_seed = 0;
  auto* rep = app.add_subcommand("reproduce", "Write CSV data for the figures and tables");
  rep->add_option("--target", ro.target, "fig1, kmax, negativity or tables")
      ->required()
      ->check(CLI::IsMember({"fig1", "kmax", "negativity", "tables"}));
  rep->add_option("--out", ro.out_dir, "output directory")->required();
  rep->add_option("--j-max", ro.kmax_j_max, "largest spin scanned by the kmax target");
  rep->add_option("--construction-j-max", ro.construction_j_max, "largest spin for the construction dimensions");
  rep->add_option("--restarts", ro.restarts, "restarts per search in the kmax target")->check(CLI::PositiveNumber);
  auto* rep_seed = rep->add_option("--seed", reproduce_seed, "master seed (kmax target)");
  rep->callback([&] {
    if (rep_seed->count()) ro.seed = reproduce_seed;
    code = run_reproduce(ro, command_line);
  });

  CatalogOptions cao;
  auto* cat = app.add_subcommand("catalog", "List or extract shipped anticoherent subspaces");
  auto* list = cat->add_flag("--list", cao.list, "list entries");
  cat->add_option("--get", cao.get, "entry name")->excludes(list);
  cat->add_option("--out", cao.out, "output subspace file");
  cat->callback([&] { code = run_catalog(cao, command_line); });

  StateOptions sto;
  auto* state = app.add_subcommand("state", "Write a state file for a named family");
  state->add_option("--kind", sto.kind, "coherent, ghz, maximally-mixed, spin2-family, spin3-family")->required();
  state->add_option("--j", sto.j, "spin (coherent, ghz, maximally-mixed)");
  state->add_option("--param", sto.param, "xi for spin2-family, lambda1 for spin3-family");
  state->add_option("--out", sto.out, "output state file");
  state->callback([&] { code = run_state(sto, command_line); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }
  return code;
}
