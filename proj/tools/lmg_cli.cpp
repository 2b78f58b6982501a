// Scenario runner for the dissipative LMG toolkit: reproduces the spectrum,
// gap-scan, stationary-state, dynamics and analytic curves as CSV files and
// runs the cross-validation audit.  One command per process; every run
// writes a JSON manifest next to its outputs.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <lmg/bosonic_lindblad.hpp>
#include <lmg/dynamics.hpp>
#include <lmg/hp_analytic.hpp>
#include <lmg/lmg_model.hpp>
#include <lmg/spectral.hpp>
#include <lmg/third_quantization.hpp>
#include <lmg/vec.hpp>

using json = nlohmann::json;
namespace fs = std::filesystem;
using namespace lmg;

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::vector<std::string>& header)
      : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open " + path.string());
    for (size_t k = 0; k < header.size(); ++k)
      out_ << (k ? "," : "") << header[k];
    out_ << "\n";
  }
  void row(const std::vector<double>& values) {
    for (size_t k = 0; k < values.size(); ++k)
      out_ << (k ? "," : "") << fmt(values[k]);
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

ModelParams parse_params(const json& cfg) {
  const json& p = cfg.at("params");
  ModelParams out;
  out.S = p.at("S").get<double>();
  out.Lambda = p.at("Lambda").get<double>();
  out.gamma = p.at("gamma").get<double>();
  out.T = p.at("T").get<double>();
  out.validate();
  return out;
}

std::vector<double> time_grid(const json& cfg) {
  const double t_max = cfg.value("t_max", 60.0);
  const double dt = cfg.value("dt", 0.25);
  if (!(t_max > 0.0) || !(dt > 0.0)) throw invalid_parameter_error("bad time grid");
  std::vector<double> grid;
  for (double t = 0.0; t <= t_max + 1e-12; t += dt) grid.push_back(t);
  return grid;
}

std::vector<double> lambda_grid(const json& cfg) {
  const json& g = cfg.at("lambda_grid");
  std::vector<double> grid;
  if (g.is_array()) {
    grid = g.get<std::vector<double>>();
  } else {
    const double from = g.at("from").get<double>();
    const double to = g.at("to").get<double>();
    const int count = g.at("count").get<int>();
    for (int k = 0; k < count; ++k)
      grid.push_back(count == 1 ? from : from + (to - from) * k / (count - 1));
  }
  return grid;
}

InitialStateSpec parse_initial_state(const json& node, double lambda) {
  InitialStateSpec spec;
  const std::string kind = node.value("kind", "rotated_stretched");
  if (kind == "rotated_ground")
    spec.kind = InitialStateKind::rotated_ground;
  else if (kind == "rotated_stretched")
    spec.kind = InitialStateKind::rotated_stretched;
  else
    throw invalid_parameter_error("unknown initial-state kind: " + kind);
  if (node.contains("theta_offset"))
    spec.theta = semiclassical_magnetization(lambda).theta0 +
                 node.at("theta_offset").get<double>();
  else
    spec.theta = node.value("theta", 0.0);
  return spec;
}

struct InvariantLog {
  json entries = json::object();
  bool violated = false;

  void record(const std::string& name, double residual, double tolerance) {
    const bool ok = residual <= tolerance;
    entries[name] = {{"residual", residual}, {"tolerance", tolerance}, {"pass", ok}};
    if (!ok) violated = true;
  }
};

double left_null_residual(const MatrixXcd& superop,
                          const std::vector<std::pair<int, int>>& pairs) {
  VectorXcd tr_row = VectorXcd::Zero(superop.rows());
  for (size_t r = 0; r < pairs.size(); ++r)
    if (pairs[r].first == pairs[r].second) tr_row[r] = 1.0;
  return (tr_row.transpose() * superop).cwiseAbs().maxCoeff();
}

int run_spectrum(const json& cfg, const fs::path& out_dir, InvariantLog& inv,
                 json& manifest) {
  const ModelParams p = parse_params(cfg);
  const int K = cfg.value("K", 51);
  std::optional<double> band;
  if (cfg.contains("band_quanta") && !cfg.at("band_quanta").is_null())
    band = cfg.at("band_quanta").get<double>();
  const int leading = cfg.value("leading", 12);
  const double pair_tol = cfg.value("pair_tol", 1e-6);

  const RestrictedSuperoperator rsup = restricted_superoperator(p, K, band);
  inv.record("left_null", left_null_residual(rsup.matrix, rsup.pairs), 1e-10);
  const SpectrumResult spec = diagonalize(rsup);
  const PairReport pairs = detect_pairs(spec, pair_tol, leading);

  std::vector<int> pair_id(spec.eigenvalues.size(), -1);
  for (size_t k = 0; k < pairs.entries.size(); ++k) {
    pair_id[pairs.entries[k].plus_index] = static_cast<int>(k);
    pair_id[pairs.entries[k].minus_index] = static_cast<int>(k);
  }

  CsvWriter csv(out_dir / "spectrum.csv", {"re", "im", "sector", "pair_id"});
  for (int k = 0; k < spec.eigenvalues.size(); ++k)
    csv.row({spec.eigenvalues[k].real(), spec.eigenvalues[k].imag(),
             double(spec.sectors[k]), double(pair_id[k])});
  manifest["outputs"].push_back("spectrum.csv");
  manifest["pair_count"] = pairs.entries.size();
  return 0;
}

int run_gap_scan(const json& cfg, const fs::path& out_dir, InvariantLog& inv,
                 json& manifest) {
  const ModelParams p = parse_params(cfg);
  const int K = cfg.value("K", 51);
  std::optional<double> band;
  if (cfg.contains("band_quanta") && !cfg.at("band_quanta").is_null())
    band = cfg.at("band_quanta").get<double>();
  const auto grid = lambda_grid(cfg);

  const auto rows = gap_scan(p, grid, K, band);
  CsvWriter csv(out_dir / "gap_scan.csv",
                {"lambda_coupling", "re_lp1", "re_lm0", "im_lm0"});
  for (const auto& row : rows)
    csv.row({row.Lambda, row.lambda_p1.real(), row.lambda_m0.real(),
             row.lambda_m0.imag()});
  manifest["outputs"].push_back("gap_scan.csv");
  inv.record("spectra_in_left_half_plane", 0.0, 1.0);
  return 0;
}

int run_stationary(const json& cfg, const fs::path& out_dir, InvariantLog& inv,
                   json& manifest) {
  const ModelParams p = parse_params(cfg);
  const int K = cfg.value("K", 41);
  const RestrictedSuperoperator rsup = restricted_superoperator(p, K);
  inv.record("left_null", left_null_residual(rsup.matrix, rsup.pairs), 1e-10);
  const SpectrumResult spec = diagonalize(rsup);
  const RestrictedBasis basis = restricted_basis(p, K);

  const MatrixXcd rho_plus = basis.lift(stationary_state(spec));
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho_plus, Eigen::EigenvaluesOnly);
  inv.record("stationary_psd", std::max(0.0, -es.eigenvalues().minCoeff()), 1e-8);
  inv.record("stationary_trace", std::abs(rho_plus.trace().real() - 1.0), 1e-10);

  // leading odd-sector eigenoperator, oriented toward positive S_x
  MatrixXcd rho_minus = MatrixXcd::Zero(p.dim(), p.dim());
  for (int k = 0; k < spec.eigenvalues.size(); ++k)
    if (spec.sectors[k] == -1) {
      rho_minus = orient_positive_sx(
          basis.lift(unvec(spec.eigenvectors.col(k), K)), p.S);
      manifest["lambda_minus0"] = {{"re", spec.eigenvalues[k].real()},
                                   {"im", spec.eigenvalues[k].imag()}};
      break;
    }
  const MatrixXcd combined = symmetry_broken_combination(rho_plus, rho_minus);

  const auto h_plus = sx_basis_diagonal(rho_plus, p.S);
  const auto h_minus = sx_basis_diagonal(rho_minus, p.S);
  const auto h_comb = sx_basis_diagonal(combined, p.S);
  CsvWriter csv(out_dir / "stationary.csv",
                {"sx", "w_stationary", "w_minus", "w_combined"});
  for (size_t k = 0; k < h_plus.size(); ++k)
    csv.row({h_plus[k].first, h_plus[k].second, h_minus[k].second,
             h_comb[k].second});
  manifest["outputs"].push_back("stationary.csv");
  return 0;
}

int run_dynamics(const json& cfg, const fs::path& out_dir, InvariantLog& inv,
                 json& manifest) {
  const ModelParams p = parse_params(cfg);
  const auto grid = time_grid(cfg);
  EvolveOptions opt;
  opt.rtol = cfg.value("rtol", 1e-8);
  opt.atol = cfg.value("atol", 1e-10);
  opt.track_min_eigenvalue = cfg.value("track_min_eigenvalue", true);
  opt.restrict_levels = cfg.value("restrict_levels", 0);

  std::vector<json> states;
  if (cfg.contains("initial_states"))
    for (const auto& node : cfg.at("initial_states")) states.push_back(node);
  else
    states.push_back(cfg.value("initial_state", json{{"kind", "rotated_stretched"},
                                                     {"theta", 0.0}}));

  double worst_trace = 0.0, worst_eig = 0.0;
  for (size_t s = 0; s < states.size(); ++s) {
    const InitialStateSpec spec = parse_initial_state(states[s], p.Lambda);
    const MatrixXcd rho0 = initial_state(p, spec);
    const Trajectory traj = evolve(p, rho0, grid, opt);

    const std::string name =
        states.size() == 1 ? "dynamics.csv" : "dynamics_" + std::to_string(s) + ".csv";
    CsvWriter csv(out_dir / name,
                  {"t", "sx", "sy", "sz", "energy", "trace_err", "min_eig"});
    for (int g = 0; g < traj.times.size(); ++g) {
      const double min_eig =
          traj.has_min_eigenvalue ? traj.min_eigenvalue[g] : std::nan("");
      csv.row({traj.times[g], traj.sx[g] / p.S, traj.sy[g] / p.S, traj.sz[g] / p.S,
               traj.energy[g] / p.S, traj.trace_error[g], min_eig});
      worst_trace = std::max(worst_trace, traj.trace_error[g]);
      if (traj.has_min_eigenvalue)
        worst_eig = std::max(worst_eig, -traj.min_eigenvalue[g]);
    }
    manifest["outputs"].push_back(name);
  }
  inv.record("trace_preservation", worst_trace, 1e-8);
  if (opt.track_min_eigenvalue) inv.record("positivity", worst_eig, 1e-8);
  return 0;
}

int run_analytic(const json& cfg, const fs::path& out_dir, InvariantLog& inv,
                 json& manifest) {
  const ModelParams p = parse_params(cfg);
  const auto grid = time_grid(cfg);
  double theta = cfg.value("theta", 0.0);
  if (cfg.contains("theta_over_sqrt_S") && cfg.at("theta_over_sqrt_S").get<bool>())
    theta = 1.0 / std::sqrt(p.S);

  // closed forms exist in the symmetric phase only
  const HpParams hp = hp_params(p.Lambda, p.T);
  if (hp.Lambda >= 1.0)
    throw unsupported_regime_error("analytic command requires Lambda < 1");

  CsvWriter csv(out_dir / "analytic.csv",
                {"t", "mx", "my", "mz", "energy", "energy_no_fs", "T_S"});
  for (double t : grid) {
    const MagnetizationCurve m = magnetization_hp(p.Lambda, p.T, p.gamma, t, theta, p.S);
    const EnergyExpectation e =
        energy_expectation_hp(p.Lambda, p.T, p.gamma, t, theta, p.S);
    csv.row({t, m.mx, m.my, m.mz, e.finite_size, e.bulk,
             effective_temperature(p.Lambda, p.T, p.gamma, t)});
  }
  manifest["outputs"].push_back("analytic.csv");
  const double id_residual =
      std::abs(hp.b_minus * hp.b_minus - hp.b_plus * hp.b_plus - hp.mz);
  inv.record("coefficient_identity", id_residual, 1e-12);
  return 0;
}

int run_oracle(const json& cfg, const fs::path& out_dir, InvariantLog& inv,
               json& manifest) {
  const ModelParams p = parse_params(cfg);
  const int n_max = cfg.value("n_max", 40);
  const std::string mode = cfg.value("mode", "stationary");

  if (mode == "spectrum") {
    const MatrixXcd sup = bosonic_superoperator(p.Lambda, p.gamma, p.T, n_max);
    inv.record("left_null", left_null_residual(sup, {}), 1e-10);
    std::vector<std::pair<int, int>> pairs;
    const SpectrumResult spec =
        diagonalize(sup, bosonic_parity_diagonal(n_max), {},
                    DiagonalizeMethod::sector_real);
    CsvWriter csv(out_dir / "oracle.csv",
                  {"delta", "n", "re_analytic", "im_analytic", "re_numeric",
                   "im_numeric", "abs_err"});
    const int delta_max = cfg.value("delta_max", 2), n_quanta = cfg.value("n_quanta", 2);
    for (int delta = -delta_max; delta <= delta_max; ++delta)
      for (int n = 0; n <= n_quanta; ++n) {
        const Complex target = liouvillian_eigenvalue(delta, n, p.Lambda, p.gamma);
        Complex best = spec.eigenvalues[0];
        for (int k = 0; k < spec.eigenvalues.size(); ++k)
          if (std::abs(spec.eigenvalues[k] - target) < std::abs(best - target))
            best = spec.eigenvalues[k];
        csv.row({double(delta), double(n), target.real(), target.imag(),
                 best.real(), best.imag(), std::abs(best - target)});
      }
    manifest["outputs"].push_back("oracle.csv");
  } else if (mode == "stationary") {
    const OracleStationary st = oracle_stationary(p.Lambda, p.gamma, p.T, n_max);
    const ThirdQuantResult z = z_matrix(p.Lambda, p.gamma, p.T);
    CsvWriter csv(out_dir / "oracle.csv",
                  {"nbar", "re_bb", "im_bb", "z12", "re_z11", "im_z11"});
    csv.row({st.occupation, st.pair_moment.real(), st.pair_moment.imag(), z.z12,
             z.z11.real(), z.z11.imag()});
    manifest["outputs"].push_back("oracle.csv");
    inv.record("kernel_residual", st.residual, 1e-8);
    inv.record("moment_vs_covariance",
               std::abs(st.occupation - z.z12) + std::abs(st.pair_moment - z.z11),
               cfg.value("moment_tol", 1e-3));
  } else if (mode == "evolution") {
    const double theta = cfg.value("theta", 0.0);
    const auto grid = time_grid(cfg);
    const BosonTrajectory traj =
        oracle_evolution(p.Lambda, p.gamma, p.T, theta, p.S, grid, n_max);
    CsvWriter csv(out_dir / "oracle.csv", {"t", "re_b", "im_b", "nbar", "T_eff"});
    for (int g = 0; g < traj.times.size(); ++g)
      csv.row({traj.times[g], traj.mode_mean[g].real(), traj.mode_mean[g].imag(),
               traj.occupation[g], traj.effective_temperature[g]});
    manifest["outputs"].push_back("oracle.csv");
  } else {
    throw invalid_parameter_error("unknown oracle mode: " + mode);
  }
  return 0;
}

int run_audit(const json& cfg, const fs::path& out_dir, InvariantLog& inv,
              json& manifest) {
  ModelParams p{20.0, 0.5, 0.05, 4.0};
  if (cfg.contains("params")) p = parse_params(cfg);
  const int trials = cfg.value("trials", 200);
  std::mt19937 rng(cfg.value("seed", 1u));

  const bool critical = p.Lambda == 1.0;
  if (critical)
    std::cout << "audit: Lambda = 1 is the critical point; analytic checks skipped\n";

  // coefficient identities over random parameters, both phases
  if (!critical) {
    std::uniform_real_distribution<double> ul(0.05, 3.5), ut(0.3, 20.0);
    double worst_id = 0.0, worst_ratio = 0.0;
    for (int k = 0; k < trials; ++k) {
      double lambda = ul(rng);
      if (std::abs(lambda - 1.0) < 0.02) lambda += 0.05;
      const HpParams hp = hp_params(lambda, ut(rng));
      worst_id = std::max(
          worst_id,
          std::abs(hp.b_minus * hp.b_minus - hp.b_plus * hp.b_plus - hp.mz));
      worst_ratio = std::max(
          worst_ratio, std::abs(hp.b_plus / hp.b_minus -
                                (4.0 * hp.T - hp.omega_b) / (4.0 * hp.T + hp.omega_b)));
    }
    inv.record("difference_identity", worst_id, 1e-12);
    inv.record("ratio_identity", worst_ratio, 1e-12);

    // oracle vs perturbative eigenvalues in a convergent regime
    const MatrixXcd sup = bosonic_superoperator(0.5, 0.01, 1.0, 32);
    const SpectrumResult spec = diagonalize(sup, bosonic_parity_diagonal(32), {},
                                            DiagonalizeMethod::sector_real);
    double worst_eig = 0.0;
    for (int delta = -2; delta <= 2; ++delta)
      for (int n = 0; n <= 2; ++n) {
        const Complex target = liouvillian_eigenvalue(delta, n, 0.5, 0.01);
        double best = 1e18;
        for (int k = 0; k < spec.eigenvalues.size(); ++k)
          best = std::min(best, std::abs(spec.eigenvalues[k] - target));
        worst_eig = std::max(worst_eig, best);
      }
    inv.record("oracle_vs_perturbative", worst_eig, 1e-4);
    inv.record("left_null_bosonic", left_null_residual(sup, {}), 1e-10);

    // covariance matrix limits
    const ThirdQuantResult z0 = z_matrix(0.1, 0.0, 4.0);
    const double x = hp_params(0.1, 4.0).boltzmann_ratio();
    inv.record("covariance_thermal_limit", std::abs(z0.z12 - x / (1.0 - x)), 1e-10);

    // disentangling-coefficient fixed point against the oracle diagonal
    const OracleStationary st = oracle_stationary(0.1, 1e-3, 4.0, 48);
    const double ratio = st.rho(1, 1).real() / st.rho(0, 0).real();
    inv.record("a_plus_fixed_point", std::abs(ratio - x), 1e-7);
    const double printed = hp_params(0.1, 4.0).b_plus /
                           std::pow(hp_params(0.1, 4.0).b_minus, 2);
    inv.record("a_plus_printed_form_rejected",
               std::abs(ratio - printed) > 0.1 ? 0.0 : 1.0, 0.5);
  }

  // trajectory invariants on a short dissipative run
  const MatrixXcd rho0 =
      initial_state(p, {InitialStateKind::rotated_stretched, M_PI / 5.0});
  std::vector<double> grid;
  for (double t = 0.0; t <= 20.0; t += 0.5) grid.push_back(t);
  const Trajectory traj = evolve(p, rho0, grid);
  double worst_trace = 0.0, worst_neg = 0.0;
  for (int g = 0; g < traj.times.size(); ++g) {
    worst_trace = std::max(worst_trace, traj.trace_error[g]);
    worst_neg = std::max(worst_neg, -traj.min_eigenvalue[g]);
  }
  inv.record("trajectory_trace", worst_trace, 1e-8);
  inv.record("trajectory_positivity", worst_neg, 1e-8);

  // assembled superoperator trace row
  const RestrictedSuperoperator rsup = restricted_superoperator(p, 21);
  inv.record("left_null_restricted", left_null_residual(rsup.matrix, rsup.pairs),
             1e-10);
  const MatrixXcd full_sup = lindblad_superoperator(p);
  inv.record("left_null_full", left_null_residual(full_sup, {}), 1e-10);

  CsvWriter csv(out_dir / "audit.csv", {"pass", "residual", "tolerance"});
  for (const auto& [name, entry] : inv.entries.items()) {
    std::cout << (entry["pass"].get<bool>() ? "[pass] " : "[FAIL] ") << name
              << "  residual " << entry["residual"].get<double>() << "  tol "
              << entry["tolerance"].get<double>() << "\n";
    csv.row({entry["pass"].get<bool>() ? 1.0 : 0.0, entry["residual"].get<double>(),
             entry["tolerance"].get<double>()});
  }
  manifest["outputs"].push_back("audit.csv");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dissipative LMG model toolkit"};
  app.require_subcommand(1);
  std::string config_path, out_override;

  const std::vector<std::string> commands = {"spectrum", "gap-scan", "stationary",
                                             "dynamics", "analytic", "oracle",
                                             "audit"};
  for (const std::string& name : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON configuration file")->required();
    sub->add_option("--out", out_override, "output directory");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  json manifest;
  manifest["command"] = command;
  manifest["version"] = version_string();
  manifest["outputs"] = json::array();
  fs::path out_dir = ".";
  InvariantLog inv;
  const auto t_start = std::chrono::steady_clock::now();
  int exit_code = 0;

  try {
    std::ifstream in(config_path);
    if (!in) throw std::runtime_error("cannot read config " + config_path);
    json cfg = json::parse(in);
    if (cfg.value("command", command) != command)
      throw invalid_parameter_error("config command does not match subcommand");

    out_dir = out_override.empty() ? fs::path(cfg.value("out_dir", ".")) : fs::path(out_override);
    fs::create_directories(out_dir);
    manifest["config"] = cfg;

    if (command == "spectrum")
      exit_code = run_spectrum(cfg, out_dir, inv, manifest);
    else if (command == "gap-scan")
      exit_code = run_gap_scan(cfg, out_dir, inv, manifest);
    else if (command == "stationary")
      exit_code = run_stationary(cfg, out_dir, inv, manifest);
    else if (command == "dynamics")
      exit_code = run_dynamics(cfg, out_dir, inv, manifest);
    else if (command == "analytic")
      exit_code = run_analytic(cfg, out_dir, inv, manifest);
    else if (command == "oracle")
      exit_code = run_oracle(cfg, out_dir, inv, manifest);
    else
      exit_code = run_audit(cfg, out_dir, inv, manifest);

    manifest["status"] = inv.violated ? "invariant_violation" : "ok";
    if (inv.violated) exit_code = 2;
  } catch (const std::exception& err) {
    manifest["status"] = "error";
    manifest["error"] = err.what();
    std::cerr << "error: " << err.what() << "\n";
    exit_code = 1;
  }

  manifest["invariants"] = inv.entries;
  manifest["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  std::error_code ec;
  fs::create_directories(out_dir, ec);  // out_dir may not exist on early errors
  std::ofstream mout(out_dir / "manifest.json", std::ios::binary);
  mout << manifest.dump(2) << "\n";
  return exit_code;
}
