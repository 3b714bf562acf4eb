#include "fhnhopf/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "fhnhopf/bifurcation.hpp"
#include "fhnhopf/center_manifold.hpp"
#include "fhnhopf/config.hpp"
#include "fhnhopf/errors.hpp"
#include "fhnhopf/pde_sim.hpp"
#include "fhnhopf/spectral.hpp"
#include "json.hpp"

namespace fhn::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

// Full round-trip precision for every CSV number.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) { out_ << std::setprecision(17); }
  CsvWriter& header(std::initializer_list<std::string> names) {
    bool first = true;
    for (const auto& name : names) {
      out_ << (first ? "" : ",") << name;
      first = false;
    }
    out_ << '\n';
    return *this;
  }
  template <typename... Ts>
  CsvWriter& row(const Ts&... values) {
    bool first = true;
    ((out_ << (first ? "" : ","), out_ << values, first = false), ...);
    out_ << '\n';
    return *this;
  }

 private:
  std::ostream& out_;
};

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_output(path);
  out << text << '\n';
}

std::string format_time_tag(double t) {
  std::ostringstream s;
  s << t;
  return s.str();
}

// Options shared by the model-backed subcommands.
struct ModelOptions {
  std::string config_path;
  std::optional<double> p;
  std::optional<std::size_t> nx;

  void attach(CLI::App* cmd, bool with_p = true) {
    cmd->add_option("--config", config_path, "JSON model configuration")->required();
    if (with_p) cmd->add_option("--p", p, "heterogeneity amplitude (overrides the config)");
    cmd->add_option("--nx", nx, "grid node count (overrides the config; 21 is the dx = 0.1 grid)");
  }

  ModelConfig load() const {
    ModelConfig cfg = load_model_config(config_path);
    if (p) cfg.params.p = *p;
    if (nx) cfg.params.nx = *nx;
    cfg.params.validate();
    return cfg;
  }
};

ProfileFamily family_for(const ModelConfig& cfg) {
  if (cfg.kind == ProfileKind::constant) {
    const double a = cfg.params.a;
    return [a](double c0) { return HeterogeneityProfile::constant(c0, a); };
  }
  return polynomial_family(cfg.params.a);
}

json hopf_json(const HopfPoint& h) {
  return {{"p0", h.p0},
          {"nu0", h.nu0},
          {"lambda_re", h.lambda.real()},
          {"lambda_im", h.lambda.imag()},
          {"bracket_lo", h.bracket_lo},
          {"bracket_hi", h.bracket_hi},
          {"sign_changes", h.sign_changes},
          {"iterations", h.iterations}};
}

json lyapunov_json(const LyapunovReport& r, double p) {
  const auto reduced = reduced_equation_coeffs(r);
  return {{"p", p},
          {"nu0", r.nu0},
          {"C", r.C},
          {"omega0", r.omega0},
          {"g20", r.g20},
          {"g11", r.g11},
          {"g21_re", r.g21.real()},
          {"g21_im", r.g21.imag()},
          {"l1", r.l1},
          {"l1_alt", r.l1_alt},
          {"residual", r.residual},
          {"reduced_equation",
           {{"lambda1_re", reduced.lambda1.real()},
            {"lambda1_im", reduced.lambda1.imag()},
            {"quadratic", reduced.quadratic},
            {"cubic_re", reduced.cubic.real()},
            {"cubic_im", reduced.cubic.imag()}}}};
}

void write_w20_csv(std::ostream& out, const LyapunovReport& r) {
  CsvWriter csv(out);
  csv.header({"x", "re", "im"});
  for (std::size_t i = 0; i < r.x.size(); ++i) csv.row(r.x[i], r.w20_profile[i].real(), r.w20_profile[i].imag());
}

void write_spectrum_csv(std::ostream& out, const std::vector<EigenPair>& pairs) {
  CsvWriter csv(out);
  csv.header({"n", "nu_n", "re_lambda", "im_lambda"});
  for (const auto& e : pairs) csv.row(e.n, e.nu, e.lambda_plus.real(), e.lambda_plus.imag());
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  CsvWriter csv(out);
  csv.header({"p", "nu0", "re_lambda0", "im_lambda0", "classification"});
  for (const auto& r : rows) csv.row(r.p, r.nu0, r.re_lambda0, r.im_lambda0, r.error ? "error" : to_string(r.classification));
}

std::vector<double> p_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo) || lo < 0.0) throw ConfigError("p range must satisfy 0 <= p-min <= p-max, p-step > 0");
  std::vector<double> ps;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t i = 0; i <= count; ++i) ps.push_back(lo + static_cast<double>(i) * step);
  return ps;
}

void dump_eigenfunctions(const fs::path& dir, const std::vector<EigenPair>& pairs, std::span<const double> x) {
  for (const auto& e : pairs) {
    auto out = open_output(dir / ("mode_" + std::to_string(e.n) + ".csv"));
    CsvWriter csv(out);
    csv.header({"x", "u_n"});
    for (std::size_t i = 0; i < x.size(); ++i) csv.row(x[i], e.u[i]);
  }
}

struct SimulationArtifacts {
  SimulationResult result;
  json summary;
};

SimulationArtifacts run_simulation(const ModelConfig& cfg, const SimulationOptions& options, const fs::path& out_dir,
                                   bool write_probe) {
  if (options.dt > ReactionDiffusion(cfg.params, cfg.profile()).stable_dt()) {
    std::cerr << "warning: dt = " << options.dt << " exceeds the explicit-diffusion guard eps dx^2/(2d) = "
              << ReactionDiffusion(cfg.params, cfg.profile()).stable_dt() << "\n";
  }
  SimulationArtifacts art{simulate(cfg.params, cfg.profile(), options), {}};
  const auto& res = art.result;
  for (const auto& snap : res.snapshots) {
    auto out = open_output(out_dir / ("snapshot_t" + format_time_tag(snap.t) + ".csv"));
    CsvWriter csv(out);
    csv.header({"x", "u", "v"});
    const Grid grid(cfg.params);
    for (std::size_t i = 0; i < grid.size(); ++i) csv.row(grid[i], snap.u[i], snap.v[i]);
  }
  if (write_probe) {
    auto out = open_output(out_dir / "probe.csv");
    CsvWriter csv(out);
    out << "t";
    for (double x : res.probe.probe_x) out << ",u(" << x << ")";
    out << '\n';
    for (std::size_t k = 0; k < res.probe.t.size(); ++k) {
      out << res.probe.t[k];
      for (const auto& series : res.probe.u) out << ',' << series[k];
      out << '\n';
    }
  }
  art.summary = {{"p", cfg.params.p},
                 {"nx", cfg.params.nx},
                 {"t_end", options.t_end},
                 {"dt", options.dt},
                 {"regime", to_string(res.summary.regime)},
                 {"peak_to_peak", res.summary.peak_to_peak},
                 {"tail_mean", res.summary.tail_mean},
                 {"period", res.summary.period ? json(*res.summary.period) : json(nullptr)},
                 {"dt_exceeds_guard", res.dt_exceeds_guard}};
  return art;
}

std::vector<double> parse_time_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("invalid time in list: '" + item + "'");
    }
  }
  return out;
}

int run(CLI::App& app, const std::vector<std::string>& args) {
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // spectrum
  ModelOptions spec_model;
  int modes = 5;
  std::string spec_out;
  std::string dump_dir;
  auto* spec = app.add_subcommand("spectrum", "Sturm-Liouville spectrum by Prufer shooting");
  spec_model.attach(spec);
  spec->add_option("--modes", modes, "number of modes")->check(CLI::Range(1, 64));
  spec->add_option("--out", spec_out, "directory for spectrum.csv (default: stdout)");
  spec->add_option("--dump-eigenfunctions", dump_dir, "directory for per-mode eigenfunction CSVs");
  spec->callback([&] {
    const auto cfg = spec_model.load();
    const auto stationary = stationary_state(cfg.params, cfg.profile());
    const SpectralProblem problem(stationary, cfg.params, cfg.profile());
    const auto pairs = spectrum(modes, problem, cfg.params.epsilon);
    if (spec_out.empty()) {
      write_spectrum_csv(std::cout, pairs);
    } else {
      auto out = open_output(fs::path(spec_out) / "spectrum.csv");
      write_spectrum_csv(out, pairs);
    }
    if (!dump_dir.empty()) dump_eigenfunctions(dump_dir, pairs, stationary.x);
  });

  // bifurcate
  ModelOptions bif_model;
  double p_min = 0.5;
  double p_max = 4.0;
  double p_step = 0.1;
  unsigned bif_threads = 1;
  std::string bif_out = ".";
  HopfSearchOptions bif_search;
  auto* bif = app.add_subcommand("bifurcate", "Locate the Hopf point p0 and tabulate stability");
  bif_model.attach(bif, false);
  bif->add_option("--p-min", p_min, "lower end of the search bracket and sweep");
  bif->add_option("--p-max", p_max, "upper end of the search bracket and sweep");
  bif->add_option("--p-step", p_step, "sweep resolution");
  bif->add_option("--threads", bif_threads, "sweep worker threads");
  bif->add_option("--out", bif_out, "directory for bifurcation_sweep.csv");
  bif->add_option("--p-ceiling", bif_search.p_ceiling, "largest p tried while expanding the bracket")
      ->capture_default_str();
  bif->callback([&] {
    const auto cfg = bif_model.load();
    const auto hopf = find_p0(cfg.params, p_min, p_max, family_for(cfg), bif_search);
    std::cout << hopf_json(hopf).dump(2) << '\n';
    const auto rows = stability_sweep(p_grid(p_min, p_max, p_step), cfg.params, bif_threads, family_for(cfg));
    auto out = open_output(fs::path(bif_out) / "bifurcation_sweep.csv");
    write_sweep_csv(out, rows);
  });

  // sweep
  ModelOptions sw_model;
  double sw_min = 0.5;
  double sw_max = 4.0;
  double sw_step = 0.1;
  std::string sw_values;
  unsigned sw_threads = 1;
  std::string sw_out;
  auto* sw = app.add_subcommand("sweep", "Stability of the ground mode over a list of p values");
  sw_model.attach(sw, false);
  sw->add_option("--p-min", sw_min);
  sw->add_option("--p-max", sw_max);
  sw->add_option("--p-step", sw_step);
  sw->add_option("--p-values", sw_values, "explicit comma-separated p values");
  sw->add_option("--threads", sw_threads, "worker threads");
  sw->add_option("--out", sw_out, "directory for sweep.csv (default: stdout)");
  sw->callback([&] {
    const auto cfg = sw_model.load();
    const auto ps = sw_values.empty() ? p_grid(sw_min, sw_max, sw_step) : parse_time_list(sw_values);
    const auto rows = stability_sweep(ps, cfg.params, sw_threads, family_for(cfg));
    if (sw_out.empty()) {
      write_sweep_csv(std::cout, rows);
    } else {
      auto out = open_output(fs::path(sw_out) / "sweep.csv");
      write_sweep_csv(out, rows);
    }
  });

  // lyapunov
  ModelOptions ly_model;
  double ly_pmin = 0.5;
  double ly_pmax = 4.0;
  std::string ly_out;
  std::string w20_csv;
  auto* ly = app.add_subcommand("lyapunov", "Center-manifold coefficients and the first Lyapunov coefficient");
  ly_model.attach(ly);
  ly->add_option("--p-min", ly_pmin, "bracket for the p0 search when --p is absent");
  ly->add_option("--p-max", ly_pmax);
  ly->add_option("--out", ly_out, "directory for lyapunov.json (default: stdout)");
  ly->add_option("--w20-csv", w20_csv, "write the w20 profile (x, re, im)");
  ly->callback([&] {
    auto cfg = ly_model.load();
    if (!ly_model.p) cfg.params.p = find_p0(cfg.params, ly_pmin, ly_pmax, family_for(cfg)).p0;
    const auto report = lyapunov_at(cfg.params, cfg.profile());
    const auto doc = lyapunov_json(report, cfg.params.p).dump(2);
    if (ly_out.empty()) {
      std::cout << doc << '\n';
    } else {
      write_text(fs::path(ly_out) / "lyapunov.json", doc);
    }
    if (!w20_csv.empty()) {
      auto out = open_output(w20_csv);
      write_w20_csv(out, report);
    }
  });

  // simulate
  ModelOptions sim_model;
  SimulationOptions sim_opts;
  std::string snapshot_list;
  bool want_probe = false;
  std::string sim_out = ".";
  auto* sim = app.add_subcommand("simulate", "Method-of-lines RK4 simulation of the reaction-diffusion system");
  sim_model.attach(sim);
  sim->add_option("--t-end", sim_opts.t_end, "final time")->capture_default_str();
  sim->add_option("--dt", sim_opts.dt, "time step")->capture_default_str();
  sim->add_option("--sample-dt", sim_opts.sample_dt, "probe sampling interval")->capture_default_str();
  sim->add_option("--perturbation", sim_opts.perturbation, "mode-0 kick amplitude")->capture_default_str();
  sim->add_option("--snapshot-times", snapshot_list, "comma-separated snapshot times (x,u,v CSV each)");
  sim->add_flag("--probe", want_probe, "write probe.csv with t, u(-a), u(0)");
  sim->add_option("--out", sim_out, "output directory");
  sim->callback([&] {
    const auto cfg = sim_model.load();
    sim_opts.snapshot_times = parse_time_list(snapshot_list);
    const auto art = run_simulation(cfg, sim_opts, sim_out, want_probe);
    std::cout << art.summary.dump(2) << '\n';
  });

  // ode
  double ode_c = 0.0;
  double ode_eps = 0.1;
  double ode_t_end = 50.0;
  double ode_dt = 1e-4;
  double ode_sample = 1e-2;
  std::optional<double> ode_u0;
  std::optional<double> ode_v0;
  std::string ode_out;
  auto* ode = app.add_subcommand("ode", "Planar FitzHugh-Nagumo system (no diffusion)");
  ode->add_option("--c", ode_c, "excitability parameter")->required();
  ode->add_option("--epsilon", ode_eps)->capture_default_str();
  ode->add_option("--t-end", ode_t_end)->capture_default_str();
  ode->add_option("--dt", ode_dt)->capture_default_str();
  ode->add_option("--sample-dt", ode_sample)->capture_default_str();
  ode->add_option("--u0", ode_u0, "initial u (default: equilibrium u = c, shifted by -0.5)");
  ode->add_option("--v0", ode_v0, "initial v (default: f(c))");
  ode->add_option("--out", ode_out, "directory for ode.csv (default: stdout)");
  ode->callback([&] {
    const double u0 = ode_u0.value_or(ode_c - 0.5);
    const double v0 = ode_v0.value_or(f_cubic(ode_c));
    const auto res = ode_simulate(ode_c, ode_eps, ode_t_end, ode_dt, u0, v0, ode_sample);
    auto emit = [&](std::ostream& out) {
      CsvWriter csv(out);
      csv.header({"t", "u", "v"});
      for (std::size_t k = 0; k < res.t.size(); ++k) csv.row(res.t[k], res.u[k], res.v[k]);
    };
    if (ode_out.empty()) {
      emit(std::cout);
    } else {
      auto out = open_output(fs::path(ode_out) / "ode.csv");
      emit(out);
    }
    std::cerr << "regime: " << to_string(res.summary.regime) << '\n';
  });

  // reproduce
  ModelOptions rep_model;
  std::string rep_out = "reproduce";
  std::size_t sim_nx = 21;
  double rep_t_end = 600.0;
  double rep_dt = 1e-4;
  double rep_delta = 0.05;
  double rep_pmin = 0.5;
  double rep_pmax = 4.0;
  unsigned rep_threads = 1;
  auto* rep = app.add_subcommand("reproduce", "Full pipeline: p0, Lyapunov report, steady and oscillatory runs");
  rep_model.attach(rep, false);
  rep->add_option("--out", rep_out, "output directory")->capture_default_str();
  rep->add_option("--sim-nx", sim_nx, "simulation grid node count")->capture_default_str();
  rep->add_option("--t-end", rep_t_end)->capture_default_str();
  rep->add_option("--dt", rep_dt)->capture_default_str();
  rep->add_option("--delta", rep_delta, "runs at p0 + delta and p0 - delta")->capture_default_str();
  rep->add_option("--p-min", rep_pmin);
  rep->add_option("--p-max", rep_pmax);
  rep->add_option("--threads", rep_threads);
  rep->callback([&] {
    auto cfg = rep_model.load();
    const fs::path root(rep_out);
    fs::create_directories(root);

    const auto hopf = find_p0(cfg.params, rep_pmin, rep_pmax, family_for(cfg));
    write_text(root / "p0.json", hopf_json(hopf).dump(2));

    ModelConfig at_p0 = cfg;
    at_p0.params.p = hopf.p0;
    const auto report = lyapunov_at(at_p0.params, at_p0.profile());
    write_text(root / "lyapunov.json", lyapunov_json(report, hopf.p0).dump(2));
    {
      auto out = open_output(root / "w20.csv");
      write_w20_csv(out, report);
    }
    {
      const auto stationary = stationary_state(at_p0.params, at_p0.profile());
      const SpectralProblem problem(stationary, at_p0.params, at_p0.profile());
      auto out = open_output(root / "spectrum_p0.csv");
      write_spectrum_csv(out, spectrum(5, problem, at_p0.params.epsilon));
    }
    {
      const auto rows = stability_sweep(p_grid(rep_pmin, rep_pmax, 0.1), cfg.params, rep_threads, family_for(cfg));
      auto out = open_output(root / "sweep.csv");
      write_sweep_csv(out, rows);
    }

    SimulationOptions opts;
    opts.t_end = rep_t_end;
    opts.dt = rep_dt;
    opts.snapshot_times = {0.55 * rep_t_end / 0.6, 0.56 * rep_t_end / 0.6, 0.57 * rep_t_end / 0.6};
    for (double& t : opts.snapshot_times) t = std::round(t * 1e6) / 1e6;
    json runs = json::array();
    for (const auto& [name, p] : {std::pair{std::string("steady"), hopf.p0 + rep_delta},
                                  std::pair{std::string("oscillatory"), hopf.p0 - rep_delta}}) {
      ModelConfig run_cfg = cfg;
      run_cfg.params.p = p;
      run_cfg.params.nx = sim_nx;
      run_cfg.params.validate();
      auto art = run_simulation(run_cfg, opts, root / name, true);
      art.summary["label"] = name;
      write_text(root / name / "summary.json", art.summary.dump(2));
      runs.push_back(art.summary);
    }

    json manifest = {{"tool", "fhnhopf"},
                     {"version", kVersion},
                     {"command", "reproduce"},
                     {"config", json::parse(cfg.to_json())},
                     {"sim_nx", sim_nx},
                     {"t_end", rep_t_end},
                     {"dt", rep_dt},
                     {"delta", rep_delta},
                     {"p0", hopf.p0},
                     {"l1", report.l1},
                     {"runs", runs}};
    write_text(root / "manifest.json", manifest.dump(2));
    std::cout << manifest.dump(2) << '\n';
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  app.parse(reversed);
  return kExitOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Hopf bifurcation toolkit for the heterogeneous FitzHugh-Nagumo reaction-diffusion system", "fhnhopf"};
  try {
    return run(app, args);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    std::cout << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitConfig;
  }
}

int dispatch(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return dispatch(args);
}

}  // namespace fhn::cli
