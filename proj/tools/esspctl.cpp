// esspctl: command-line driver for the essp library.
//
// Machine-readable results (JSON or CSV) go to stdout, progress to stderr.
// Exit status: 0 success, 1 domain or input error, 2 usage error.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <tuple>

#include <CLI11.hpp>
#include <json.hpp>

#include "essp/error.hpp"
#include "essp/experiments.hpp"
#include "essp/integrator.hpp"
#include "essp/methods.hpp"
#include "essp/optimizer.hpp"
#include "essp/order_conditions.hpp"
#include "essp/ssp.hpp"
#include "essp/tableau.hpp"

namespace {

using nlohmann::json;
using namespace essp;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json tableau_json(const ButcherTableau& t, const std::string& label = "",
                  std::optional<int> q = std::nullopt, std::optional<int> p = std::nullopt) {
  return json::parse(emit_tableau(t, label, q, p));
}

TableauDocument load_tableau(const std::string& path) {
  return parse_tableau(read_text_file(path));
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

// A tableau file holding M (with --start/--stop files), or else a catalog label.
CompositeScheme resolve_scheme(const std::string& scheme, const std::string& start,
                               const std::string& stop) {
  if (!std::filesystem::is_regular_file(scheme)) {
    if (!start.empty() || !stop.empty()) {
      throw UsageError("--start/--stop are only valid with a tableau file");
    }
    return CompositeScheme::from_catalog(find_catalog_entry(scheme));
  }
  if (start.empty() || stop.empty()) {
    throw UsageError("a tableau file needs --start and --stop");
  }
  const TableauDocument main = load_tableau(scheme);
  if (!main.q || !main.p) throw ParseError("q", "main method file must give q and p");
  return CompositeScheme::make(load_tableau(start).tableau, main.tableau,
                               load_tableau(stop).tableau, *main.q, *main.p);
}

ButcherTableau resolve_main(const std::string& scheme) {
  if (std::filesystem::is_regular_file(scheme)) return load_tableau(scheme).tableau;
  return find_catalog_entry(scheme).main;
}

json ssp_json(const SspResult& r) {
  const auto& c = r.certificate;
  return {{"coefficient", r.coefficient},
          {"effective_coefficient", r.effective_coefficient},
          {"lo", r.lo},
          {"hi", r.hi},
          {"certificate",
           {{"r", c.r}, {"feasible", c.feasible}, {"min_entry", c.min_entry}, {"row", c.row},
            {"col", c.col}}}};
}

int cmd_check(const std::string& path) {
  const TableauDocument doc = load_tableau(path);
  const ButcherTableau& t = doc.tableau;
  const ClassicalOrder p = classical_order(t);
  const int q = effective_order(t);
  const SspResult ssp = ssp_coefficient(t);

  json out;
  out["label"] = doc.label;
  out["stages"] = t.stages();
  out["classical_order"] = p.value;
  out["classical_order_at_least"] = p.at_least;
  out["effective_order"] = q;
  json beta = nullptr;
  if (q >= 3) {
    const auto spec = EffectiveOrderSpec::make(q, p.value < q ? p.value : 2);
    const BetaWeights b = beta_weights(elementary_weights(t), spec);
    beta = json::array();
    for (int i = 1; i <= 8; ++i) beta.push_back(b[i] ? json(*b[i]) : json("FREE"));
  }
  out["beta"] = beta;
  out["ssp_coefficient"] = ssp.coefficient;
  out["effective_ssp_coefficient"] = ssp.effective_coefficient;
  if ((t.b().array() < 0.0).any()) {
    out["note"] = "negative weight b_i: a positive SSP coefficient requires b >= 0";
  } else if ((t.a().array() < 0.0).any()) {
    out["note"] = "negative entry a_ij: a positive SSP coefficient requires A >= 0";
  }
  for (const auto& v : validate(t)) {
    std::cerr << (v.severity == Severity::kError ? "error: " : "warning: ") << v.invariant
              << " at (" << v.row << ", " << v.col << ")\n";
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_ssp(const std::string& path) {
  std::cout << ssp_json(ssp_coefficient(load_tableau(path).tableau)).dump(2) << '\n';
  return 0;
}

struct OptimizeArgs {
  int s = 0;
  int q = 0;
  int p = 0;
  std::string main;
  std::string output;
  SearchConfig config;
};

int cmd_optimize(const OptimizeArgs& a) {
  if (a.q == 0 || a.p == 0) throw UsageError("--q and --p are required");
  const auto spec = EffectiveOrderSpec::make(a.q, a.p);
  if (!a.main.empty()) {
    if (a.s != 0) throw UsageError("--s and --main are mutually exclusive");
    const ButcherTableau main = resolve_main(a.main);
    std::cerr << "searching starting/stopping methods, " << a.config.restarts << " restarts\n";
    const StartStopOutcome r = optimize_start_stop(main, spec, a.config);
    json out;
    out["start"] = tableau_json(r.start, "R");
    out["stop"] = tableau_json(r.stop, "T");
    out["start_radius"] = r.start_radius;
    out["stop_radius"] = r.stop_radius;
    out["residual"] = r.residual;
    out["success"] = r.success;
    out["seed"] = a.config.seed;
    write_output(a.output, out.dump(2) + '\n');
    return 0;
  }
  if (a.s < 1) throw UsageError("--s (or --main) is required");
  std::cerr << "searching " << a.s << "-stage " << spec.to_string() << " methods, "
            << a.config.restarts << " restarts\n";
  try {
    const MainSearchOutcome r = optimize_main(a.s, spec, a.config);
    std::cerr << "SSP coefficient " << r.ssp.coefficient << " (effective "
              << r.ssp.effective_coefficient << ")\n";
    const std::string label = "ESSPRK(" + std::to_string(a.s) + "," + std::to_string(a.q) + "," +
                              std::to_string(a.p) + ")";
    write_output(a.output, emit_tableau(r.tableau, label, a.q, a.p));
  } catch (const SearchError& e) {
    std::cerr << "SSP coefficient " << e.best_coefficient() << ": " << e.what() << '\n';
    return 1;
  }
  return 0;
}

std::string file_stem(const std::string& label) {
  std::string out;
  for (char ch : label) {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    } else if (ch == '(' || ch == ',') {
      out += '_';
    }
  }
  return out;
}

int cmd_catalog(const std::string& export_dir) {
  json list = json::array();
  for (const auto& e : catalog()) {
    const SspResult ssp = ssp_coefficient(e.main);
    list.push_back({{"label", e.label},
                    {"stages", e.main.stages()},
                    {"q", e.q},
                    {"p", e.p},
                    {"ssp_coefficient", ssp.coefficient},
                    {"published_ssp_coefficient", e.ssp_coefficient},
                    {"has_start_stop", e.start.has_value()}});
    if (export_dir.empty()) continue;
    std::filesystem::create_directories(export_dir);
    const std::string stem = (std::filesystem::path(export_dir) / file_stem(e.label)).string();
    write_output(stem + ".json", emit_tableau(e.main, e.label, e.q, e.p));
    if (e.start) {
      write_output(stem + "_start.json", emit_tableau(*e.start, e.label + " R"));
      write_output(stem + "_stop.json", emit_tableau(*e.stop, e.label + " T"));
    }
  }
  std::cout << list.dump(2) << '\n';
  return 0;
}

int cmd_convergence(const std::string& scheme, const std::string& start, const std::string& stop,
                    bool main_only) {
  ConvergenceStudy study;
  if (main_only) {
    if (!start.empty() || !stop.empty()) throw UsageError("--main-only excludes --start/--stop");
    study = vdp_convergence(resolve_main(scheme));
  } else {
    study = vdp_convergence(resolve_scheme(scheme, start, stop));
  }
  std::cerr << "slope " << study.slope << '\n';
  std::cout << convergence_csv(study);
  return 0;
}

Profile parse_profile(const std::string& ic) {
  if (ic == "continuous") return Profile::kContinuous;
  if (ic == "square") return Profile::kSquareWave;
  throw UsageError("--ic must be continuous or square");
}

int cmd_burgers(const std::string& scheme, const std::string& start, const std::string& stop,
                const std::string& ic, double sigma, std::optional<double> tf, int m) {
  BurgersGrid grid;
  grid.m = m;
  grid.profile = parse_profile(ic);
  const double t_end = tf.value_or(grid.profile == Profile::kContinuous ? 1.62 : 0.6);
  const TvdReport rep = run_tvd(resolve_scheme(scheme, start, stop), grid, sigma, t_end);
  std::cerr << "steps " << rep.steps << ", final time " << rep.final_time << ", final TV "
            << rep.tv_series.back() << ", " << (rep.monotone ? "monotone" : "not monotone")
            << " (max increase " << rep.max_increase << ")\n";
  std::cout << tv_csv(rep);
  return 0;
}

int cmd_sigma_table(int m, double tf, double tol) {
  BurgersGrid grid;
  grid.m = m;
  grid.profile = Profile::kSquareWave;
  std::vector<SigmaRow> rows;
  for (const auto& e : catalog()) {
    if (!e.start || e.p >= e.q) continue;
    const CompositeScheme scheme = CompositeScheme::from_catalog(e);
    SigmaRow row{e.q, e.p, e.main.stages(), 0.0, scheme.ssp_coefficient()};
    row.sigma_max = max_tvd_sigma(scheme, grid, tf, tol);
    std::cerr << e.label << ": sigma_max " << row.sigma_max << '\n';
    rows.push_back(row);
  }
  std::sort(rows.begin(), rows.end(), [](const SigmaRow& x, const SigmaRow& y) {
    return std::tie(x.q, x.p, x.s) < std::tie(y.q, y.p, y.s);
  });
  std::cout << sigma_table_csv(rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Effective order SSP Runge-Kutta methods"};
  app.require_subcommand(1);

  std::string file;
  auto* check = app.add_subcommand("check", "Orders, beta weights and SSP coefficient of a tableau");
  check->add_option("file", file, "Tableau JSON file")->required();

  auto* ssp = app.add_subcommand("ssp", "SSP coefficient with its feasibility certificate");
  ssp->add_option("file", file, "Tableau JSON file")->required();

  OptimizeArgs opt;
  auto* optimize = app.add_subcommand("optimize", "Search for an optimal method");
  optimize->add_option("--s", opt.s, "Stages of the main method");
  optimize->add_option("--q", opt.q, "Effective order")->required();
  optimize->add_option("--p", opt.p, "Classical order")->required();
  optimize->add_option("--main", opt.main,
                       "Search starting/stopping methods for this label or file instead");
  optimize->add_option("--seed", opt.config.seed, "Random seed");
  optimize->add_option("--restarts", opt.config.restarts, "Independent restarts");
  optimize->add_option("--max-iterations", opt.config.max_iterations, "Solver iterations");
  optimize->add_option("--max-radius", opt.config.max_radius, "Stop the radius walk here");
  optimize->add_option("--threads", opt.config.threads, "Concurrent restarts");
  optimize->add_option("--extra-start-stages", opt.config.extra_start_stages);
  optimize->add_option("--extra-stop-stages", opt.config.extra_stop_stages);
  optimize->add_option("-o,--output", opt.output, "Output file (default stdout)");

  std::string export_dir;
  auto* cat = app.add_subcommand("catalog", "List the built-in methods");
  cat->add_option("--export", export_dir, "Also write every tableau to this directory");

  std::string scheme, start, stop;
  bool main_only = false;
  auto* conv = app.add_subcommand("convergence", "Van der Pol convergence study (CSV)");
  conv->add_option("--scheme", scheme, "Catalog label or main-method file")->required();
  conv->add_option("--start", start, "Starting method file");
  conv->add_option("--stop", stop, "Stopping method file");
  conv->add_flag("--main-only", main_only, "Run the main method alone");

  std::string ic = "square";
  double sigma = 0.0;
  std::optional<double> tf;
  int m = 200;
  auto* burgers = app.add_subcommand("burgers", "Total variation history on Burgers' equation (CSV)");
  burgers->add_option("--scheme", scheme, "Catalog label or main-method file")->required();
  burgers->add_option("--start", start, "Starting method file");
  burgers->add_option("--stop", stop, "Stopping method file");
  burgers->add_option("--ic", ic, "continuous or square");
  burgers->add_option("--sigma", sigma, "Step size as a multiple of the forward Euler limit")
      ->required();
  burgers->add_option("--tf", tf, "Final time (default 1.62 continuous, 0.6 square)");
  burgers->add_option("--m", m, "Grid cells");

  double table_tf = 0.6;
  double tol = 0.01;
  auto* table = app.add_subcommand("sigma-table", "Largest observed TVD step sizes (CSV)");
  table->add_option("--m", m, "Grid cells");
  table->add_option("--tf", table_tf, "Final time");
  table->add_option("--tol", tol, "Bisection tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check(file);
    if (*ssp) return cmd_ssp(file);
    if (*optimize) return cmd_optimize(opt);
    if (*cat) return cmd_catalog(export_dir);
    if (*conv) return cmd_convergence(scheme, start, stop, main_only);
    if (*burgers) return cmd_burgers(scheme, start, stop, ic, sigma, tf, m);
    if (*table) return cmd_sigma_table(m, table_tf, tol);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
