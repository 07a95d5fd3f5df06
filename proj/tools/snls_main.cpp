#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "snls/inequalities.hpp"
#include "snls/invariants.hpp"
#include "snls/norms.hpp"
#include "snls/runner.hpp"
#include "snls/scattering.hpp"
#include "snls/threading.hpp"

using nlohmann::json;

namespace {

json verdict_json(const snls::InequalityVerdict& v) {
  json j;
  j["name"] = v.name;
  j["lhs"] = v.lhs;
  j["rhs_functional"] = v.rhs_functional;
  j["ratio"] = v.ratio;
  j["holds"] = v.holds;
  j["skipped"] = v.skipped;
  for (const auto& [k, val] : v.parameters) j["parameters"][k] = val;
  return j;
}

int cmd_evolve(const std::string& config_path) {
  const snls::RunConfig config = snls::parse_config_file(config_path);
  const snls::DiagnosticSeries series = snls::run(config);
  std::printf("run complete: %zu records, %zu snapshots, alpha = %.12g, hash = %016llx\n",
              series.records.size(), series.snapshot_files.size(), config.derived_alpha(),
              static_cast<unsigned long long>(series.config_hash));
  std::printf("outputs in %s\n", config.output.directory.c_str());
  return 0;
}

int cmd_diagnose(const std::string& dir) {
  snls::DiagnosticSeries series = snls::load_run_directory(dir);
  json report;

  const auto virial = snls::check_virial_identities(series);
  report["virial"] = {{"dt_sample", virial.dt_sample},
                      {"r_dv", virial.r_dv},
                      {"r_ddv", virial.r_ddv},
                      {"r_dk", virial.r_dk}};
  const auto kk = snls::check_kk_identity(series);
  report["kk"] = {{"dt_sample", kk.dt_sample}, {"max_residual", kk.max_residual}};

  double g_max = -1e300;
  for (const auto& r : series.records) g_max = std::max(g_max, r.G);
  report["G_max"] = g_max;

  const auto times = series.record_times();
  const double t_end = times.back();
  if (t_end > 0.0) {
    try {
      const auto fit = snls::decay_fit(times, series.column("l4"), 4.0, t_end / 3.0, t_end);
      report["decay"]["q4"] = {{"fitted_slope", fit.fitted_slope},
                               {"paper_slope", fit.paper_slope},
                               {"r_squared", fit.r_squared},
                               {"bound_constant", fit.bound_constant},
                               {"window", {fit.t_min, fit.t_max}}};
    } catch (const snls::SnlsError& e) {
      report["decay"]["q4"] = std::string("unavailable: ") + e.what();
    }
  }

  std::ofstream out(std::filesystem::path(dir) / "diagnostics.json");
  out << report.dump(2) << "\n";
  std::cout << report.dump(2) << std::endl;
  return 0;
}

int cmd_scatter(const std::string& dir) {
  snls::DiagnosticSeries series = snls::load_run_directory(dir);
  if (series.snapshots.size() < 3) {
    std::cerr << "scatter: needs at least 3 snapshots in " << dir << "\n";
    return 1;
  }
  const auto rep = snls::scattering_report(series.snapshots);
  const auto mon = snls::s_norm_monitor(series);

  json j;
  j["times"] = rep.times;
  j["h1_cauchy"] = rep.h1_cauchy;
  j["weighted_cauchy"] = rep.weighted_cauchy;
  j["trend_h1"] = rep.trend_h1;
  j["trend_weighted"] = rep.trend_weighted;
  j["s_norms"] = {{"s1_running", mon.s1_running},
                  {"s0_w_running", mon.s0_w_running},
                  {"s1_final_quarter_growth", mon.s1_final_quarter_growth},
                  {"s0_final_quarter_growth", mon.s0_final_quarter_growth},
                  {"s1_plateau", mon.s1_plateau},
                  {"s0_plateau", mon.s0_plateau}};

  const auto state_path = std::filesystem::path(dir) / "scattering_state.snls";
  snls::checkpoint_write(rep.candidate_state, rep.times.back(), snls::ModelParams::make(0.5),
                         state_path);
  j["candidate_state"] = state_path.string();

  std::ofstream out(std::filesystem::path(dir) / "scattering.json");
  out << j.dump(2) << "\n";
  std::cout << j.dump(2) << std::endl;
  return 0;
}

int cmd_inequalities(const std::string& suite, double b, int n, double half_width) {
  const auto grid = snls::make_grid(n, half_width);
  const auto corpus = snls::standard_corpus(grid);
  json j;
  j["suite"] = suite;
  j["grid"] = {{"n", n}, {"half_width", half_width}};

  auto run_over_corpus = [&](const std::string& name, auto&& make_verdict) {
    json arr = json::array();
    for (const auto& cf : corpus) {
      auto v = make_verdict(cf.field);
      json vj = verdict_json(v);
      vj["field"] = cf.name;
      arr.push_back(vj);
    }
    j["verdicts"][name] = arr;
  };

  const double alpha_wmt = 0.9 * 2.0 * snls::kPi * (2.0 - b);
  if (suite == "mt" || suite == "all") {
    run_over_corpus("mt", [&](const auto& u) { return snls::verify_mt(u, 2.0 * snls::kPi); });
  }
  if (suite == "mt2" || suite == "all") {
    run_over_corpus("mt2", [&](const auto& u) { return snls::verify_mt_h1(u, 4.0 * snls::kPi); });
  }
  if (suite == "wmt1" || suite == "all") {
    run_over_corpus("wmt1", [&](const auto& u) { return snls::verify_singular_mt(u, alpha_wmt, b); });
  }
  if (suite == "hardy" || suite == "all") {
    run_over_corpus("hardy", [&](const auto& u) { return snls::verify_hardy(u, b, 2.0); });
  }
  if (suite == "gn2d" || suite == "all") {
    run_over_corpus("gn2d", [&](const auto& u) { return snls::verify_gn2d(u, 4.0); });
  }
  if (suite == "log" || suite == "all") {
    run_over_corpus("log", [&](const auto& u) {
      return snls::verify_log(u, 0.5, 1.0 / snls::kPi + 0.01, 1.0);
    });
  }
  if (suite == "lorentz" || suite == "all") {
    const snls::SingularWeight w = snls::make_weight(grid, b);
    snls::ComplexField gw(grid);
    for (std::size_t i = 0; i < gw.size(); ++i) gw.data()[i] = w.data()[i];
    run_over_corpus("lorentz_holder", [&](const auto& u) {
      const auto un = snls::normalize(u, snls::Normalization::UnitGradient);
      snls::ComplexField f(grid);
      for (std::size_t i = 0; i < f.size(); ++i) {
        f.data()[i] = snls::exp_tail(std::norm(un.data()[i]), 1, alpha_wmt);
      }
      return snls::verify_lorentz_holder(f, gw, 2.5, 20.0 / 3.0, 2.0 / b);
    });
  }
  if (suite == "threshold" || suite == "all") {
    const auto probe = snls::mt_threshold_probe(grid, b);
    j["threshold_probe"] = {{"b", probe.b},
                            {"indices", probe.indices},
                            {"curve_sub", probe.curve_sub},
                            {"curve_at", probe.curve_at},
                            {"curve_super", probe.curve_super},
                            {"last_index_domination", probe.last_index_domination}};
  }

  std::cout << j.dump(2) << std::endl;
  return 0;
}

int cmd_oracle(const std::string& name) {
  if (name == "origin_cell") {
    for (double b : {0.25, 0.5, 0.75}) {
      std::printf("origin_cell_average(b=%.2f, h=1) = %.15g\n", b,
                  snls::origin_cell_average(b, 1.0));
    }
    return 0;
  }
  if (name == "gaussian_constants") {
    std::printf("for f = exp(-|x|^2):\n");
    std::printf("  integral           = pi        = %.15g\n", snls::kPi);
    std::printf("  ||f||_2            = sqrt(pi/2) = %.15g\n", std::sqrt(snls::kPi / 2.0));
    std::printf("  ||grad f||_2       = sqrt(pi)   = %.15g\n", std::sqrt(snls::kPi));
    std::printf("  || |x| f ||_2^2    = pi/4       = %.15g\n", snls::kPi / 4.0);
    std::printf("  sigma norm         = sqrt(7pi/4)= %.15g\n", std::sqrt(7.0 * snls::kPi / 4.0));
    std::printf("  ||f||_4            = (pi/4)^1/4 = %.15g\n", std::pow(snls::kPi / 4.0, 0.25));
    std::printf("  virial V           = pi/4       = %.15g\n", snls::kPi / 4.0);
    std::printf("  free ||u(t)||_4    = (pi/4)^{1/4} (1+16t^2)^{-1/4}\n");
    return 0;
  }
  if (name == "g_density") {
    const auto p = snls::ModelParams::make(0.5);
    std::printf("b=0.5, alpha=3pi:\n");
    for (double tau : {1e-7, 1e-4, 1e-2, 1.0}) {
      std::printf("  g(%g) = %.15g (leading %.15g)\n", tau, snls::g_pointwise(tau, p),
                  -(2.0 * 2.5 / 3.0) * p.alpha * p.alpha * tau * tau * tau);
    }
    return 0;
  }
  if (name == "free_gaussian") {
    const auto grid = snls::make_grid(256, 16.0);
    auto u0 = snls::gaussian_field(grid, 1.0, std::sqrt(0.5), 0.0, 0.0);
    const double t = 1.0;
    const auto ut = snls::free_propagator(u0, t);
    double full = 0.0, interior = 0.0;
    const auto& g = *grid;
    for (int i = 0; i < g.n; ++i) {
      for (int j = 0; j < g.n; ++j) {
        const double x = g.coords[i], y = g.coords[j];
        const snls::Complex den(1.0, 4.0 * t);
        const snls::Complex exact = std::exp(-(x * x + y * y) / den) / den;
        const double err = std::abs(ut(i, j) - exact);
        full = std::max(full, err);
        if (std::abs(x) <= g.half_width / 2 && std::abs(y) <= g.half_width / 2) {
          interior = std::max(interior, err);
        }
      }
    }
    std::printf("free gaussian t=1 (n=256, L=16): max err full box = %.3e, interior = %.3e\n",
                full, interior);
    return 0;
  }
  if (name == "reference_values") {
    // grid-refinement references for the frozen regression constants
    const auto coarse = snls::make_grid(256, 16.0);
    const auto fine = snls::make_grid(1024, 16.0);
    const auto params = snls::ModelParams::make(0.5);
    for (const auto& grid : {coarse, fine}) {
      const auto w = snls::weight_grid(grid, params);
      const auto u = snls::gaussian_field(grid, 1.0, std::sqrt(0.5), 1.0, 0.5);
      std::printf("H(gauss A=1 s=sqrt(.5) c=(1,0.5), b=0.5) n=%d: %.15g\n", grid->n,
                  snls::hamiltonian(u, w, params));
      const auto uf = snls::free_propagator(snls::gaussian_field(grid, 1.0, std::sqrt(0.5), 2.5, 0.0), 0.5);
      std::printf("K(free gauss c=(2.5,0), t=0.5, b=0.5) n=%d: %.15g\n", grid->n,
                  snls::pseudo_conformal_K(uf, 0.5, w, params));
    }
    return 0;
  }
  if (name == "corpus_ratios") {
    const auto grid = snls::make_grid(256, 8.0);
    const auto ratios = snls::measure_baseline_ratios(grid);
    std::printf("// generated by: snls oracle corpus_ratios (n=256, L=8)\n");
    for (const auto& [key, value] : ratios) {
      std::printf("      {\"%s\", %.15g},\n", key.c_str(), value);
    }
    return 0;
  }
  std::cerr << "unknown oracle '" << name
            << "' (try: origin_cell gaussian_constants g_density free_gaussian "
               "reference_values corpus_ratios)\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  snls::configure_threads_from_env();
  CLI::App app{"snls: defocusing weighted-exponential NLS simulator and diagnostics"};
  app.require_subcommand(1);

  std::string config_path, dir, suite = "all", oracle_name;
  double b = 0.5, half_width = 8.0;
  int n = 256;

  auto* evolve = app.add_subcommand("evolve", "run an experiment from a config file");
  evolve->add_option("config", config_path, "config file (dotted keys)")->required();

  auto* diagnose = app.add_subcommand("diagnose", "identity residuals and decay fits");
  diagnose->add_option("series-dir", dir, "run output directory")->required();

  auto* scatter = app.add_subcommand("scatter", "scattering report from stored snapshots");
  scatter->add_option("series-dir", dir, "run output directory")->required();

  auto* ineq = app.add_subcommand("inequalities", "functional-inequality verification suites");
  ineq->add_option("suite", suite,
                   "mt | mt2 | wmt1 | hardy | gn2d | log | lorentz | threshold | all");
  ineq->add_option("--b", b, "weight exponent");
  ineq->add_option("--n", n, "grid points per axis");
  ineq->add_option("--half-width", half_width, "box half width");

  auto* oracle = app.add_subcommand("oracle", "print frozen-constant candidates");
  oracle->add_option("name", oracle_name, "oracle name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (evolve->parsed()) return cmd_evolve(config_path);
    if (diagnose->parsed()) return cmd_diagnose(dir);
    if (scatter->parsed()) return cmd_scatter(dir);
    if (ineq->parsed()) return cmd_inequalities(suite, b, n, half_width);
    if (oracle->parsed()) return cmd_oracle(oracle_name);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
