#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "splc/experiments.hpp"
#include "splc/io.hpp"

namespace {

using namespace splc;

IndicatorKind parse_indicator(const std::string& name) {
  if (name == "xi") return IndicatorKind::xi;
  if (name == "cp") return IndicatorKind::cp;
  if (name == "D") return IndicatorKind::d;
  if (name == "jump") return IndicatorKind::jump;
  if (name == "linf") return IndicatorKind::linf;
  throw CLI::ValidationError("--strategy", "unknown indicator: " + name);
}

void write_report_outputs(const CoarsenReport& report, const std::string& out_path,
                          const std::string& report_path) {
  if (!out_path.empty()) write_spline_file(report.result(), out_path);
  if (!report_path.empty()) write_coarsen_csv(report, report_path);
}

int run(int argc, char** argv) {
  CLI::App app{"Univariate B-spline knot removal and adaptive coarsening"};
  app.require_subcommand(1);
  std::cout.precision(17);

  // ---- validate ----
  auto* validate = app.add_subcommand("validate", "Validate a spline JSON file");
  std::string validate_in;
  validate->add_option("input", validate_in, "spline JSON file")->required();
  validate->callback([&] {
    const Spline s = read_spline_file(validate_in);
    const KnotVector& kv = s.space();
    std::cout << "valid: degree " << kv.degree() << ", dim " << kv.dim() << ", "
              << kv.num_breakpoints() << " breakpoints, " << kv.num_interior_knots()
              << " interior knots, " << (kv.open() ? "open" : "basic") << "\n";
  });

  // ---- insert ----
  auto* insert = app.add_subcommand("insert", "Insert a knot, preserving the function");
  std::string insert_in, insert_out;
  double insert_x = 0.0;
  insert->add_option("input", insert_in, "spline JSON file")->required();
  insert->add_option("--at", insert_x, "knot value to insert")->required();
  insert->add_option("-o,--output", insert_out, "output spline JSON");
  insert->callback([&] {
    const Spline s = insert_knot(read_spline_file(insert_in), insert_x);
    if (insert_out.empty()) {
      std::cout << spline_to_json(s) << "\n";
    } else {
      write_spline_file(s, insert_out);
    }
  });

  // ---- remove ----
  auto* remove = app.add_subcommand("remove", "Remove one knot occurrence at a breakpoint");
  std::string remove_in, remove_out, remove_norm = "xi";
  int remove_j = 0;
  remove->add_option("input", remove_in, "spline JSON file")->required();
  remove->add_option("--breakpoint", remove_j, "interior breakpoint index (2..N-1)")->required();
  remove->add_option("--norm", remove_norm, "refit norm: xi | cp | linf")
      ->check(CLI::IsMember({"xi", "cp", "linf"}));
  remove->add_option("-o,--output", remove_out, "output spline JSON");
  remove->callback([&] {
    const Spline s = read_spline_file(remove_in);
    const RemovalNorm norm = remove_norm == "xi"    ? RemovalNorm::xi
                             : remove_norm == "cp" ? RemovalNorm::cp
                                                   : RemovalNorm::linf;
    const auto [coarse, err] = remove_knot(s, remove_j, norm);
    std::cout << "error " << err << "\n";
    if (!remove_out.empty()) write_spline_file(coarse, remove_out);
  });

  // ---- indicators ----
  auto* indicators = app.add_subcommand("indicators", "Dump all removal indicators");
  std::string ind_in, ind_kind = "xi";
  indicators->add_option("input", ind_in, "spline JSON file")->required();
  indicators->add_option("--strategy", ind_kind, "indicator: xi | cp | D | jump | linf");
  indicators->callback([&] {
    const Spline s = read_spline_file(ind_in);
    const IndicatorCache cache = compute_all_indicators(s, parse_indicator(ind_kind));
    std::cout << "breakpoint,epsilon\n";
    for (std::size_t k = 0; k < cache.eps.size(); ++k) {
      std::cout << cache.space.breakpoint(static_cast<int>(k) + 2) << ',' << cache.eps[k] << "\n";
    }
  });

  // ---- coarsen ----
  auto* coarsen = app.add_subcommand("coarsen", "Adaptive knot removal");
  std::string co_in, co_out, co_report, co_norm = "l2", co_strategy = "xi";
  std::optional<double> co_tol;
  std::optional<int> co_target;
  coarsen->add_option("input", co_in, "spline JSON file")->required();
  coarsen->add_option("--norm", co_norm, "tolerance norm: l2 | linf | h1")
      ->check(CLI::IsMember({"l2", "linf", "h1"}));
  coarsen->add_option("--tol", co_tol, "error tolerance");
  coarsen->add_option("--target-knots", co_target, "interior-knot budget instead of a tolerance");
  coarsen->add_option("--strategy", co_strategy,
                      "indicator for --target-knots runs: xi | cp | D | jump | linf");
  coarsen->add_option("-o,--output", co_out, "output spline JSON");
  coarsen->add_option("--report", co_report, "per-step CSV report");
  coarsen->callback([&] {
    const Spline s = read_spline_file(co_in);
    CoarsenReport report;
    if (co_target.has_value()) {
      const IndicatorKind kind = parse_indicator(co_strategy);
      const Refit refit = (kind == IndicatorKind::d || kind == IndicatorKind::jump)
                              ? Refit::global_l2
                              : Refit::local;
      report = coarsen_to_budget(s, *co_target, kind, refit);
    } else if (co_tol.has_value()) {
      if (co_norm == "l2") {
        report = coarsen_l2(s, *co_tol);
      } else if (co_norm == "linf") {
        report = coarsen_linf(s, *co_tol);
      } else {
        report = coarsen_h1(s, *co_tol);
      }
      if (!report.steps.empty() && !(report.steps.back().cumulative < *co_tol)) {
        throw std::logic_error("accumulated step errors reached the tolerance");
      }
    } else {
      throw CLI::ValidationError("--tol", "either --tol or --target-knots is required");
    }
    std::cout << "removed " << report.steps.size() << " knots, final dim "
              << report.result().dim() << "\n";
    write_report_outputs(report, co_out, co_report);
  });

  // ---- project ----
  auto* project = app.add_subcommand("project", "L2-project a builtin function");
  std::string pr_f = "runge", pr_out;
  int pr_degree = 2, pr_breaks = 11;
  project->add_option("--f", pr_f, "builtin function: runge | root5 | heat-u0");
  project->add_option("--degree", pr_degree, "polynomial degree")->check(CLI::PositiveNumber);
  project->add_option("--breakpoints", pr_breaks, "number of uniform breakpoints");
  project->add_option("-o,--output", pr_out, "output spline JSON");
  project->callback([&] {
    const auto [a, b] = builtin_domain(pr_f);
    std::vector<double> ks;
    for (int i = 0; i < pr_degree; ++i) ks.push_back(a);
    for (int j = 0; j < pr_breaks; ++j) ks.push_back(a + (b - a) * j / (pr_breaks - 1));
    for (int i = 0; i < pr_degree; ++i) ks.push_back(b);
    const KnotVector space(std::move(ks), pr_degree);
    const Spline s = l2_project(builtin_function(pr_f), space);
    std::cout << "projected, L2 error " << l2_error(builtin_function(pr_f), s, 2 * (pr_degree + 1))
              << "\n";
    if (!pr_out.empty()) write_spline_file(s, pr_out);
  });

  // ---- refine ----
  auto* refine = app.add_subcommand("refine", "Adaptive C^0 refinement of a builtin function");
  std::string rf_f = "runge", rf_out;
  int rf_degree = 2, rf_steps = 10;
  refine->add_option("--f", rf_f, "builtin function");
  refine->add_option("--degree", rf_degree, "polynomial degree")->check(CLI::PositiveNumber);
  refine->add_option("--steps", rf_steps, "bisection rounds");
  refine->add_option("-o,--output", rf_out, "final spline JSON");
  refine->callback([&] {
    const auto [a, b] = builtin_domain(rf_f);
    const RealFunction f = builtin_function(rf_f);
    const auto seq = adaptive_refine(f, rf_degree, a, b, rf_steps);
    std::cout << "level,dof,l2_error\n";
    for (std::size_t k = 0; k < seq.size(); ++k) {
      std::cout << k << ',' << seq[k].first.dim() << ','
                << l2_error(f, seq[k].second, 2 * (rf_degree + 1)) << "\n";
    }
    if (!rf_out.empty()) write_spline_file(seq.back().second, rf_out);
  });

  // ---- experiment ----
  auto* experiment = app.add_subcommand("experiment", "Reproduce the reference experiments");
  experiment->require_subcommand(1);
  std::string exp_outdir = ".";
  experiment->add_option("--outdir", exp_outdir, "directory for CSV/JSON outputs");

  auto curves_csv = [&](const FunctionCoarsenResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot open " + path);
    out.precision(17);
    out << "strategy,dof,l2_error\n";
    for (const auto& curve : result.strategies) {
      for (std::size_t k = 0; k < curve.dofs.size(); ++k) {
        out << curve.label << ',' << curve.dofs[k] << ',' << curve.errors[k] << "\n";
      }
    }
  };

  auto* runge = experiment->add_subcommand("runge-coarsen",
                                           "Coarsening replay of the Runge function, strategies "
                                           "1-4, degrees 2 and 4");
  runge->callback([&] {
    for (int p : {2, 4}) {
      const auto result = function_coarsen_experiment(builtin_function("runge"), -5.0, 5.0, p,
                                                      p == 2 ? 1200 : 2400, 8);
      const std::string path = exp_outdir + "/runge_coarsen_p" + std::to_string(p) + ".csv";
      curves_csv(result, path);
      std::cout << "p=" << p << ": start dof " << result.initial_dof;
      for (const auto& c : result.strategies) {
        std::cout << ", slope[" << c.label << "] " << middle_decade_slope(c);
      }
      std::cout << " -> " << path << "\n";
    }
  });

  auto* root5 = experiment->add_subcommand("root5",
                                           "Coarsening replay of the fifth-root function, "
                                           "strategies 1-3");
  root5->callback([&] {
    for (int p : {2, 4}) {
      const auto result = function_coarsen_experiment(builtin_function("root5"), -1.0, 1.0, p,
                                                      p == 2 ? 1200 : 800, 8, 3);
      const std::string path = exp_outdir + "/root5_coarsen_p" + std::to_string(p) + ".csv";
      curves_csv(result, path);
      std::cout << "p=" << p << ": start dof " << result.initial_dof << " -> " << path << "\n";
    }
  });

  auto* linf_sample = experiment->add_subcommand("linf-sample",
                                                 "Max-norm reduction of 101 Runge samples to 7 "
                                                 "and 3 interior knots");
  linf_sample->callback([&] {
    SampleSet data;
    const RealFunction f = builtin_function("runge");
    for (int i = 0; i < 101; ++i) {
      const double x = -5.0 + 0.1 * i;
      data.x.push_back(x);
      data.y.push_back(f(x));
    }
    for (int target : {7, 3}) {
      const auto result = linf_sample_experiment(data, target);
      const std::string base = exp_outdir + "/linf_sample_" + std::to_string(target);
      write_spline_file(result.spline, base + ".json");
      write_coarsen_csv(result.report, base + ".csv");
      std::cout << target << " interior knots: max sample error " << result.max_sample_error
                << ", indicator sum " << result.indicator_sum << " -> " << base << ".{json,csv}\n";
    }
  });

  auto* heat = experiment->add_subcommand("heat",
                                          "Backward Euler heat equation with per-step H1 "
                                          "coarsening");
  int heat_degree = 3;
  heat->add_option("--degree", heat_degree, "polynomial degree (2..4)")
      ->check(CLI::Range(2, 4));
  heat->callback([&] {
    const auto result = heat_experiment(heat_degree, 1001, 0.01, 1.0, 1e-3);
    const std::string base = exp_outdir + "/heat_p" + std::to_string(heat_degree);
    write_heat_csv(result.coarse, base + "_dof.csv");
    write_spline_file(result.coarse.final_state(), base + "_final.json");
    std::cout << "p=" << heat_degree << ": initial projection error "
              << result.initial_projection_error << ", final L2 difference "
              << result.final_l2_difference << ", dof " << result.initial_dof << " -> "
              << result.final_dof << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::ios_base::failure& err) {
    std::cerr << "I/O error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
