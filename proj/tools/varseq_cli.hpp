#pragma once

// Command-line front end. Exit codes: 0 success or pass, 1 verification
// failure, 2 usage or input error.

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "varseq/varseq.hpp"

namespace varseq::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_usage = 2;

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variable-exponent sequence spaces: norms, discrete operators, weights, RdF, verification",
               "varseq"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  double rel_tol = default_rel_tol;
  unsigned jobs = 1;
  std::string out_path;
  app.add_option("--seed", seed, "Seed for every stochastic step");
  app.add_option("--rel-tol", rel_tol, "Relative bisection tolerance for Luxemburg norms")->check(CLI::PositiveNumber);
  app.add_option("--jobs", jobs, "Worker threads for the verification harness")->check(CLI::Range(1u, 1024u));
  app.add_option("--out", out_path, "Output file (apply, rdf) or directory (verify)");

  std::string seq_path;
  std::string exp_desc;
  const std::string exp_help = "Exponent: JSON file, constant:C or log_holder:P_INF,C_INF[@LO:HI]";

  auto* norm = app.add_subcommand("norm", "Luxemburg norm of a sequence");
  norm->add_option("--seq", seq_path, "Sequence file (JSON or .csv)")->required();
  norm->add_option("--exp", exp_desc, exp_help)->required();

  std::string op;
  std::optional<double> alpha;
  std::string grid_text;
  auto* apply = app.add_subcommand("apply", "Apply M_alpha, H or I_alpha on a grid");
  apply->add_option("--op", op, "Operator")->required()->check(CLI::IsMember({"maximal", "hilbert", "riesz"}));
  apply->add_option("--alpha", alpha, "Order alpha (maximal: [0,1), riesz: (0,1))");
  apply->add_option("--seq", seq_path, "Input sequence file")->required();
  apply->add_option("--grid", grid_text, "Output grid LO:HI")->required();

  std::string kind;
  std::optional<double> delta;
  std::string weight_class;
  std::optional<double> r;
  std::optional<double> s;
  auto* weight = app.add_subcommand("weight", "Muckenhoupt constant of a weight on a grid");
  weight->add_option("--kind", kind, "Closed-form weight kind")->check(CLI::IsMember({"power"}));
  weight->add_option("--delta", delta, "Power weight exponent: w(i) = (1+|i|)^delta");
  weight->add_option("--grid", grid_text, "Grid LO:HI for closed-form weights");
  weight->add_option("--seq", seq_path, "Weight tabulated in the sequence format");
  weight->add_option("--class", weight_class, "Constant to compute")->required()->check(CLI::IsMember({"a1", "ar", "ars"}));
  weight->add_option("--r", r, "r for A_r and A_{r,s}");
  weight->add_option("--s", s, "s for A_{r,s}");

  std::size_t order = default_rdf_order;
  std::optional<double> big_a;
  std::string report_path;
  auto* rdf = app.add_subcommand("rdf", "Rubio de Francia transform of a non-negative sequence");
  rdf->add_option("--seq", seq_path, "Non-negative sequence file")->required();
  rdf->add_option("--exp", exp_desc, exp_help + " (the space the maximal norm is measured in)")->required();
  rdf->add_option("--k", order, "Series truncation order K")->required();
  rdf->add_option("--a", big_a, "Operator-norm parameter A (default 1.05 x empirical estimate)");
  rdf->add_option("--grid", grid_text, "Grid LO:HI")->required();
  rdf->add_option("--report", report_path, "Write the property report JSON here");

  std::string config_path;
  auto* verify = app.add_subcommand("verify", "Run a verification suite config");
  verify->add_option("--config", config_path, "Suite config (JSON, version v1)")->required();

  for (auto* sub : {norm, apply, weight, rdf, verify}) sub->fallthrough();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*norm) {
      const Seq a = io::load_seq(seq_path);
      const Grid fallback = a.empty() ? Grid(0, 0) : a.support();
      out << io::format15(luxemburg_norm(a, io::parse_exponent(exp_desc, fallback), rel_tol)) << "\n";
      return exit_ok;
    }

    if (*apply) {
      if (out_path.empty()) throw input_error("--out is required for apply");
      const Seq a = io::load_seq(seq_path);
      const Grid g = io::parse_grid(grid_text);
      Seq result;
      if (op == "hilbert") {
        result = hilbert(a, g);
      } else if (op == "riesz") {
        if (!alpha) throw input_error("--alpha is required for --op riesz");
        result = riesz_potential(a, *alpha, g);
      } else {
        result = fractional_maximal(a, alpha.value_or(0.0), g);
      }
      io::save_seq(out_path, result);
      return exit_ok;
    }

    if (*weight) {
      std::optional<Weight> w;
      if (!seq_path.empty()) {
        w = Weight::from_seq(io::load_seq(seq_path));
      } else {
        if (kind.empty() || !delta || grid_text.empty())
          throw input_error("weight needs --seq FILE or --kind power --delta D --grid LO:HI");
        w = power_weight(*delta, io::parse_grid(grid_text));
      }
      double c = 0.0;
      if (weight_class == "a1") {
        c = a1_constant(*w);
      } else if (weight_class == "ar") {
        if (!r) throw input_error("--r is required for --class ar");
        c = ar_constant(*w, *r);
      } else {
        if (!r || !s) throw input_error("--r and --s are required for --class ars");
        c = ars_constant(*w, *r, *s);
      }
      out << io::format15(c) << "\n";
      return exit_ok;
    }

    if (*rdf) {
      if (out_path.empty()) throw input_error("--out is required for rdf");
      const Grid g = io::parse_grid(grid_text);
      const Seq b = io::load_seq(seq_path);
      const ExponentSequence p_dual = io::parse_exponent(exp_desc, g);
      const double a_used =
          big_a ? *big_a : default_norm_safety * estimate_maximal_norm(p_dual, 500, seed.value_or(0), g, jobs);
      const RdfConfig cfg(order, a_used, g);
      io::save_seq(out_path, rdf_transform(b, cfg));
      const VerificationReport rep = rdf_properties_report(b, cfg, p_dual);
      if (!report_path.empty()) io::write_file(report_path, rep.details.dump(2) + "\n");
      return rep.verdict ? exit_ok : exit_failed;
    }

    if (*verify) {
      if (out_path.empty()) throw input_error("--out is required for verify");
      SuiteOptions opt;
      opt.seed_override = seed;
      opt.jobs = jobs;
      const auto results = run_suite(config_path, opt);
      write_reports(out_path, results);
      for (const auto& res : results)
        out << (res.ok() ? "ok    " : "FAIL  ") << res.id << "  verdict=" << (res.report.verdict ? "pass" : "fail")
            << "  max_ratio=" << io::format15(res.report.max_ratio) << "\n";
      return suite_passed(results) ? exit_ok : exit_failed;
    }
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const precondition_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

}  // namespace varseq::cli
