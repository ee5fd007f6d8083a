#pragma once

// Randomised property checks over the space, operator, weight and RdF
// layers. Each returns a VerificationReport whose ratios are the per-trial
// quantities compared against the stated tolerance.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "harness.hpp"

namespace varseq {

namespace gen {

/// Random sequence of 1..max_len points with a random offset; magnitudes
/// span a few decades and roughly a fifth of the entries are zero.
inline Seq random_seq(Rng& g, std::size_t max_len = 64, bool nonnegative = false) {
  const std::size_t n = 1 + uniform_index(g, max_len);
  const index_t lo = static_cast<index_t>(uniform_index(g, 41)) - 20;
  std::vector<double> v(n);
  for (double& x : v) {
    const double mag = std::pow(10.0, uniform(g, -2.0, 1.0));
    const double sign = nonnegative || uniform01(g) < 0.5 ? 1.0 : -1.0;
    x = uniform01(g) < 0.2 ? 0.0 : sign * mag;
  }
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) v[0] = 1.0;
  return Seq(lo, std::move(v));
}

/// Variable exponent with values in [lo, hi] on a window around the origin.
inline ExponentSequence random_exponent(Rng& g, double lo = 1.1, double hi = 8.0) {
  const index_t w = static_cast<index_t>(uniform_index(g, 60));
  const Grid window(-w, w + static_cast<index_t>(uniform_index(g, 10)));
  return ExponentSequence::tabulate(window, [&](index_t) { return uniform(g, lo, hi); }, uniform(g, lo, hi));
}

}  // namespace gen

namespace detail {

inline VerificationReport make_report(std::string name, json inputs, std::vector<double> ratios, bool verdict,
                                      const Stopwatch& clock) {
  VerificationReport rep;
  rep.name = std::move(name);
  rep.inputs = std::move(inputs);
  rep.set_ratios(std::move(ratios));
  rep.verdict = verdict && rep.all_finite();
  rep.runtime_seconds = clock.seconds();
  return rep;
}

inline double rel_diff(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

}  // namespace detail

/// Constant exponent c in (1, 20]: the Luxemburg norm equals (sum |a|^c)^{1/c}.
inline VerificationReport check_norm_oracle(std::size_t trials, std::uint64_t seed, double tol = 1e-10) {
  Stopwatch clock;
  std::vector<double> err(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng g = substream(seed, 1, t);
    const Seq a = gen::random_seq(g);
    double c = 20.0 - uniform(g, 0.0, 19.0);  // (1, 20]
    if (c <= 1.0) c = 20.0;
    double s = 0.0;
    for (double x : a.values()) s += std::pow(std::abs(x), c);
    err[t] = detail::rel_diff(luxemburg_norm(a, ExponentSequence::constant(c)), std::pow(s, 1.0 / c));
  }
  const bool ok = std::all_of(err.begin(), err.end(), [&](double e) { return e <= tol; });
  return detail::make_report("norm_oracle", {{"trials", trials}, {"seed", seed}, {"tolerance", tol}}, err, ok, clock);
}

/// ||a||^r = || |a|^r ||_{p/r} for r in (0, p_minus).
inline VerificationReport check_power_identity(std::size_t trials, std::uint64_t seed, double tol = 1e-9) {
  Stopwatch clock;
  std::vector<double> err(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng g = substream(seed, 2, t);
    const Seq a = gen::random_seq(g);
    const ExponentSequence p = gen::random_exponent(g);
    const double r = p_bounds(p).p_minus * uniform(g, 0.02, 0.98);
    const auto [lhs, rhs] = power_norm_identity_check(a, p, r);
    err[t] = detail::rel_diff(lhs, rhs);
  }
  const bool ok = std::all_of(err.begin(), err.end(), [&](double e) { return e <= tol; });
  return detail::make_report("power_identity", {{"trials", trials}, {"seed", seed}, {"tolerance", tol}}, err, ok,
                             clock);
}

/// ||a||_{p_plus} / ||a||_{p(.)} <= 1.
inline VerificationReport check_embedding(std::size_t trials, std::uint64_t seed, double tol = 1e-9) {
  Stopwatch clock;
  std::vector<double> ratio(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng g = substream(seed, 3, t);
    const Seq a = gen::random_seq(g);
    const ExponentSequence p = gen::random_exponent(g, 1.0, 12.0);
    const double pp = p_bounds(p).p_plus;
    double s = 0.0;
    for (double x : a.values()) s += std::pow(std::abs(x), pp);
    ratio[t] = std::pow(s, 1.0 / pp) / luxemburg_norm(a, p);
  }
  const bool ok = std::all_of(ratio.begin(), ratio.end(), [&](double x) { return x <= 1.0 + tol; });
  return detail::make_report("embedding", {{"trials", trials}, {"seed", seed}, {"tolerance", tol}}, ratio, ok, clock);
}

/// sum |a b| / (||a||_p ||b||_{p'}) <= 2.
inline VerificationReport check_holder(std::size_t trials, std::uint64_t seed, double constant = 2.0,
                                       double tol = 1e-9) {
  Stopwatch clock;
  std::vector<double> ratio(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng g = substream(seed, 4, t);
    const Seq a = gen::random_seq(g);
    Seq b = gen::random_seq(g);
    if (t % 4 == 0) b = a.abs();  // overlapping supports with aligned mass
    const ExponentSequence p = gen::random_exponent(g);
    ratio[t] = holder_pairing(a, b) / (luxemburg_norm(a, p) * luxemburg_norm(b, conjugate(p)));
  }
  const bool ok = std::all_of(ratio.begin(), ratio.end(), [&](double x) { return x <= constant * (1.0 + tol); });
  return detail::make_report("holder", {{"trials", trials}, {"seed", seed}, {"constant", constant}, {"tolerance", tol}},
                             ratio, ok, clock);
}

/// dual_norm_estimate / ||a|| in [1 - tol, 2].
inline VerificationReport check_duality(std::size_t trials, std::uint64_t seed, std::size_t dual_trials = 8,
                                        double tol = 1e-9) {
  Stopwatch clock;
  std::vector<double> ratio(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng g = substream(seed, 5, t);
    const Seq a = gen::random_seq(g);
    const ExponentSequence p = gen::random_exponent(g);
    ratio[t] = dual_norm_estimate(a, p, dual_trials, seed + t) / luxemburg_norm(a, p);
  }
  const bool ok =
      std::all_of(ratio.begin(), ratio.end(), [&](double x) { return x >= 1.0 - tol && x <= 2.0; });
  return detail::make_report("duality",
                             {{"trials", trials}, {"seed", seed}, {"dual_trials", dual_trials}, {"tolerance", tol}},
                             ratio, ok, clock);
}

/// Prefix-sum M_alpha against the O(n^3) reference, plus the closed form
/// M_alpha(delta_0)(j) = (1 + |j|)^{alpha - 1}.
inline VerificationReport check_maximal_agreement(std::size_t trials, std::uint64_t seed, double tol = 1e-12) {
  Stopwatch clock;
  std::vector<double> err(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng g = substream(seed, 6, t);
    const Seq a = gen::random_seq(g, 40);
    const double alpha = t % 5 == 0 ? 0.0 : uniform(g, 0.0, 0.99);
    const index_t pad = static_cast<index_t>(uniform_index(g, 8));
    const Grid grid(a.support_lo() - pad, a.support_hi() + static_cast<index_t>(uniform_index(g, 8)));
    const Seq fast = fractional_maximal(a, alpha, grid);
    const Seq ref = fractional_maximal_reference(a, alpha, grid);
    double worst = 0.0;
    for (std::size_t k = 0; k < fast.size(); ++k)
      worst = std::max(worst, detail::rel_diff(fast.values()[k], ref.values()[k]));
    err[t] = worst;
  }
  bool exact = true;
  const Grid g(-64, 64);
  for (double alpha : {0.0, 0.25, 0.5, 0.75}) {
    const Seq m = fractional_maximal(Seq::delta(0), alpha, g);
    for (index_t j = g.lo; j <= g.hi; ++j) {
      const double len = 1.0 + static_cast<double>(std::abs(j));
      const double expected = alpha == 0.0 ? 1.0 / len : std::pow(len, alpha - 1.0);
      exact = exact && m(j) == expected;
    }
  }
  const bool ok = exact && std::all_of(err.begin(), err.end(), [&](double e) { return e <= tol; });
  auto rep = detail::make_report("maximal_agreement", {{"trials", trials}, {"seed", seed}, {"tolerance", tol}}, err,
                                 ok, clock);
  rep.details["delta_closed_form_exact"] = exact;
  return rep;
}

/// Weight constant identities on power weights (1 + |i|)^delta over `grid`.
/// Ratios are ars_constant(w^{1/s}, r, s) / a1_constant(w)^{1/s}.
inline VerificationReport check_weight_constants(const Grid& grid, const std::vector<double>& deltas,
                                                 const std::vector<std::pair<double, double>>& rs_pairs) {
  Stopwatch clock;
  json failures = json::array();
  const Weight one = power_weight(0.0, grid);
  if (a1_constant(one) != 1.0) failures.push_back("A_1 of w = 1 is not exactly 1");
  for (double r : {1.5, 2.0, 3.0}) {
    if (ar_constant(one, r) != 1.0) failures.push_back("A_r of w = 1 is not exactly 1");
    if (ars_constant(one, r, r + 1.0) != 1.0) failures.push_back("A_{r,s} of w = 1 is not exactly 1");
  }

  std::vector<double> ratios;
  for (double delta : deltas) {
    const Weight w = power_weight(delta, grid);
    double prev = INFINITY;
    for (double r : {1.25, 1.5, 2.0, 3.0, 5.0}) {
      const double fast = ar_constant(w, r);
      if (detail::rel_diff(fast, ar_constant_direct(w, r)) > 1e-12)
        failures.push_back("prefix/direct A_r mismatch at delta " + std::to_string(delta));
      if (fast > prev * (1.0 + 1e-9)) failures.push_back("A_r not nonincreasing in r at delta " + std::to_string(delta));
      prev = fast;
    }
    const double a1 = a1_constant(w);
    if (detail::rel_diff(a1, a1_interval_constant(w)) > 1e-12)
      failures.push_back("A_1 forms disagree at delta " + std::to_string(delta));
    for (const auto& [r, s] : rs_pairs) {
      const Weight ws = w.pow(1.0 / s);
      const double ars = ars_constant(ws, r, s);
      if (detail::rel_diff(ars, ars_constant_direct(ws, r, s)) > 1e-12)
        failures.push_back("prefix/direct A_{r,s} mismatch at delta " + std::to_string(delta));
      ratios.push_back(ars / std::pow(a1, 1.0 / s));
    }
  }
  const bool ok = failures.empty() &&
                  std::all_of(ratios.begin(), ratios.end(), [](double x) { return x <= 1.0 + 1e-9; });
  json pairs = json::array();
  for (const auto& [r, s] : rs_pairs) pairs.push_back({r, s});
  auto rep = detail::make_report("weight_constants", {{"grid", grid_json(grid)}, {"deltas", deltas}, {"rs_pairs", pairs}},
                                 ratios, ok, clock);
  rep.details["failures"] = failures;
  return rep;
}

/// RdF properties over `trials` random non-negative b with A = safety times
/// the empirical maximal norm on p_dual. Ratios are ||R_K b|| / ||b||.
inline VerificationReport check_rdf(const ExponentSequence& p_dual, const Grid& grid, std::size_t trials,
                                    std::size_t K, std::uint64_t seed, double safety = default_norm_safety,
                                    std::size_t norm_ensemble = 200, unsigned jobs = 1) {
  Stopwatch clock;
  const double estimate = estimate_maximal_norm(p_dual, norm_ensemble, seed, grid, jobs);
  const RdfConfig cfg(K, safety * estimate, grid);
  std::vector<double> ratios(trials);
  std::vector<json> failed(trials);
  double worst_a1 = 0.0;
  std::vector<double> a1s(trials);
  parallel_for(trials, jobs, [&](std::size_t t) {
    Seq b;
    if (t == 0) {
      b = Seq::delta(grid.center());
    } else {
      b = Ensemble(all_families[t % 5], 1, grid, seed).member(t).abs();
    }
    const auto rep = rdf_properties_report(b, cfg, p_dual);
    ratios[t] = rep.max_ratio;
    a1s[t] = rep.details["a1_constant"].get<double>();
    if (!rep.verdict) failed[t] = rep.details;
  });
  json failures = json::array();
  json failed_checks = {{"i", 0}, {"ii", 0}, {"iii", 0}, {"a1", 0}};
  for (auto& f : failed) {
    if (f.is_null()) continue;
    for (const auto& [k, v] : f["checks"].items())
      if (!v["pass"].get<bool>()) failed_checks[k] = failed_checks[k].get<int>() + 1;
    failures.push_back(f);
  }
  for (double a : a1s) worst_a1 = std::max(worst_a1, a);
  auto rep = detail::make_report("rdf",
                                 {{"p_dual", exponent_summary(p_dual)}, {"grid", grid_json(grid)}, {"trials", trials},
                                  {"K", K}, {"seed", seed}, {"safety", safety}},
                                 ratios, failures.empty(), clock);
  rep.details = {{"A_used", cfg.A},
                 {"maximal_norm_estimate", estimate},
                 {"max_a1_constant", worst_a1},
                 {"max_a1_excess", worst_a1 / (2.0 * cfg.A) - 1.0},
                 {"failed_checks", failed_checks},
                 {"failures", failures}};
  return rep;
}

}  // namespace varseq
