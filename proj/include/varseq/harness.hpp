#pragma once

// Empirical operator norms and verifiers for the boundedness theorems and
// the weighted inequalities behind them.
//
// Boundedness cannot be certified from finite data. The proxy used here: all
// per-trial ratios are finite, and the largest ratio grows by at most a fixed
// factor (default 1.3) when the grid is doubled with the same seeds. An
// unbounded operator, e.g. H on l^1, fails this on small grids.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "ensemble.hpp"
#include "exponents.hpp"
#include "operators.hpp"
#include "rdf.hpp"
#include "report.hpp"
#include "spaces.hpp"
#include "weights.hpp"

namespace varseq {

enum class OperatorKind { hilbert, riesz, maximal };

inline std::string to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::hilbert: return "hilbert";
    case OperatorKind::riesz: return "riesz";
    case OperatorKind::maximal: return "maximal";
  }
  return "?";
}

inline OperatorKind operator_from_string(const std::string& s) {
  if (s == "hilbert") return OperatorKind::hilbert;
  if (s == "riesz") return OperatorKind::riesz;
  if (s == "maximal") return OperatorKind::maximal;
  throw input_error("unknown operator '" + s + "'");
}

inline Seq apply_operator(OperatorKind k, const Seq& a, double alpha, const Grid& g) {
  switch (k) {
    case OperatorKind::hilbert: return hilbert(a, g);
    case OperatorKind::riesz: return riesz_potential(a, alpha, g);
    case OperatorKind::maximal: return fractional_maximal(a, alpha, g);
  }
  return a;
}

inline json exponent_summary(const ExponentSequence& p) {
  const auto b = p_bounds(p);
  return {{"window", json::array({p.window_lo(), p.window_hi()})},
          {"tail", p.tail()},
          {"p_minus", b.p_minus},
          {"p_plus", b.p_plus},
          {"lh_infinity_constant", lh_infinity_constant(p)}};
}

inline json ensemble_json(const Ensemble& e) {
  return {{"family", to_string(e.family)}, {"size", e.size}, {"grid", grid_json(e.grid)}, {"seed", e.seed}};
}

struct HarnessOptions {
  double growth_limit = 1.3;
  unsigned jobs = 1;
  /// Ensemble size for the empirical maximal-norm (class B) proxy.
  std::size_t maximal_ensemble = 100;
  /// Skip hypothesis checks; used only for negative controls.
  bool bypass_hypotheses = false;
};

/// Per-trial ||op a||_{q_out} / ||a||_{p_in} over the ensemble.
inline std::vector<double> operator_ratios(OperatorKind op, double alpha, const ExponentSequence& p_in,
                                           const ExponentSequence& q_out, const Ensemble& ens,
                                           unsigned jobs = 1) {
  std::vector<double> ratios(ens.size, 0.0);
  parallel_for(ens.size, jobs, [&](std::size_t k) {
    const Seq a = ens.member(k);
    ratios[k] = luxemburg_norm(apply_operator(op, a, alpha, ens.grid), q_out) / luxemburg_norm(a, p_in);
  });
  return ratios;
}

inline void check_operator_hypotheses(OperatorKind op, double alpha, const ExponentSequence& p_in) {
  if (op == OperatorKind::riesz) {
    require(alpha > 0.0 && alpha < 1.0, "Riesz potential requires 0 < alpha < 1");
    require(p_bounds(p_in).p_plus * alpha < 1.0, "Riesz potential requires p_plus < 1/alpha");
  }
  if (op == OperatorKind::maximal) require(alpha >= 0.0 && alpha < 1.0, "maximal operator requires 0 <= alpha < 1");
}

inline VerificationReport empirical_operator_norm(OperatorKind op, double alpha, const ExponentSequence& p_in,
                                                  const ExponentSequence& q_out, const Ensemble& ens,
                                                  unsigned jobs = 1) {
  Stopwatch clock;
  check_operator_hypotheses(op, alpha, p_in);
  VerificationReport rep;
  rep.name = "operator_norm";
  rep.inputs = {{"op", to_string(op)},
                {"alpha", alpha},
                {"p_in", exponent_summary(p_in)},
                {"q_out", exponent_summary(q_out)},
                {"ensemble", ensemble_json(ens)}};
  rep.set_ratios(operator_ratios(op, alpha, p_in, q_out, ens, jobs));
  rep.verdict = rep.all_finite();
  rep.runtime_seconds = clock.seconds();
  return rep;
}

using TrialRatios = std::function<std::vector<double>(const Ensemble&)>;

/// Runs trials on the ensemble grid and on its doubling with the same seeds.
inline void apply_stability(VerificationReport& rep, const TrialRatios& trials, const Ensemble& ens,
                            const HarnessOptions& opt) {
  rep.set_ratios(trials(ens));
  const Ensemble wide = ens.on(ens.grid.doubled());
  const auto wide_ratios = trials(wide);
  double wide_max = 0.0;
  bool finite = rep.all_finite();
  for (double x : wide_ratios) {
    wide_max = std::max(wide_max, x);
    finite = finite && std::isfinite(x);
  }
  const double growth = wide_max / rep.max_ratio;
  rep.verdict = finite && growth <= opt.growth_limit;
  rep.details["stability"] = {{"grid", grid_json(ens.grid)},
                              {"doubled_grid", grid_json(wide.grid)},
                              {"max_ratio", rep.max_ratio},
                              {"doubled_max_ratio", wide_max},
                              {"growth", growth},
                              {"growth_limit", opt.growth_limit}};
}

/// Records the empirical maximal norm on (p/r)' as the class-B proxy.
inline void record_class_b_proxy(VerificationReport& rep, const ExponentSequence& dual, const Ensemble& ens,
                                 const HarnessOptions& opt) {
  rep.details["class_b_proxy"] = {
      {"exponent", exponent_summary(dual)},
      {"maximal_norm_estimate", estimate_maximal_norm(dual, opt.maximal_ensemble, ens.seed, ens.grid, opt.jobs)}};
}

/// H bounded on l^{p(.)} when (p/r)' is in B for some 1 < r < p_minus.
inline VerificationReport verify_theorem1(const ExponentSequence& p, double r, const Ensemble& ens,
                                          const HarnessOptions& opt = {}) {
  Stopwatch clock;
  VerificationReport rep;
  rep.name = "theorem1";
  rep.inputs = {{"p", exponent_summary(p)}, {"r", r}, {"ensemble", ensemble_json(ens)},
                {"bypass_hypotheses", opt.bypass_hypotheses}};
  if (!opt.bypass_hypotheses) {
    require(r > 1.0 && r < p_bounds(p).p_minus, "theorem 1 requires 1 < r < p_minus");
    record_class_b_proxy(rep, conjugate(scale(p, r)), ens, opt);
  }
  apply_stability(rep, [&](const Ensemble& e) {
    return operator_ratios(OperatorKind::hilbert, 0.0, p, p, e, opt.jobs);
  }, ens, opt);
  rep.runtime_seconds = clock.seconds();
  return rep;
}

/// r with 1/r = 1/s + alpha.
inline double off_diagonal_partner(double s, double alpha) { return 1.0 / (1.0 / s + alpha); }

/// I_alpha bounded l^{p(.)} -> l^{q(.)} with 1/p = 1/q + alpha when
/// (q/s)' is in B for some 1/(1 - alpha) < s < q_minus.
inline VerificationReport verify_theorem2(const ExponentSequence& q, double s, double alpha, const Ensemble& ens,
                                          const HarnessOptions& opt = {}) {
  Stopwatch clock;
  require(alpha > 0.0 && alpha < 1.0, "theorem 2 requires 0 < alpha < 1");
  require(s > 1.0 / (1.0 - alpha) && s < p_bounds(q).p_minus, "theorem 2 requires 1/(1-alpha) < s < q_minus");
  const ExponentSequence p = sobolev_preimage(q, alpha);
  const double r = off_diagonal_partner(s, alpha);
  require(r > 1.0 && r < p_bounds(p).p_minus, "theorem 2 requires 1 < r < p_minus");

  VerificationReport rep;
  rep.name = "theorem2";
  rep.inputs = {{"q", exponent_summary(q)}, {"p", exponent_summary(p)}, {"s", s},
                {"alpha", alpha}, {"r", r}, {"ensemble", ensemble_json(ens)}};
  record_class_b_proxy(rep, conjugate(scale(q, s)), ens, opt);
  apply_stability(rep, [&](const Ensemble& e) {
    return operator_ratios(OperatorKind::riesz, alpha, p, q, e, opt.jobs);
  }, ens, opt);
  rep.runtime_seconds = clock.seconds();
  return rep;
}

/// || (sum_k (M_alpha a_k)^theta)^{1/theta} ||_q / || (sum_k |a_k|^theta)^{1/theta} ||_p.
inline double vector_valued_ratio(std::span<const Seq> family, double alpha, double theta,
                                  const ExponentSequence& p, const ExponentSequence& q, const Grid& g) {
  std::vector<Seq> images;
  images.reserve(family.size());
  for (const Seq& a : family) images.push_back(fractional_maximal(a, alpha, g));
  return luxemburg_norm(theta_aggregate(images, theta, g), q) /
         luxemburg_norm(theta_aggregate(family, theta, g), p);
}

/// Vector-valued inequality for M_alpha; trial t uses ensemble members
/// t*N .. t*N + N - 1 as its family.
inline VerificationReport verify_theorem3(const ExponentSequence& q, double s, double alpha, double theta,
                                          std::size_t family_count, const Ensemble& ens,
                                          const HarnessOptions& opt = {}) {
  Stopwatch clock;
  require(theta > 1.0, "theorem 3 requires theta > 1");
  require(alpha >= 0.0 && alpha < 1.0, "theorem 3 requires 0 <= alpha < 1");
  require(family_count >= 1, "theorem 3 requires a non-empty family");
  require(s > 1.0 / (1.0 - alpha) && s < p_bounds(q).p_minus,
          alpha > 0.0 ? "theorem 3 requires 1/(1-alpha) < s < q_minus" : "theorem 3 requires 1 < s < q_minus");
  const ExponentSequence p = sobolev_preimage(q, alpha);
  const double r = off_diagonal_partner(s, alpha);

  VerificationReport rep;
  rep.name = "theorem3";
  rep.inputs = {{"q", exponent_summary(q)}, {"p", exponent_summary(p)}, {"s", s}, {"alpha", alpha},
                {"r", r}, {"theta", theta}, {"family_count", family_count}, {"ensemble", ensemble_json(ens)}};
  record_class_b_proxy(rep, conjugate(scale(q, s)), ens, opt);
  apply_stability(rep, [&](const Ensemble& e) {
    std::vector<double> ratios(e.size, 0.0);
    parallel_for(e.size, opt.jobs, [&](std::size_t t) {
      std::vector<Seq> family;
      for (std::size_t k = 0; k < family_count; ++k) family.push_back(e.member(t * family_count + k));
      ratios[t] = vector_valued_ratio(family, alpha, theta, p, q, e.grid);
    });
    return ratios;
  }, ens, opt);
  rep.runtime_seconds = clock.seconds();
  return rep;
}

enum class WeightedKind { hunt_3_1, riesz_3_4, family_3_6 };

inline std::string to_string(WeightedKind k) {
  switch (k) {
    case WeightedKind::hunt_3_1: return "hunt_3_1";
    case WeightedKind::riesz_3_4: return "riesz_3_4";
    case WeightedKind::family_3_6: return "family_3_6";
  }
  return "?";
}

inline WeightedKind weighted_from_string(const std::string& s) {
  if (s == "hunt_3_1") return WeightedKind::hunt_3_1;
  if (s == "riesz_3_4") return WeightedKind::riesz_3_4;
  if (s == "family_3_6") return WeightedKind::family_3_6;
  throw input_error("unknown weighted inequality '" + s + "'");
}

struct WeightedParams {
  /// Exponent of the diagonal inequality for H; derived from s and alpha otherwise.
  double r = 2.0;
  double s = 2.0;
  double alpha = 0.0;
  double theta = 2.0;
  std::size_t family_count = 1;
};

namespace detail {

inline double weighted_power_sum(const Seq& f, const Weight& w, double power, double weight_power) {
  double s = 0.0;
  const auto& g = w.grid();
  for (index_t i = g.lo; i <= g.hi; ++i) {
    const double x = f(i);
    if (x == 0.0) continue;
    s += std::pow(std::abs(x), power) * std::pow(w(i), weight_power);
  }
  return s;
}

}  // namespace detail

/// Per-trial LHS / RHS of one of the weighted inequalities:
///   hunt_3_1:   sum |Ha|^r w            vs  sum |a|^r w
///   riesz_3_4:  sum |I_alpha a|^s w     vs  (sum |a|^r w^{r/s})^{s/r}
///   family_3_6: sum F^s w               vs  (sum G^r w^{r/s})^{s/r}
/// with F, G the theta-aggregates of (M_alpha a_k) and (a_k), 1/r = 1/s + alpha.
inline std::vector<double> weighted_quotients(WeightedKind kind, const WeightedParams& prm, const Weight& w,
                                              const Ensemble& ens, unsigned jobs = 1) {
  const Weight wg = regenerate(w, ens.grid);
  const Grid& g = ens.grid;
  std::vector<double> q(ens.size, 0.0);
  parallel_for(ens.size, jobs, [&](std::size_t t) {
    switch (kind) {
      case WeightedKind::hunt_3_1: {
        const Seq a = ens.member(t);
        q[t] = detail::weighted_power_sum(hilbert(a, g), wg, prm.r, 1.0) /
               detail::weighted_power_sum(a, wg, prm.r, 1.0);
        break;
      }
      case WeightedKind::riesz_3_4: {
        const Seq a = ens.member(t);
        const double r = off_diagonal_partner(prm.s, prm.alpha);
        q[t] = detail::weighted_power_sum(riesz_potential(a, prm.alpha, g), wg, prm.s, 1.0) /
               std::pow(detail::weighted_power_sum(a, wg, r, r / prm.s), prm.s / r);
        break;
      }
      case WeightedKind::family_3_6: {
        const double r = off_diagonal_partner(prm.s, prm.alpha);
        std::vector<Seq> family;
        std::vector<Seq> images;
        for (std::size_t k = 0; k < prm.family_count; ++k) {
          family.push_back(ens.member(t * prm.family_count + k));
          images.push_back(fractional_maximal(family.back(), prm.alpha, g));
        }
        const Seq big_f = theta_aggregate(images, prm.theta, g);
        const Seq big_g = theta_aggregate(family, prm.theta, g);
        q[t] = detail::weighted_power_sum(big_f, wg, prm.s, 1.0) /
               std::pow(detail::weighted_power_sum(big_g, wg, r, r / prm.s), prm.s / r);
        break;
      }
    }
  });
  return q;
}

inline VerificationReport verify_weighted_inequality(WeightedKind kind, const WeightedParams& prm, const Weight& w,
                                                     const Ensemble& ens, const HarnessOptions& opt = {}) {
  Stopwatch clock;
  const Weight wg = regenerate(w, ens.grid);
  VerificationReport rep;
  rep.name = "weighted_" + to_string(kind);
  json params = {{"alpha", prm.alpha}, {"s", prm.s}, {"theta", prm.theta}, {"family_count", prm.family_count}};
  json weight = {{"grid", grid_json(wg.grid())}};
  if (w.power_delta()) weight["power_delta"] = *w.power_delta();

  if (kind == WeightedKind::hunt_3_1) {
    require(prm.r > 1.0, "hunt_3_1 requires r > 1");
    const double ar = ar_constant(wg, prm.r);
    require(std::isfinite(ar), "hunt_3_1 requires a weight with finite A_r constant");
    params["r"] = prm.r;
    weight["ar_constant"] = ar;
  } else {
    if (kind == WeightedKind::riesz_3_4)
      require(prm.alpha > 0.0 && prm.alpha < 1.0, "riesz_3_4 requires 0 < alpha < 1");
    else
      require(prm.alpha >= 0.0 && prm.alpha < 1.0, "family_3_6 requires 0 <= alpha < 1");
    require(prm.s * (1.0 - prm.alpha) > 1.0, "weighted inequality requires s > 1/(1 - alpha)");
    if (kind == WeightedKind::family_3_6) require(prm.theta > 1.0, "family_3_6 requires theta > 1");
    const double a1 = a1_constant(wg);
    require(std::isfinite(a1), "weighted inequality requires a weight with finite A_1 constant");
    params["r"] = off_diagonal_partner(prm.s, prm.alpha);
    weight["a1_constant"] = a1;
  }
  rep.inputs = {{"kind", to_string(kind)}, {"params", params}, {"weight", weight}, {"ensemble", ensemble_json(ens)}};

  const TrialRatios trials = [&](const Ensemble& e) { return weighted_quotients(kind, prm, w, e, opt.jobs); };
  if (w.power_delta() || w.grid().contains(ens.grid.doubled())) {
    apply_stability(rep, trials, ens, opt);
  } else {
    rep.set_ratios(trials(ens));
    rep.verdict = rep.all_finite();
    rep.details["stability"] = nullptr;
  }
  rep.runtime_seconds = clock.seconds();
  return rep;
}

}  // namespace varseq
