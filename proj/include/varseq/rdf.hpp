#pragma once

// Rubio de Francia iteration R b = sum_{k=0}^{K} M_G^k b / (2A)^k with the
// grid-restricted maximal operator M_G, plus an empirical estimate of the
// operator norm A and a report on the three defining properties.

#include <cmath>
#include <cstdint>

#include "ensemble.hpp"
#include "exponents.hpp"
#include "operators.hpp"
#include "report.hpp"
#include "spaces.hpp"
#include "weights.hpp"

namespace varseq {

inline constexpr std::size_t default_rdf_order = 12;
inline constexpr double default_norm_safety = 1.05;

struct RdfConfig {
  std::size_t K = default_rdf_order;
  double A = 1.0;
  Grid grid;

  RdfConfig(std::size_t k, double a, Grid g) : K(k), A(a), grid(g) {
    require(A >= 1.0, "RdF parameter A must be >= 1");
  }
};

/// Truncated series; the denominator is (2A)^k so that ||M^k b|| <= A^k ||b||
/// sums to at most 2 ||b||.
inline Seq rdf_transform(const Seq& b, const RdfConfig& cfg) {
  for (double x : b.values()) require(x >= 0.0, "RdF transform requires b >= 0");
  Seq term = b.restricted(cfg.grid);
  std::vector<double> sum(term.values().begin(), term.values().end());
  double coef = 1.0;
  for (std::size_t k = 1; k <= cfg.K; ++k) {
    term = grid_maximal(term, cfg.grid);
    coef /= 2.0 * cfg.A;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += coef * term.values()[i];
  }
  return Seq(cfg.grid.lo, std::move(sum));
}

/// Largest ||M_G b|| / ||b|| in l^{p_dual} over a seeded ensemble of
/// non-negative b on the grid. A lower bound for the true norm, and >= 1
/// because member 0 is the constant sequence, a fixed point of M_G.
inline double estimate_maximal_norm(const ExponentSequence& p_dual, std::size_t ensemble_size,
                                    std::uint64_t seed, const Grid& grid, unsigned jobs = 1) {
  require(p_bounds(p_dual).p_minus > 1.0, "maximal norm estimate requires an exponent in P");
  std::vector<double> ratio(std::max<std::size_t>(ensemble_size, 1), 0.0);
  parallel_for(ratio.size(), jobs, [&](std::size_t k) {
    Seq b;
    if (k == 0) {
      b = Seq(grid.lo, std::vector<double>(grid.size(), 1.0));
    } else if (k % 6 == 5) {
      // Power profiles (1 + |i - c|)^{-gamma}, the near-extremal shapes for M.
      Rng g = substream(seed, 0x6a11, k);
      const index_t c = grid.lo + static_cast<index_t>(uniform_index(g, grid.size()));
      const double gamma = uniform(g, 0.05, 1.0);
      b = Seq::tabulate(grid, [&](index_t i) {
        return std::pow(1.0 + std::abs(static_cast<double>(i - c)), -gamma);
      });
    } else {
      b = Ensemble(all_families[k % 5], 1, grid, seed).member(k).abs();
    }
    ratio[k] = luxemburg_norm(grid_maximal(b, grid), p_dual) / luxemburg_norm(b, p_dual);
  });
  return *std::max_element(ratio.begin(), ratio.end());
}

/// Checks (i) b <= R b, (ii) ||R b|| <= 2 ||b||, (iii) M_G(R_K b) <= 2A R_{K+1} b
/// and records the A_1 constant of R b.
///
/// (iii) pairs K with K + 1 because sublinearity gives
/// M_G sum_{k<=K} M_G^k b/(2A)^k <= 2A sum_{1<=k<=K+1} M_G^k b/(2A)^k <= 2A R_{K+1} b,
/// which is exact with respect to truncation.
inline VerificationReport rdf_properties_report(const Seq& b, const RdfConfig& cfg,
                                                const ExponentSequence& p_dual) {
  Stopwatch clock;
  require(!b.is_zero(), "RdF report requires b != 0");
  const Seq base = b.restricted(cfg.grid);
  const Seq rb = rdf_transform(b, cfg);
  const Seq rb_next = rdf_transform(b, RdfConfig(cfg.K + 1, cfg.A, cfg.grid));

  double margin_i = INFINITY;
  for (std::size_t k = 0; k < rb.size(); ++k)
    margin_i = std::min(margin_i, rb.values()[k] - base.values()[k]);

  const double norm_b = luxemburg_norm(base, p_dual);
  const double norm_rb = luxemburg_norm(rb, p_dual);
  const double ratio_ii = norm_rb / norm_b;

  const Seq m_rb = grid_maximal(rb, cfg.grid);
  double worst_iii = 0.0;
  for (std::size_t k = 0; k < rb.size(); ++k) {
    if (m_rb.values()[k] == 0.0) continue;
    worst_iii = std::max(worst_iii, m_rb.values()[k] / (2.0 * cfg.A * rb_next.values()[k]));
  }

  // A zero of R b (possible only for K = 0) means no finite A_1 constant.
  const bool positive = std::all_of(rb.values().begin(), rb.values().end(), [](double x) { return x > 0.0; });
  const double a1 = positive ? a1_constant(Weight(cfg.grid, std::vector<double>(rb.values().begin(), rb.values().end())))
                             : INFINITY;

  const bool pass_i = margin_i >= -1e-15;
  const bool pass_ii = ratio_ii <= 2.0 * (1.0 + 1e-9);
  const bool pass_iii = worst_iii <= 1.0 + 1e-12;
  const bool pass_a1 = a1 <= 2.0 * cfg.A * (1.0 + 1e-6);

  VerificationReport rep;
  rep.name = "rdf_properties";
  rep.inputs = {{"K", cfg.K}, {"A", cfg.A}, {"grid", grid_json(cfg.grid)}};
  rep.set_ratios({ratio_ii});
  rep.verdict = pass_i && pass_ii && pass_iii && pass_a1;
  rep.details = {{"A_used", cfg.A},
                 {"K", cfg.K},
                 {"a1_constant", a1},
                 {"checks",
                  {{"i", {{"pass", pass_i}, {"min_gap", margin_i}}},
                   {"ii", {{"pass", pass_ii}, {"norm_ratio", ratio_ii}}},
                   {"iii", {{"pass", pass_iii}, {"max_quotient", worst_iii}}},
                   {"a1", {{"pass", pass_a1}, {"bound", 2.0 * cfg.A}}}}}};
  rep.runtime_seconds = clock.seconds();
  return rep;
}

}  // namespace varseq
