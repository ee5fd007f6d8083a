#pragma once

// Modular and Luxemburg norm of l^{p(.)}, Holder pairing and the dual-norm
// lower bound.

#include <cmath>
#include <cstdint>
#include <limits>

#include "core.hpp"
#include "exponents.hpp"

namespace varseq {

inline constexpr double default_rel_tol = 1e-12;

/// sum_i |a(i)|^{p(i)} over the support of a.
inline double modular(const Seq& a, const ExponentSequence& p) {
  double s = 0.0;
  const auto v = a.values();
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0.0) continue;
    s += std::pow(std::abs(v[k]), p(a.support_lo() + static_cast<index_t>(k)));
  }
  return s;
}

/// inf { lambda > 0 : modular(a / lambda) <= 1 }.
///
/// For finite support the modular of a / lambda is continuous and strictly
/// decreasing in lambda, so the norm is the unique root of modular = 1. The
/// root is bracketed and bisected to relative width rel_tol, then polished by
/// secant steps that never leave the bracket. Work is done on a / max|a| so
/// the bracket is independent of the magnitude of a.
inline double luxemburg_norm(const Seq& a, const ExponentSequence& p,
                             double rel_tol = default_rel_tol) {
  require(rel_tol > 0.0, "rel_tol must be positive");
  const double m = a.max_abs();
  if (m == 0.0) return 0.0;

  std::vector<double> base;
  std::vector<double> expo;
  double p_minus = std::numeric_limits<double>::infinity();
  const auto v = a.values();
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0.0) continue;
    base.push_back(std::abs(v[k]) / m);
    expo.push_back(p(a.support_lo() + static_cast<index_t>(k)));
    p_minus = std::min(p_minus, expo.back());
  }
  const auto mod = [&](double t) {
    double s = 0.0;
    for (std::size_t k = 0; k < base.size(); ++k) s += std::pow(base[k] / t, expo[k]);
    return s;
  };

  const double n = static_cast<double>(base.size());
  double lo = std::pow(n, -1.0 / p_minus);
  double hi = std::pow(n, 1.0 / p_minus);
  while (mod(lo) < 1.0) lo *= 0.5;
  while (mod(hi) > 1.0) hi *= 2.0;

  // Geometric steps while the bracket spans more than a factor of two.
  while (hi > 2.0 * lo) {
    const double mid = std::sqrt(lo * hi);
    (mod(mid) > 1.0 ? lo : hi) = mid;
  }
  while (hi - lo > rel_tol * lo) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (mod(mid) > 1.0 ? lo : hi) = mid;
  }
  double f_lo = mod(lo) - 1.0;
  double f_hi = mod(hi) - 1.0;
  double t = 0.5 * (lo + hi);
  for (int step = 0; step < 3 && f_lo > f_hi; ++step) {
    const double x = hi - f_hi * (hi - lo) / (f_hi - f_lo);
    if (!(x > lo && x < hi)) break;
    t = x;
    const double fx = mod(x) - 1.0;
    if (fx == 0.0) break;
    (fx > 0.0 ? lo : hi) = x;
    (fx > 0.0 ? f_lo : f_hi) = fx;
  }
  return m * t;
}

struct PowerIdentity {
  double lhs;
  double rhs;
};

/// Both sides of ||a||^r = || |a|^r ||_{p/r}, each from its own bisection.
inline PowerIdentity power_norm_identity_check(const Seq& a, const ExponentSequence& p,
                                               double r, double rel_tol = default_rel_tol) {
  require(r > 0.0 && r < p_bounds(p).p_minus, "power identity requires 0 < r < p_minus");
  return {std::pow(luxemburg_norm(a, p, rel_tol), r),
          luxemburg_norm(a.abs_pow(r), scale(p, r), rel_tol)};
}

/// sum_i |a(i) b(i)| over the common support.
inline double holder_pairing(const Seq& a, const Seq& b) {
  if (a.empty() || b.empty()) return 0.0;
  const index_t from = std::max(a.support_lo(), b.support_lo());
  const index_t to = std::min(a.support_hi(), b.support_hi());
  double s = 0.0;
  for (index_t i = from; i <= to; ++i) s += std::abs(a(i) * b(i));
  return s;
}

/// Lower bound for sup { sum |a b| : ||b||_{p'} <= 1 }.
///
/// The extremal candidate b*(i) = |a(i)/||a|| |^{p(i)-1} has p'-modular equal
/// to the p-modular of a/||a||, i.e. 1, and pairs with a to exactly ||a||.
/// Random multiplicative perturbations of b*, renormalised to the unit
/// sphere, can only raise the reported maximum. Trial t draws from its own
/// substream of (seed, t).
inline double dual_norm_estimate(const Seq& a, const ExponentSequence& p, std::size_t trials,
                                 std::uint64_t seed, double rel_tol = default_rel_tol) {
  require(!a.is_zero(), "dual norm estimate requires a != 0");
  const ExponentSequence p_dual = conjugate(p);
  const double lambda = luxemburg_norm(a, p, rel_tol);

  std::vector<double> candidate(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const index_t i = a.support_lo() + static_cast<index_t>(k);
    candidate[k] = std::pow(std::abs(a.values()[k]) / lambda, p(i) - 1.0);
  }

  const auto pairing_on_sphere = [&](Seq b) {
    const double nb = luxemburg_norm(b, p_dual, rel_tol);
    return holder_pairing(a, b.scaled(1.0 / nb));
  };

  double best = pairing_on_sphere(Seq(a.support_lo(), candidate));
  for (std::size_t t = 0; t < trials; ++t) {
    Rng g = substream(seed, 0xd0a1, t);
    std::vector<double> b(candidate);
    for (double& x : b) x *= 1.0 + uniform(g, -0.5, 0.5);
    best = std::max(best, pairing_on_sphere(Seq(a.support_lo(), std::move(b))));
  }
  return best;
}

}  // namespace varseq
