#pragma once

// Variable exponents p: Z -> [1, inf) stored as a finite window of values
// plus a constant tail. The tail makes inf, sup and the log-Holder constant
// exact finite computations.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "core.hpp"

namespace varseq {

class ExponentSequence {
 public:
  ExponentSequence(index_t window_lo, std::vector<double> values, double tail)
      : lo_(window_lo), values_(std::move(values)), tail_(tail) {
    require(!values_.empty(), "exponent window must hold at least one value");
    require(std::isfinite(tail_) && tail_ >= 1.0, "exponent tail must be finite and >= 1");
    for (double v : values_)
      require(std::isfinite(v) && v >= 1.0, "exponent values must be finite and >= 1");
  }

  static ExponentSequence constant(double c) { return ExponentSequence(0, {c}, c); }

  /// p(i) = p_inf + c_inf / log(e + |i|) on g, p_inf outside.
  static ExponentSequence log_holder(double p_inf, double c_inf, const Grid& g) {
    return tabulate(g, [&](index_t i) {
      return p_inf + c_inf / std::log(std::numbers::e + std::abs(static_cast<double>(i)));
    }, p_inf);
  }

  template <class F>
  static ExponentSequence tabulate(const Grid& g, F&& f, double tail) {
    std::vector<double> v(g.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(g.lo + static_cast<index_t>(k));
    return ExponentSequence(g.lo, std::move(v), tail);
  }

  index_t window_lo() const { return lo_; }
  index_t window_hi() const { return lo_ + static_cast<index_t>(values_.size()) - 1; }
  Grid window() const { return Grid(lo_, window_hi()); }
  const std::vector<double>& values() const { return values_; }
  double tail() const { return tail_; }

  double operator()(index_t i) const {
    if (i < lo_ || i > window_hi()) return tail_;
    return values_[static_cast<std::size_t>(i - lo_)];
  }

  /// Same window, f applied to every value and to the tail.
  template <class F>
  ExponentSequence map(F&& f) const {
    std::vector<double> v(values_.size());
    std::transform(values_.begin(), values_.end(), v.begin(), f);
    return ExponentSequence(lo_, std::move(v), f(tail_));
  }

  bool is_constant() const {
    return std::all_of(values_.begin(), values_.end(), [&](double v) { return v == tail_; });
  }

  friend bool operator==(const ExponentSequence&, const ExponentSequence&) = default;

 private:
  index_t lo_;
  std::vector<double> values_;
  double tail_;
};

struct ExponentBounds {
  double p_minus;
  double p_plus;
};

inline ExponentBounds p_bounds(const ExponentSequence& p) {
  const auto [mn, mx] = std::minmax_element(p.values().begin(), p.values().end());
  return {std::min(*mn, p.tail()), std::max(*mx, p.tail())};
}

/// Bounds of p restricted to the points of g.
inline ExponentBounds p_bounds_on(const ExponentSequence& p, const Grid& g) {
  ExponentBounds b{p(g.lo), p(g.lo)};
  for (index_t i = g.lo; i <= g.hi; ++i) {
    b.p_minus = std::min(b.p_minus, p(i));
    b.p_plus = std::max(b.p_plus, p(i));
  }
  return b;
}

inline constexpr double default_conjugate_guard = 1e-9;

/// p'(i) = p(i) / (p(i) - 1). Rejects exponents outside class P.
inline ExponentSequence conjugate(const ExponentSequence& p,
                                  double guard = default_conjugate_guard) {
  require(p_bounds(p).p_minus > 1.0 + guard, "exponent not in P: p_minus <= 1");
  return p.map([](double v) { return v / (v - 1.0); });
}

/// Pointwise p(i) / r.
inline ExponentSequence scale(const ExponentSequence& p, double r) {
  require(r > 0.0, "scale factor must be positive");
  return p.map([r](double v) { return v / r; });
}

/// q with 1/q(i) = 1/p(i) - alpha.
inline ExponentSequence sobolev_exponent(const ExponentSequence& p, double alpha) {
  require(alpha >= 0.0 && alpha < 1.0, "alpha must lie in [0, 1)");
  if (alpha == 0.0) return p;
  require(p_bounds(p).p_plus * alpha < 1.0, "Sobolev relation undefined: p_plus >= 1/alpha");
  return p.map([alpha](double v) { return v / (1.0 - alpha * v); });
}

/// p with 1/p(i) = 1/q(i) + alpha, the inverse of sobolev_exponent.
/// Requires the result to stay >= 1, i.e. q_minus >= 1/(1 - alpha).
inline ExponentSequence sobolev_preimage(const ExponentSequence& q, double alpha) {
  require(alpha >= 0.0 && alpha < 1.0, "alpha must lie in [0, 1)");
  if (alpha == 0.0) return q;
  require(p_bounds(q).p_minus * (1.0 - alpha) >= 1.0,
          "Sobolev preimage undefined: q_minus < 1/(1 - alpha)");
  return q.map([alpha](double v) { return v / (1.0 + alpha * v); });
}

/// Smallest C with |p(i) - p_inf| <= C / log(e + |i|), p_inf the stored tail.
inline double lh_infinity_constant(const ExponentSequence& p) {
  double c = 0.0;
  for (index_t i = p.window_lo(); i <= p.window_hi(); ++i) {
    const double dev = std::abs(p(i) - p.tail());
    if (dev == 0.0) continue;
    c = std::max(c, dev * std::log(std::numbers::e + std::abs(static_cast<double>(i))));
  }
  return c;
}

}  // namespace varseq
