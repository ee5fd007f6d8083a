#pragma once

// Discrete Muckenhoupt constants A_1, A_r and A_{r,s} of a weight on a grid.
// Constants are the normalised (average-based) sups over every subinterval
// of the grid, so they are nondecreasing as the grid grows.

#include <cmath>
#include <optional>
#include <vector>

#include "core.hpp"
#include "operators.hpp"

namespace varseq {

class Weight {
 public:
  Weight(Grid grid, std::vector<double> values, std::optional<double> power_delta = std::nullopt)
      : grid_(grid), values_(std::move(values)), power_delta_(power_delta) {
    require(values_.size() == grid_.size(), "weight values must match the grid");
    for (double v : values_) require(std::isfinite(v) && v > 0.0, "weights must be positive and finite");
  }

  /// Tabulated weight from a sequence; every entry must be positive.
  static Weight from_seq(const Seq& s) {
    require(!s.empty(), "weight sequence must be non-empty");
    const auto v = s.values();
    return Weight(s.support(), std::vector<double>(v.begin(), v.end()));
  }

  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  /// Exponent delta when w(i) = (1 + |i|)^delta.
  std::optional<double> power_delta() const { return power_delta_; }

  double operator()(index_t i) const { return values_.at(static_cast<std::size_t>(i - grid_.lo)); }

  Seq as_seq() const { return Seq(grid_.lo, values_); }

  /// w^e pointwise. Power weights keep a closed-form tag.
  Weight pow(double e) const {
    std::vector<double> v(values_.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::pow(values_[k], e);
    std::optional<double> tag;
    if (power_delta_) tag = *power_delta_ * e;
    return Weight(grid_, std::move(v), tag);
  }

  Weight scaled(double c) const {
    std::vector<double> v(values_);
    for (double& x : v) x *= c;
    return Weight(grid_, std::move(v));
  }

  Weight restricted(const Grid& g) const {
    require(grid_.contains(g), "weight does not cover the requested grid");
    const auto first = values_.begin() + (g.lo - grid_.lo);
    return Weight(g, std::vector<double>(first, first + static_cast<std::ptrdiff_t>(g.size())),
                  power_delta_);
  }

 private:
  Grid grid_;
  std::vector<double> values_;
  std::optional<double> power_delta_;
};

/// w(i) = (1 + |i|)^delta on g.
inline Weight power_weight(double delta, const Grid& g) {
  std::vector<double> v(g.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double i = static_cast<double>(g.lo + static_cast<index_t>(k));
    v[k] = delta == 0.0 ? 1.0 : std::pow(1.0 + std::abs(i), delta);
  }
  return Weight(g, std::move(v), delta);
}

/// Regenerates a tagged power weight on another grid.
inline Weight regenerate(const Weight& w, const Grid& g) {
  if (w.grid().contains(g)) return w.restricted(g);
  require(w.power_delta().has_value(), "only power weights can be regenerated on a larger grid");
  return power_weight(*w.power_delta(), g);
}

/// Smallest C with (M_G w)(j) <= C w(j) for every j of the grid.
inline double a1_constant(const Weight& w) {
  const Seq mw = grid_maximal(w.as_seq(), w.grid());
  double c = 0.0;
  for (std::size_t k = 0; k < w.values().size(); ++k) c = std::max(c, mw.values()[k] / w.values()[k]);
  return c;
}

/// sup over subintervals I of avg_I w / inf_I w.
inline double a1_interval_constant(const Weight& w) {
  const auto& v = w.values();
  double c = 0.0;
  for (std::size_t m = 0; m < v.size(); ++m) {
    double sum = 0.0;
    double low = v[m];
    for (std::size_t e = m; e < v.size(); ++e) {
      sum += v[e];
      low = std::min(low, v[e]);
      c = std::max(c, sum / static_cast<double>(e - m + 1) / low);
    }
  }
  return c;
}

namespace detail {

inline std::vector<double> prefix_sums(const std::vector<double>& v) {
  std::vector<double> p(v.size() + 1, 0.0);
  for (std::size_t k = 0; k < v.size(); ++k) p[k + 1] = p[k] + v[k];
  return p;
}

/// sup over intervals of (avg x)^{ex} (avg y)^{ey} from prefix sums.
inline double two_average_sup(const std::vector<double>& x, double ex, const std::vector<double>& y,
                              double ey) {
  const auto px = prefix_sums(x);
  const auto py = prefix_sums(y);
  double c = 0.0;
  for (std::size_t m = 0; m < x.size(); ++m)
    for (std::size_t e = m; e < x.size(); ++e) {
      const double len = static_cast<double>(e - m + 1);
      c = std::max(c, std::pow((px[e + 1] - px[m]) / len, ex) * std::pow((py[e + 1] - py[m]) / len, ey));
    }
  return c;
}

/// Same supremum with every interval summed directly, O(n^3).
inline double two_average_sup_direct(const std::vector<double>& x, double ex,
                                     const std::vector<double>& y, double ey) {
  double c = 0.0;
  for (std::size_t m = 0; m < x.size(); ++m)
    for (std::size_t e = m; e < x.size(); ++e) {
      double sx = 0.0;
      double sy = 0.0;
      for (std::size_t k = m; k <= e; ++k) {
        sx += x[k];
        sy += y[k];
      }
      const double len = static_cast<double>(e - m + 1);
      c = std::max(c, std::pow(sx / len, ex) * std::pow(sy / len, ey));
    }
  return c;
}

inline std::vector<double> powered(const std::vector<double>& v, double e) {
  std::vector<double> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = std::pow(v[k], e);
  return out;
}

}  // namespace detail

/// sup_I (avg_I w) (avg_I w^{-1/(r-1)})^{r-1}.
inline double ar_constant(const Weight& w, double r) {
  require(r > 1.0, "A_r requires r > 1");
  return detail::two_average_sup(w.values(), 1.0, detail::powered(w.values(), -1.0 / (r - 1.0)),
                                 r - 1.0);
}

inline double ar_constant_direct(const Weight& w, double r) {
  require(r > 1.0, "A_r requires r > 1");
  return detail::two_average_sup_direct(w.values(), 1.0,
                                        detail::powered(w.values(), -1.0 / (r - 1.0)), r - 1.0);
}

/// sup_I (avg_I w^s)^{1/s} (avg_I w^{-r'})^{1/r'}, r' = r / (r - 1).
inline double ars_constant(const Weight& w, double r, double s) {
  require(r > 1.0 && s >= r, "A_{r,s} requires 1 < r <= s");
  const double rp = r / (r - 1.0);
  return detail::two_average_sup(detail::powered(w.values(), s), 1.0 / s,
                                 detail::powered(w.values(), -rp), 1.0 / rp);
}

inline double ars_constant_direct(const Weight& w, double r, double s) {
  require(r > 1.0 && s >= r, "A_{r,s} requires 1 < r <= s");
  const double rp = r / (r - 1.0);
  return detail::two_average_sup_direct(detail::powered(w.values(), s), 1.0 / s,
                                        detail::powered(w.values(), -rp), 1.0 / rp);
}

}  // namespace varseq
