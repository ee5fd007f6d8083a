#pragma once

// Discrete fractional maximal operator, Hilbert transform, Riesz potential,
// the grid-restricted maximal operator and its iterates, and the l^theta
// aggregate of a finite family.

#include <cmath>
#include <span>
#include <vector>

#include "core.hpp"

namespace varseq {

namespace detail {

/// len^{alpha - 1} for len = 1..n (index 0 unused).
inline std::vector<double> window_weights(std::size_t n, double alpha) {
  std::vector<double> w(n + 1, 0.0);
  for (std::size_t len = 1; len <= n; ++len) {
    const double l = static_cast<double>(len);
    w[len] = std::pow(l, alpha - 1.0);
  }
  return w;
}

/// out[j] = max over windows [m, n] of the array containing j of
/// (n - m + 1)^{alpha - 1} * sum_{m..n} x. Entries of x must be >= 0.
///
/// O(n^2): for each left end m the window values over all right ends are
/// formed from prefix sums, then a suffix maximum over the right end gives,
/// for every j >= m, the best window starting at m that still contains j.
inline std::vector<double> window_maximal(std::span<const double> x, double alpha) {
  const std::size_t n = x.size();
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) prefix[k + 1] = prefix[k] + x[k];
  const auto w = window_weights(n, alpha);

  std::vector<double> out(n, 0.0);
  std::vector<double> best(n, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    double run = 0.0;
    for (std::size_t e = n; e-- > m;) {
      const double sum = prefix[e + 1] - prefix[m];
      run = std::max(run, alpha == 0.0 ? sum / static_cast<double>(e - m + 1) : sum * w[e - m + 1]);
      best[e] = run;
    }
    for (std::size_t j = m; j < n; ++j) out[j] = std::max(out[j], best[j]);
  }
  return out;
}

}  // namespace detail

/// (M_alpha a)(j) on g, exact for finitely supported a.
///
/// A window reaching past the hull of supp(a) and {j} only adds length, and
/// since 1 - alpha > 0 that lowers the value; the supremum over Z is
/// therefore attained by a window inside that hull, which lies inside g.
inline Seq fractional_maximal(const Seq& a, double alpha, const Grid& g) {
  require(alpha >= 0.0 && alpha < 1.0, "fractional maximal requires alpha in [0, 1)");
  require(a.empty() || g.contains(a.support()), "grid must contain the support of a");
  const auto x = a.abs().on(g);
  return Seq(g.lo, detail::window_maximal(x, alpha));
}

/// Point-by-point enumeration of every window containing j, O(n^3).
/// Reference for testing fractional_maximal.
inline Seq fractional_maximal_reference(const Seq& a, double alpha, const Grid& g) {
  require(alpha >= 0.0 && alpha < 1.0, "fractional maximal requires alpha in [0, 1)");
  require(a.empty() || g.contains(a.support()), "grid must contain the support of a");
  const auto x = a.abs().on(g);
  const std::size_t n = x.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double best = 0.0;
    for (std::size_t m = 0; m <= j; ++m) {
      double sum = 0.0;
      for (std::size_t e = m; e < n; ++e) {
        sum += x[e];
        if (e < j) continue;
        const double len = static_cast<double>(e - m + 1);
        best = std::max(best, alpha == 0.0 ? sum / len : sum * std::pow(len, alpha - 1.0));
      }
    }
    out[j] = best;
  }
  return Seq(g.lo, std::move(out));
}

/// Maximal operator with windows confined to g. Underestimates the maximal
/// operator on Z unless the hull of supp(b) and {j} lies in g.
inline Seq grid_maximal(const Seq& b, const Grid& g) {
  const auto x = b.abs().on(g);
  return Seq(g.lo, detail::window_maximal(x, 0.0));
}

/// k-fold composition of grid_maximal; k = 0 is the identity.
inline Seq iterate_maximal(const Seq& b, std::size_t k, const Grid& g) {
  if (k == 0) return b;
  Seq out = grid_maximal(b, g);
  for (std::size_t step = 1; step < k; ++step) out = grid_maximal(out, g);
  return out;
}

namespace detail {

inline constexpr std::size_t kahan_threshold = 10000;

struct Nonzeros {
  std::vector<index_t> index;
  std::vector<double> value;
};

inline Nonzeros nonzeros(const Seq& a) {
  Nonzeros nz;
  const auto v = a.values();
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0.0) continue;
    nz.index.push_back(a.support_lo() + static_cast<index_t>(k));
    nz.value.push_back(v[k]);
  }
  return nz;
}

/// sum over i != j of a(i) * kernel(i - j), ascending i, for each j in g.
template <class Kernel>
Seq convolve_offdiagonal(const Seq& a, const Grid& g, Kernel&& kernel) {
  const Nonzeros nz = nonzeros(a);
  const bool compensate = nz.index.size() > kahan_threshold;
  std::vector<double> out(g.size(), 0.0);
  for (index_t j = g.lo; j <= g.hi; ++j) {
    double s = 0.0;
    KahanSum ks;
    for (std::size_t k = 0; k < nz.index.size(); ++k) {
      const index_t d = nz.index[k] - j;
      if (d == 0) continue;
      const double term = nz.value[k] * kernel(d);
      if (compensate)
        ks.add(term);
      else
        s += term;
    }
    out[static_cast<std::size_t>(j - g.lo)] = compensate ? ks.value() : s;
  }
  return Seq(g.lo, std::move(out));
}

}  // namespace detail

/// (Ha)(j) = sum_{i != j} a(i) / (i - j).
inline Seq hilbert(const Seq& a, const Grid& g) {
  return detail::convolve_offdiagonal(a, g, [](index_t d) { return 1.0 / static_cast<double>(d); });
}

/// (I_alpha a)(j) = sum_{i != j} a(i) / |i - j|^{1 - alpha}.
inline Seq riesz_potential(const Seq& a, double alpha, const Grid& g) {
  require(alpha > 0.0 && alpha < 1.0, "Riesz potential requires alpha in (0, 1)");
  if (a.empty()) return Seq::zeros(g);
  const index_t reach = std::max(std::abs(g.hi - a.support_lo()), std::abs(a.support_hi() - g.lo));
  std::vector<double> kern(static_cast<std::size_t>(reach) + 1, 0.0);
  for (std::size_t d = 1; d < kern.size(); ++d)
    kern[d] = std::pow(static_cast<double>(d), alpha - 1.0);
  return detail::convolve_offdiagonal(
      a, g, [&](index_t d) { return kern[static_cast<std::size_t>(std::abs(d))]; });
}

/// Pointwise (sum_k |a_k(j)|^theta)^{1/theta} on g.
inline Seq theta_aggregate(std::span<const Seq> family, double theta, const Grid& g) {
  require(theta > 1.0, "theta must exceed 1");
  if (family.size() == 1) return family.front().abs().restricted(g);
  std::vector<double> acc(g.size(), 0.0);
  for (const Seq& a : family) {
    const auto v = a.on(g);
    for (std::size_t k = 0; k < v.size(); ++k) acc[k] += std::pow(std::abs(v[k]), theta);
  }
  for (double& x : acc) x = std::pow(x, 1.0 / theta);
  return Seq(g.lo, std::move(acc));
}

}  // namespace varseq
