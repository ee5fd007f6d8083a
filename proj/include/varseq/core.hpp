#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace varseq {

using index_t = std::int64_t;

/// Raised when an argument violates an operation's stated precondition.
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised for malformed files, configs or command-line values.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw precondition_error(what);
}

/// Closed integer interval [lo, hi], the finite stand-in for Z.
struct Grid {
  index_t lo = 0;
  index_t hi = 0;

  Grid() = default;
  Grid(index_t lo_, index_t hi_) : lo(lo_), hi(hi_) {
    require(lo <= hi, "grid requires lo <= hi");
  }

  std::size_t size() const { return static_cast<std::size_t>(hi - lo + 1); }
  bool contains(index_t i) const { return lo <= i && i <= hi; }
  bool contains(const Grid& g) const { return lo <= g.lo && g.hi <= hi; }
  index_t center() const { return lo + (hi - lo) / 2; }

  /// Twice as many points, grown symmetrically about the same center.
  Grid doubled() const {
    const auto n = static_cast<index_t>(size());
    return Grid(lo - n / 2, hi + (n - n / 2));
  }

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Finitely supported real sequence on Z. Entries outside
/// [support_lo, support_hi] are identically zero.
class Seq {
 public:
  Seq() = default;
  Seq(index_t support_lo, std::vector<double> values)
      : lo_(support_lo), values_(std::move(values)) {}

  static Seq zeros(const Grid& g) { return Seq(g.lo, std::vector<double>(g.size(), 0.0)); }

  static Seq delta(index_t at, double value = 1.0) { return Seq(at, {value}); }

  /// Tabulates f(i) for i in g.
  template <class F>
  static Seq tabulate(const Grid& g, F&& f) {
    std::vector<double> v(g.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(g.lo + static_cast<index_t>(k));
    return Seq(g.lo, std::move(v));
  }

  index_t support_lo() const { return lo_; }
  index_t support_hi() const { return lo_ + static_cast<index_t>(values_.size()) - 1; }
  bool empty() const { return values_.empty(); }
  std::size_t size() const { return values_.size(); }
  Grid support() const { return Grid(lo_, support_hi()); }

  std::span<const double> values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }

  double operator()(index_t i) const {
    if (i < lo_ || i > support_hi()) return 0.0;
    return values_[static_cast<std::size_t>(i - lo_)];
  }

  /// Values on g, zero-filled where g extends past the support.
  std::vector<double> on(const Grid& g) const {
    std::vector<double> out(g.size(), 0.0);
    if (empty()) return out;
    const index_t from = std::max(g.lo, lo_);
    const index_t to = std::min(g.hi, support_hi());
    for (index_t i = from; i <= to; ++i)
      out[static_cast<std::size_t>(i - g.lo)] = values_[static_cast<std::size_t>(i - lo_)];
    return out;
  }

  Seq restricted(const Grid& g) const { return Seq(g.lo, on(g)); }

  bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](double x) { return x == 0.0; });
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : values_) m = std::max(m, std::abs(x));
    return m;
  }

  template <class F>
  Seq map(F&& f) const {
    std::vector<double> v(values_.size());
    std::transform(values_.begin(), values_.end(), v.begin(), f);
    return Seq(lo_, std::move(v));
  }

  Seq scaled(double c) const {
    return map([c](double x) { return c * x; });
  }

  Seq abs() const {
    return map([](double x) { return std::abs(x); });
  }

  /// Pointwise |a|^r.
  Seq abs_pow(double r) const {
    return map([r](double x) { return std::pow(std::abs(x), r); });
  }

  friend Seq operator+(const Seq& a, const Seq& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    const Grid hull(std::min(a.support_lo(), b.support_lo()),
                    std::max(a.support_hi(), b.support_hi()));
    return tabulate(hull, [&](index_t i) { return a(i) + b(i); });
  }

  friend bool operator==(const Seq&, const Seq&) = default;

 private:
  index_t lo_ = 0;
  std::vector<double> values_;
};

/// Compensated summation, used where a single sum runs over many terms.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = sum_ + y;
    c_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

using Rng = std::mt19937_64;

/// Independent generator for (seed, stream, index). Results never depend on
/// the order in which substreams are drawn.
inline Rng substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index));
}

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform,
/// unlike std::uniform_real_distribution.
inline double uniform01(Rng& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

inline double uniform(Rng& g, double lo, double hi) { return lo + (hi - lo) * uniform01(g); }

/// Uniform integer in [0, n).
inline std::size_t uniform_index(Rng& g, std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(uniform01(g) * static_cast<double>(n)));
}

}  // namespace varseq
