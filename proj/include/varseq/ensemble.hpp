#pragma once

// Seeded test-sequence families. Member k depends only on
// (family, grid, seed, k); random positions are drawn as fractions of the
// grid so that the same seed on a doubled grid gives the rescaled picture.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "core.hpp"

namespace varseq {

enum class Family { delta, sparse_random, dense_random, oscillatory, block };

inline constexpr Family all_families[] = {Family::delta, Family::sparse_random, Family::dense_random,
                                          Family::oscillatory, Family::block};

inline std::string to_string(Family f) {
  switch (f) {
    case Family::delta: return "delta";
    case Family::sparse_random: return "sparse_random";
    case Family::dense_random: return "dense_random";
    case Family::oscillatory: return "oscillatory";
    case Family::block: return "block";
  }
  return "?";
}

inline Family family_from_string(const std::string& s) {
  for (Family f : all_families)
    if (to_string(f) == s) return f;
  throw input_error("unknown ensemble family '" + s + "'");
}

struct Ensemble {
  Family family = Family::dense_random;
  std::size_t size = 1;
  Grid grid;
  std::uint64_t seed = 0;

  Ensemble() = default;
  Ensemble(Family f, std::size_t n, Grid g, std::uint64_t s) : family(f), size(n), grid(g), seed(s) {
    require(size >= 1, "ensemble size must be at least 1");
  }

  /// Same family, size and seed on another grid (paired trials).
  Ensemble on(const Grid& g) const { return Ensemble(family, size, g, seed); }

  Seq member(std::size_t k) const;
};

inline Seq Ensemble::member(std::size_t k) const {
  Rng g = substream(seed, static_cast<std::uint64_t>(family) + 1, k);
  const std::size_t n = grid.size();
  const auto at = [&](double fraction) {
    return std::min(n - 1, static_cast<std::size_t>(fraction * static_cast<double>(n)));
  };
  std::vector<double> v(n, 0.0);

  switch (family) {
    case Family::delta: {
      // Member 0 is the centred unit mass; later members are short trains.
      if (k == 0) {
        v[static_cast<std::size_t>(grid.center() - grid.lo)] = 1.0;
        break;
      }
      const std::size_t spikes = 1 + (k - 1) % 4;
      for (std::size_t s = 0; s < spikes; ++s) v[at(uniform01(g))] = 1.0;
      break;
    }
    case Family::sparse_random: {
      bool any = false;
      for (double& x : v) {
        const double u = uniform01(g);
        const double sign = uniform01(g) < 0.5 ? -1.0 : 1.0;
        if (u < 0.05) {
          x = sign;
          any = true;
        }
      }
      if (!any) v[at(uniform01(g))] = 1.0;
      break;
    }
    case Family::dense_random:
      for (double& x : v) x = uniform(g, -1.0, 1.0);
      break;
    case Family::oscillatory: {
      // (-1)^i (1 + |i - c|)^{-0.6} truncated to a random window around c.
      const std::size_t c = at(uniform01(g));
      const auto half = static_cast<std::size_t>(uniform(g, 0.05, 1.0) * static_cast<double>(n));
      const std::size_t from = c > half ? c - half : 0;
      const std::size_t to = std::min(n - 1, c + half);
      for (std::size_t i = from; i <= to; ++i) {
        const double dist = std::abs(static_cast<double>(i) - static_cast<double>(c));
        const double sign = (grid.lo + static_cast<index_t>(i)) % 2 == 0 ? 1.0 : -1.0;
        v[i] = sign * std::pow(1.0 + dist, -0.6);
      }
      break;
    }
    case Family::block: {
      std::size_t a = at(uniform01(g));
      std::size_t b = at(uniform01(g));
      if (a > b) std::swap(a, b);
      std::fill(v.begin() + static_cast<std::ptrdiff_t>(a), v.begin() + static_cast<std::ptrdiff_t>(b) + 1, 1.0);
      break;
    }
  }
  return Seq(grid.lo, std::move(v));
}

/// Runs f(0..n-1) on up to `jobs` threads. Each index writes only its own
/// slot, so results never depend on scheduling.
template <class F>
void parallel_for(std::size_t n, unsigned jobs, F&& f) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += jobs) f(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace varseq
