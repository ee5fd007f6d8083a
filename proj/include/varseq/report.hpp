#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "core.hpp"

namespace varseq {

using json = nlohmann::json;

/// Outcome of one empirical check: per-trial ratios, their maximum, a verdict
/// and enough inputs to regenerate the run.
struct VerificationReport {
  std::string name;
  json inputs = json::object();
  std::vector<double> ratios;
  double max_ratio = 0.0;
  bool verdict = false;
  double runtime_seconds = 0.0;
  json details = json::object();

  void set_ratios(std::vector<double> r) {
    ratios = std::move(r);
    max_ratio = 0.0;
    for (double x : ratios) max_ratio = std::max(max_ratio, x);
    // NaN never compares greater; surface it.
    for (double x : ratios)
      if (!std::isfinite(x)) max_ratio = x;
  }

  bool all_finite() const {
    return std::all_of(ratios.begin(), ratios.end(), [](double x) { return std::isfinite(x); });
  }

  /// Canonical form: keys sorted, runtime optional so payloads can be compared.
  json to_json(bool with_runtime = true) const {
    json j = {{"name", name},     {"inputs", inputs},   {"ratios", ratios},
              {"max_ratio", max_ratio}, {"verdict", verdict ? "pass" : "fail"},
              {"details", details}};
    if (with_runtime) j["runtime"] = runtime_seconds;
    return j;
  }

  /// One row per trial: trial_index,ratio.
  std::string to_csv() const {
    std::string out = "trial_index,ratio\n";
    char buf[64];
    for (std::size_t t = 0; t < ratios.size(); ++t) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g\n", t, ratios[t]);
      out += buf;
    }
    return out;
  }
};

/// Wall-clock timer for the runtime field.
class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline json grid_json(const Grid& g) { return json::array({g.lo, g.hi}); }

}  // namespace varseq
