#pragma once

// Config-driven verification runs.
//
// Config schema "v1":
//   {"version": "v1", "seed": 42, "verifiers": [ {"id": ..., "verifier": ..., ...}, ... ]}
// Each entry names one verifier plus its parameters. Entries with a
// "families" list expand to one report per family ("<id>.<family>").
// "expect": "fail" marks a negative control.

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "checks.hpp"
#include "io.hpp"

namespace varseq {

struct SuiteOptions {
  std::optional<std::uint64_t> seed_override;
  unsigned jobs = 1;
};

struct SuiteResult {
  std::string id;
  VerificationReport report;
  bool expect_pass = true;
  bool ok() const { return report.verdict == expect_pass; }
};

namespace detail {

struct EntryReader {
  const json& entry;
  std::string origin;

  bool has(const std::string& key) const { return entry.contains(key); }

  template <class T>
  T get(const std::string& key) const {
    return io::field<T>(entry, key, origin);
  }

  template <class T>
  T get_or(const std::string& key, T fallback) const {
    return has(key) ? get<T>(key) : fallback;
  }

  void allow(std::set<std::string> keys) const {
    keys.insert({"id", "verifier", "seed", "expect"});
    for (const auto& [k, _] : entry.items())
      if (!keys.count(k)) throw input_error(origin + "." + k + ": unknown field for verifier '" +
                                            entry.at("verifier").get<std::string>() + "'");
  }

  Grid grid(const std::string& key) const {
    try {
      return io::parse_grid(get<std::string>(key));
    } catch (const input_error& e) {
      throw input_error(origin + "." + key + ": " + e.what());
    }
  }

  ExponentSequence exponent(const std::string& key, const Grid& fallback) const {
    if (!has(key)) throw input_error(origin + ": missing field '" + key + "'");
    return io::exponent_from_config(entry.at(key), fallback, origin + "." + key);
  }

  std::vector<Family> families() const {
    std::vector<Family> out;
    if (!has("families")) return {Family::dense_random};
    for (const auto& name : get<std::vector<std::string>>("families")) {
      try {
        out.push_back(family_from_string(name));
      } catch (const input_error& e) {
        throw input_error(origin + ".families: " + e.what());
      }
    }
    return out;
  }
};

inline const std::set<std::string> ensemble_keys = {"families", "size", "grid"};

inline std::set<std::string> with_ensemble(std::set<std::string> keys) {
  keys.insert(ensemble_keys.begin(), ensemble_keys.end());
  return keys;
}

inline HarnessOptions harness_options(const EntryReader& e, unsigned jobs) {
  HarnessOptions o;
  o.jobs = jobs;
  o.growth_limit = e.get_or("growth_limit", o.growth_limit);
  o.maximal_ensemble = e.get_or<std::size_t>("maximal_ensemble", o.maximal_ensemble);
  o.bypass_hypotheses = e.get_or("bypass_hypotheses", false);
  return o;
}

}  // namespace detail

inline const std::vector<std::string>& known_verifiers() {
  static const std::vector<std::string> names = {
      "norm_oracle", "power_identity", "embedding", "holder",  "duality",  "maximal_agreement",
      "operator_norm", "theorem1",     "theorem2",  "theorem3", "weighted", "weight_constants", "rdf"};
  return names;
}

/// Runs one config entry; may yield several reports (one per family).
inline std::vector<SuiteResult> run_entry(const json& entry, std::size_t index, std::uint64_t default_seed,
                                          const SuiteOptions& opt) {
  const std::string origin = "verifiers[" + std::to_string(index) + "]";
  if (!entry.is_object()) throw input_error(origin + ": entry must be an object");
  detail::EntryReader e{entry, origin};
  const auto name = e.get<std::string>("verifier");
  if (std::find(known_verifiers().begin(), known_verifiers().end(), name) == known_verifiers().end())
    throw input_error(origin + ".verifier: unknown verifier '" + name + "'");
  const auto id = e.get_or<std::string>("id", name);
  const std::uint64_t seed = opt.seed_override.value_or(e.get_or<std::uint64_t>("seed", default_seed));
  bool expect_pass = true;
  if (e.has("expect")) {
    const auto x = e.get<std::string>("expect");
    if (x != "pass" && x != "fail") throw input_error(origin + ".expect: must be \"pass\" or \"fail\"");
    expect_pass = x == "pass";
  }

  std::vector<SuiteResult> out;
  const auto single = [&](VerificationReport rep) { out.push_back({id, std::move(rep), expect_pass}); };

  const auto per_family = [&](auto&& run) {
    const auto fams = e.families();
    const auto size = e.get_or<std::size_t>("size", 50);
    const Grid grid = e.grid("grid");
    for (Family f : fams) {
      VerificationReport rep = run(Ensemble(f, size, grid, seed));
      out.push_back({fams.size() == 1 && !e.has("families") ? id : id + "." + to_string(f), std::move(rep),
                     expect_pass});
    }
  };

  const auto trials = [&](std::size_t fallback) { return e.get_or<std::size_t>("trials", fallback); };

  if (name == "norm_oracle") {
    e.allow({"trials"});
    single(check_norm_oracle(trials(1000), seed));
  } else if (name == "power_identity") {
    e.allow({"trials"});
    single(check_power_identity(trials(500), seed));
  } else if (name == "embedding") {
    e.allow({"trials"});
    single(check_embedding(trials(500), seed));
  } else if (name == "holder") {
    e.allow({"trials"});
    single(check_holder(trials(1000), seed));
  } else if (name == "duality") {
    e.allow({"trials", "dual_trials"});
    single(check_duality(trials(500), seed, e.get_or<std::size_t>("dual_trials", 8)));
  } else if (name == "maximal_agreement") {
    e.allow({"trials"});
    single(check_maximal_agreement(trials(200), seed));
  } else if (name == "operator_norm") {
    e.allow(detail::with_ensemble({"op", "alpha", "p_in", "q_out", "bound"}));
    const Grid grid = e.grid("grid");
    const auto op = operator_from_string(e.get<std::string>("op"));
    const double alpha = e.get_or("alpha", 0.0);
    const auto p_in = e.exponent("p_in", grid);
    const auto q_out = e.has("q_out") ? e.exponent("q_out", grid) : p_in;
    const std::optional<double> bound = e.has("bound") ? std::optional(e.get<double>("bound")) : std::nullopt;
    per_family([&](const Ensemble& ens) {
      auto rep = empirical_operator_norm(op, alpha, p_in, q_out, ens, opt.jobs);
      if (bound) {
        rep.details["bound"] = *bound;
        rep.verdict = rep.verdict && rep.max_ratio <= *bound;
      }
      return rep;
    });
  } else if (name == "theorem1") {
    e.allow(detail::with_ensemble({"p", "r", "growth_limit", "maximal_ensemble", "bypass_hypotheses"}));
    const auto p = e.exponent("p", e.grid("grid"));
    const double r = e.get<double>("r");
    const auto hopt = detail::harness_options(e, opt.jobs);
    per_family([&](const Ensemble& ens) { return verify_theorem1(p, r, ens, hopt); });
  } else if (name == "theorem2") {
    e.allow(detail::with_ensemble({"q", "s", "alpha", "growth_limit", "maximal_ensemble"}));
    const auto q = e.exponent("q", e.grid("grid"));
    const auto hopt = detail::harness_options(e, opt.jobs);
    per_family([&](const Ensemble& ens) {
      return verify_theorem2(q, e.get<double>("s"), e.get<double>("alpha"), ens, hopt);
    });
  } else if (name == "theorem3") {
    e.allow(detail::with_ensemble({"q", "s", "alpha", "theta", "family_count", "growth_limit", "maximal_ensemble"}));
    const auto q = e.exponent("q", e.grid("grid"));
    const auto hopt = detail::harness_options(e, opt.jobs);
    per_family([&](const Ensemble& ens) {
      return verify_theorem3(q, e.get<double>("s"), e.get_or("alpha", 0.0), e.get_or("theta", 2.0),
                             e.get_or<std::size_t>("family_count", 1), ens, hopt);
    });
  } else if (name == "weighted") {
    e.allow(detail::with_ensemble(
        {"kind", "power_delta", "r", "s", "alpha", "theta", "family_count", "growth_limit", "bound"}));
    const auto kind = weighted_from_string(e.get<std::string>("kind"));
    WeightedParams prm;
    prm.r = e.get_or("r", prm.r);
    prm.s = e.get_or("s", prm.s);
    prm.alpha = e.get_or("alpha", prm.alpha);
    prm.theta = e.get_or("theta", prm.theta);
    prm.family_count = e.get_or("family_count", prm.family_count);
    const Weight w = power_weight(e.get<double>("power_delta"), e.grid("grid"));
    const auto hopt = detail::harness_options(e, opt.jobs);
    const std::optional<double> bound = e.has("bound") ? std::optional(e.get<double>("bound")) : std::nullopt;
    per_family([&](const Ensemble& ens) {
      auto rep = verify_weighted_inequality(kind, prm, w, ens, hopt);
      if (bound) {
        rep.details["bound"] = *bound;
        rep.verdict = rep.verdict && rep.max_ratio <= *bound;
      }
      return rep;
    });
  } else if (name == "weight_constants") {
    e.allow({"grid", "deltas", "rs_pairs"});
    std::vector<std::pair<double, double>> pairs;
    for (const auto& rs : e.get<std::vector<std::vector<double>>>("rs_pairs")) {
      if (rs.size() != 2) throw input_error(origin + ".rs_pairs: each pair must be [r, s]");
      pairs.emplace_back(rs[0], rs[1]);
    }
    single(check_weight_constants(e.grid("grid"), e.get<std::vector<double>>("deltas"), pairs));
  } else if (name == "rdf") {
    e.allow({"p", "r", "grid", "trials", "K", "safety", "norm_ensemble"});
    const Grid grid = e.grid("grid");
    const auto p = e.exponent("p", grid);
    const auto p_dual = e.has("r") ? conjugate(scale(p, e.get<double>("r"))) : p;
    single(check_rdf(p_dual, grid, trials(100), e.get_or<std::size_t>("K", default_rdf_order), seed,
                     e.get_or("safety", default_norm_safety), e.get_or<std::size_t>("norm_ensemble", 200), opt.jobs));
  }
  return out;
}

inline std::vector<SuiteResult> run_suite(const json& config, const SuiteOptions& opt = {}) {
  if (!config.is_object()) throw input_error("config: top level must be an object");
  const auto version = io::field<std::string>(config, "version", "config");
  if (version != "v1") throw input_error("config.version: unsupported schema '" + version + "'");
  const std::uint64_t seed = config.contains("seed") ? io::field<std::uint64_t>(config, "seed", "config") : 0;
  std::vector<SuiteResult> results;
  if (!config.contains("verifiers")) return results;
  const json& entries = config.at("verifiers");
  if (!entries.is_array()) throw input_error("config.verifiers: must be an array");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    try {
      for (auto& r : run_entry(entries[i], i, seed, opt)) results.push_back(std::move(r));
    } catch (const precondition_error& e) {
      throw input_error("verifiers[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return results;
}

inline std::vector<SuiteResult> run_suite(const std::string& config_path, const SuiteOptions& opt = {}) {
  return run_suite(io::parse_json(io::read_file(config_path), config_path), opt);
}

inline bool suite_passed(const std::vector<SuiteResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.ok(); });
}

/// Writes <id>.json and <id>.csv per report plus summary.json.
inline void write_reports(const std::filesystem::path& dir, const std::vector<SuiteResult>& results) {
  std::filesystem::create_directories(dir);
  json summary = json::array();
  for (const auto& r : results) {
    io::write_file((dir / (r.id + ".json")).string(), r.report.to_json().dump(2) + "\n");
    io::write_file((dir / (r.id + ".csv")).string(), r.report.to_csv());
    summary.push_back({{"id", r.id},
                       {"verdict", r.report.verdict ? "pass" : "fail"},
                       {"expected", r.expect_pass ? "pass" : "fail"},
                       {"ok", r.ok()},
                       {"max_ratio", r.report.max_ratio}});
  }
  io::write_file((dir / "summary.json").string(),
                 json({{"reports", summary}, {"passed", suite_passed(results)}}).dump(2) + "\n");
}

}  // namespace varseq
