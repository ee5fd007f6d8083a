#pragma once

// File formats:
//   sequence  JSON {"support_lo": int, "values": [real...]}  or CSV "index,value"
//   exponent  JSON {"window_lo": int, "window_hi": int, "values": [...], "tail": real}
// Doubles are written with 17 significant digits, so files reload bit-exactly.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "exponents.hpp"

namespace varseq::io {

using json = nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write '" + path + "'");
  out << text;
}

inline json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(origin + ": " + e.what());
  }
}

template <class T>
T field(const json& j, const std::string& key, const std::string& origin) {
  if (!j.is_object() || !j.contains(key)) throw input_error(origin + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw input_error(origin + ": field '" + key + "' has the wrong type");
  }
}

inline Grid parse_grid(const std::string& text) {
  const auto colon = text.find(':', text.empty() ? 0 : 1);
  index_t lo = 0;
  index_t hi = 0;
  const char* end = text.data() + text.size();
  if (colon == std::string::npos ||
      std::from_chars(text.data(), text.data() + colon, lo).ptr != text.data() + colon ||
      std::from_chars(text.data() + colon + 1, end, hi).ptr != end || lo > hi)
    throw input_error("grid '" + text + "' is not of the form LO:HI with LO <= HI");
  return Grid(lo, hi);
}

inline std::string format_grid(const Grid& g) { return std::to_string(g.lo) + ":" + std::to_string(g.hi); }

inline json seq_to_json(const Seq& a) {
  return {{"support_lo", a.support_lo()}, {"values", std::vector<double>(a.values().begin(), a.values().end())}};
}

inline Seq seq_from_json(const json& j, const std::string& origin = "sequence") {
  return Seq(field<index_t>(j, "support_lo", origin), field<std::vector<double>>(j, "values", origin));
}

inline Seq seq_from_csv(const std::string& text, const std::string& origin) {
  std::map<index_t, double> entries;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line == "index,value") continue;
    const auto comma = line.find(',');
    index_t i = 0;
    double v = 0.0;
    try {
      if (comma == std::string::npos) throw std::invalid_argument("no comma");
      std::size_t used = 0;
      i = std::stoll(line.substr(0, comma), &used);
      v = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw input_error(origin + ": line " + std::to_string(lineno) + " is not 'index,value'");
    }
    entries[i] = v;
  }
  if (entries.empty()) return Seq();
  const Grid hull(entries.begin()->first, entries.rbegin()->first);
  return Seq::tabulate(hull, [&](index_t i) {
    const auto it = entries.find(i);
    return it == entries.end() ? 0.0 : it->second;
  });
}

inline std::string seq_to_csv(const Seq& a) {
  std::string out = "index,value\n";
  char buf[64];
  for (std::size_t k = 0; k < a.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%lld,%.17g\n", static_cast<long long>(a.support_lo() + static_cast<index_t>(k)),
                  a.values()[k]);
    out += buf;
  }
  return out;
}

inline bool is_csv_path(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}

inline Seq load_seq(const std::string& path) {
  const std::string text = read_file(path);
  if (is_csv_path(path)) return seq_from_csv(text, path);
  return seq_from_json(parse_json(text, path), path);
}

inline void save_seq(const std::string& path, const Seq& a) {
  write_file(path, is_csv_path(path) ? seq_to_csv(a) : seq_to_json(a).dump() + "\n");
}

inline json exponent_to_json(const ExponentSequence& p) {
  return {{"window_lo", p.window_lo()}, {"window_hi", p.window_hi()}, {"values", p.values()}, {"tail", p.tail()}};
}

inline ExponentSequence exponent_from_json(const json& j, const std::string& origin = "exponent") {
  const auto lo = field<index_t>(j, "window_lo", origin);
  const auto hi = field<index_t>(j, "window_hi", origin);
  auto values = field<std::vector<double>>(j, "values", origin);
  if (hi < lo || values.size() != static_cast<std::size_t>(hi - lo + 1))
    throw input_error(origin + ": values length does not match window_lo..window_hi");
  try {
    return ExponentSequence(lo, std::move(values), field<double>(j, "tail", origin));
  } catch (const precondition_error& e) {
    throw input_error(origin + ": " + e.what());
  }
}

/// Closed-form exponent descriptors used by the CLI and by configs:
///   constant:C
///   log_holder:P_INF,C_INF@LO:HI     (grid defaults to `fallback`)
/// Anything else is read as an exponent JSON file.
inline ExponentSequence parse_exponent(const std::string& desc, const Grid& fallback) {
  const auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw input_error("exponent '" + desc + "': '" + s + "' is not a number");
    }
  };
  try {
    if (desc.rfind("constant:", 0) == 0) return ExponentSequence::constant(number(desc.substr(9)));
    if (desc.rfind("log_holder:", 0) == 0) {
      std::string rest = desc.substr(11);
      Grid g = fallback;
      if (const auto at = rest.find('@'); at != std::string::npos) {
        g = parse_grid(rest.substr(at + 1));
        rest = rest.substr(0, at);
      }
      const auto comma = rest.find(',');
      if (comma == std::string::npos) throw input_error("exponent '" + desc + "': expected log_holder:P_INF,C_INF");
      return ExponentSequence::log_holder(number(rest.substr(0, comma)), number(rest.substr(comma + 1)), g);
    }
  } catch (const precondition_error& e) {
    throw input_error("exponent '" + desc + "': " + e.what());
  }
  return exponent_from_json(parse_json(read_file(desc), desc), desc);
}

/// Exponent given inline in a config: {"constant": C}, {"log_holder": [P_INF, C_INF], "grid": "LO:HI"}
/// or the exponent file schema itself.
inline ExponentSequence exponent_from_config(const json& j, const Grid& fallback, const std::string& origin) {
  try {
    if (j.is_object() && j.contains("constant")) return ExponentSequence::constant(field<double>(j, "constant", origin));
    if (j.is_object() && j.contains("log_holder")) {
      const auto pc = field<std::vector<double>>(j, "log_holder", origin);
      if (pc.size() != 2) throw input_error(origin + ": log_holder expects [p_inf, c_inf]");
      const Grid g = j.contains("grid") ? parse_grid(field<std::string>(j, "grid", origin)) : fallback;
      return ExponentSequence::log_holder(pc[0], pc[1], g);
    }
  } catch (const precondition_error& e) {
    throw input_error(origin + ": " + e.what());
  }
  return exponent_from_json(j, origin);
}

/// printf("%#.15g"): 15 significant digits, trailing zeros kept.
inline std::string format15(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.15g", x);
  return buf;
}

}  // namespace varseq::io
