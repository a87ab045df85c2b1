#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "flp/instance_gen.hpp"
#include "flp/verification.hpp"

namespace flp::io {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

// Error inside an instance or config file; line and column are 1-based.
class FileError : public InputError {
 public:
  FileError(const std::string& what, std::size_t line, std::size_t column)
      : InputError(what), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

[[noreturn]] inline void fail_at(std::string_view text, std::size_t offset, const std::string& msg) {
  const auto [line, column] = line_column(text, offset);
  throw FileError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg,
                  line, column);
}

inline json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    fail_at(text, offset, "malformed JSON");
  }
}

// Byte offset of the `occurrence`-th quoted `literal` after `from`, or npos.
inline std::size_t find_literal(std::string_view text, const std::string& literal, std::size_t from,
                                std::size_t occurrence) {
  const std::string quoted = json(literal).dump();
  std::size_t pos = from;
  for (std::size_t seen = 0;; ++seen) {
    pos = text.find(quoted, pos);
    if (pos == std::string_view::npos || seen == occurrence) return pos;
    pos += quoted.size();
  }
}

inline void check_version(const json& doc, std::string_view text) {
  if (!doc.contains("version")) return;
  if (!doc["version"].is_number_integer() || doc["version"].get<int>() != kFormatVersion) {
    fail_at(text, text.find("\"version\""),
            "unsupported format version (expected " + std::to_string(kFormatVersion) + ")");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------------------------
// Instance files
// ---------------------------------------------------------------------------------------------

/// Reads {"version": 1, "k": 2, "variant": "sum", "locations": ["0", "1.5", "-3/2"]}.
/// Numbers are parsed exactly; errors carry the line and column of the offending text.
inline Instance parse_instance(std::string_view text) {
  const json doc = detail::parse_document(text);
  if (!doc.is_object()) detail::fail_at(text, 0, "instance file must be a JSON object");
  detail::check_version(doc, text);
  auto field_pos = [&](const char* key) {
    const auto p = text.find("\"" + std::string(key) + "\"");
    return p == std::string_view::npos ? 0 : p;
  };
  if (!doc.contains("k") || !doc["k"].is_number_unsigned()) {
    detail::fail_at(text, field_pos("k"), "field 'k' must be a positive integer");
  }
  if (!doc.contains("variant") || !doc["variant"].is_string()) {
    detail::fail_at(text, field_pos("variant"), "field 'variant' must be \"sum\" or \"max\"");
  }
  if (!doc.contains("locations") || !doc["locations"].is_array()) {
    detail::fail_at(text, field_pos("locations"), "field 'locations' must be an array");
  }
  Variant variant;
  try {
    variant = parse_variant(doc["variant"].get<std::string>());
  } catch (const InputError& e) {
    detail::fail_at(text, field_pos("variant"), e.what());
  }

  const std::size_t array_pos = field_pos("locations");
  std::vector<Coord> locations;
  std::vector<std::string> raw;
  for (const auto& item : doc["locations"]) {
    if (!item.is_string()) {
      detail::fail_at(text, array_pos, "location " + std::to_string(raw.size()) +
                                           " must be a string such as \"1.5\" or \"3/2\"");
    }
    const std::string s = item.get<std::string>();
    try {
      locations.push_back(parse_rational(s));
    } catch (const ParseError& e) {
      const std::size_t occurrence = static_cast<std::size_t>(std::count(raw.begin(), raw.end(), s));
      const std::size_t at = detail::find_literal(text, s, array_pos, occurrence);
      const std::size_t offset = at == std::string_view::npos ? array_pos : at + 1 + e.offset();
      detail::fail_at(text, offset,
                      "location " + std::to_string(raw.size()) + " \"" + s + "\": " + e.what());
    }
    raw.push_back(s);
  }
  return Instance(std::move(locations), doc["k"].get<std::size_t>(), variant);
}

inline json instance_to_json(const Instance& inst) {
  json locs = json::array();
  for (const Coord& c : inst.locations()) locs.push_back(to_string(c));
  return json{{"version", kFormatVersion},
              {"k", inst.k()},
              {"variant", std::string(to_string(inst.variant()))},
              {"locations", std::move(locs)}};
}

inline std::string write_instance(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

// FNV-1a over the canonical instance text.
inline std::string instance_digest(const Instance& inst) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : instance_to_json(inst).dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------------------------
// Result records
// ---------------------------------------------------------------------------------------------

// Rational string plus a display-only float.
inline void put_rational(json& obj, const std::string& key, const Rational& value) {
  obj[key] = to_string(value);
  obj[key + "_float"] = std::stod(to_float_string(value));
}

inline json solution_to_json(const Instance& inst, const Solution& sol) {
  json indices = json::array();
  std::vector<std::size_t> hosts(sol.hosts().begin(), sol.hosts().end());
  std::sort(hosts.begin(), hosts.end(), [&](std::size_t a, std::size_t b) {
    return inst.location(a) < inst.location(b) || (inst.location(a) == inst.location(b) && a < b);
  });
  json coords = json::array();
  for (std::size_t h : hosts) {
    indices.push_back(h);
    coords.push_back(to_string(inst.location(h)));
  }
  return json{{"indices", std::move(indices)}, {"coordinates", std::move(coords)}};
}

inline json lottery_to_json(const Instance& inst, const Lottery& lot) {
  json out = json::array();
  for (const auto& [sol, p] : lot.support()) {
    json entry = solution_to_json(inst, sol);
    entry["probability"] = to_string(p);
    out.push_back(std::move(entry));
  }
  return out;
}

inline json violation_to_json(const SpViolation& v) {
  return json{{"agent", v.agent},
              {"true_location", to_string(v.true_location)},
              {"misreport", to_string(v.misreport)},
              {"honest_cost", to_string(v.honest_cost)},
              {"deviated_cost", to_string(v.deviated_cost)}};
}

inline SpViolation violation_from_json(const json& j) {
  return SpViolation{j.at("agent").get<std::size_t>(),
                     parse_rational(j.at("true_location").get<std::string>()),
                     parse_rational(j.at("misreport").get<std::string>()),
                     parse_rational(j.at("honest_cost").get<std::string>()),
                     parse_rational(j.at("deviated_cost").get<std::string>())};
}

inline json ratio_report_to_json(const RatioReport& r) {
  json out{{"version", kFormatVersion},
           {"mechanism", std::string(cli_name(r.mechanism))},
           {"instance_digest", instance_digest(r.instance)},
           {"instance", instance_to_json(r.instance)},
           {"lottery", lottery_to_json(r.instance, r.lottery)}};
  put_rational(out, "social_cost", r.mech_cost);
  put_rational(out, "optimal_cost", r.opt_cost);
  put_rational(out, "ratio", r.ratio);
  return out;
}

// ---------------------------------------------------------------------------------------------
// Ratio sweep CSV
// ---------------------------------------------------------------------------------------------

struct SweepRow {
  std::size_t seed_index = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  Variant variant = Variant::Sum;
  Coord mech_cost;
  Coord opt_cost;
  Coord ratio;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

inline constexpr std::string_view kSweepHeader =
    "seed_index,n,k,variant,mech_cost,opt_cost,ratio,ratio_float";

/// One row per instance, then a final `max` row carrying the largest ratio.
inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  std::optional<Coord> worst;
  for (const SweepRow& r : rows) {
    out << r.seed_index << ',' << r.n << ',' << r.k << ',' << to_string(r.variant) << ','
        << to_string(r.mech_cost) << ',' << to_string(r.opt_cost) << ',' << to_string(r.ratio)
        << ',' << to_float_string(r.ratio) << '\n';
    if (!worst || r.ratio > *worst) worst = r.ratio;
  }
  if (worst) out << "max,,,,,," << to_string(*worst) << ',' << to_float_string(*worst) << '\n';
}

struct Sweep {
  std::vector<SweepRow> rows;
  std::optional<Coord> max_ratio;
};

inline Sweep read_sweep_csv(std::istream& in) {
  Sweep sweep;
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kSweepHeader) {
    throw FileError("line 1, column 1: missing sweep header", 1, 1);
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.size() != 8) {
      throw FileError("line " + std::to_string(line_no) + ": expected 8 columns", line_no, 1);
    }
    try {
      if (cells[0] == "max") {
        sweep.max_ratio = parse_rational(cells[6]);
        continue;
      }
      SweepRow row;
      row.seed_index = std::stoul(cells[0]);
      row.n = std::stoul(cells[1]);
      row.k = std::stoul(cells[2]);
      row.variant = parse_variant(cells[3]);
      row.mech_cost = parse_rational(cells[4]);
      row.opt_cost = parse_rational(cells[5]);
      row.ratio = parse_rational(cells[6]);
      sweep.rows.push_back(std::move(row));
    } catch (const std::logic_error&) {
      throw FileError("line " + std::to_string(line_no) + ": malformed integer", line_no, 1);
    } catch (const InputError& e) {
      throw FileError("line " + std::to_string(line_no) + ": " + e.what(), line_no, 1);
    }
  }
  return sweep;
}

// ---------------------------------------------------------------------------------------------
// Experiment config (GenSpec)
// ---------------------------------------------------------------------------------------------

inline json genspec_to_json(const GenSpec& g) {
  return json{{"version", kFormatVersion},
              {"family", std::string(to_string(g.family))},
              {"n", g.n},
              {"k", g.k},
              {"variant", std::string(to_string(g.variant))},
              {"seed", g.seed},
              {"params",
               {{"lo", to_string(g.params.lo)},
                {"hi", to_string(g.params.hi)},
                {"denominator", g.params.denominator},
                {"clusters", g.params.clusters},
                {"spread", to_string(g.params.spread)}}}};
}

// Missing fields keep their GenSpec defaults.
inline GenSpec parse_genspec(std::string_view text) {
  const json doc = detail::parse_document(text);
  if (!doc.is_object()) detail::fail_at(text, 0, "config must be a JSON object");
  detail::check_version(doc, text);
  GenSpec g;
  try {
    if (doc.contains("family")) g.family = parse_family(doc["family"].get<std::string>());
    if (doc.contains("n")) g.n = doc["n"].get<std::size_t>();
    if (doc.contains("k")) g.k = doc["k"].get<std::size_t>();
    if (doc.contains("variant")) g.variant = parse_variant(doc["variant"].get<std::string>());
    if (doc.contains("seed")) g.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("params")) {
      const json& p = doc["params"];
      if (p.contains("lo")) g.params.lo = parse_rational(p["lo"].get<std::string>());
      if (p.contains("hi")) g.params.hi = parse_rational(p["hi"].get<std::string>());
      if (p.contains("denominator")) g.params.denominator = p["denominator"].get<std::int64_t>();
      if (p.contains("clusters")) g.params.clusters = p["clusters"].get<std::size_t>();
      if (p.contains("spread")) g.params.spread = parse_rational(p["spread"].get<std::string>());
    }
  } catch (const json::exception& e) {
    detail::fail_at(text, 0, std::string("invalid config field: ") + e.what());
  } catch (const InputError& e) {
    detail::fail_at(text, 0, e.what());
  }
  return g;
}

}  // namespace flp::io
