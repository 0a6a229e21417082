#pragma once

// Structured verification records and their deterministic json/csv forms.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace hermite_riesz {

/// One verification: a claim id, its parameters, the computed value, the
/// asserted bound, and the error allowance. pass <=> computed <= bound + err.
struct Report {
  std::string claim;
  std::vector<std::pair<std::string, std::string>> params;
  double computed = 0.0;
  double bound = 0.0;
  bool pass = false;
  double err = 0.0;

  bool operator==(const Report&) const = default;
};

inline Report make_report(std::string claim,
                          std::vector<std::pair<std::string, std::string>> params,
                          double computed, double bound, double err) {
  Report r;
  r.claim = std::move(claim);
  r.params = std::move(params);
  r.computed = computed;
  r.bound = bound;
  r.err = err;
  r.pass = computed <= bound + err;
  return r;
}

/// Fixed-format numeric text for params (labels, not payloads).
inline std::string fmt_param(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string fmt_param(int v) { return std::to_string(v); }

/// Full-precision numeric text (round-trips through strtod).
inline std::string fmt_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

enum class ReportFormat { json, csv };

inline nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["claim"] = r.claim;
  nlohmann::ordered_json p;
  for (const auto& [k, v] : r.params) p[k] = v;
  j["params"] = p;
  j["computed"] = r.computed;
  j["bound"] = r.bound;
  j["pass"] = r.pass;
  j["err"] = r.err;
  return j;
}

inline Report report_from_json(const nlohmann::ordered_json& j) {
  Report r;
  r.claim = j.at("claim").get<std::string>();
  for (const auto& [k, v] : j.at("params").items())
    r.params.emplace_back(k, v.get<std::string>());
  r.computed = j.at("computed").get<double>();
  r.bound = j.at("bound").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.err = j.at("err").get<double>();
  return r;
}

inline std::string reports_to_json(const std::vector<Report>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr.dump(2) + "\n";
}

inline std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';  // RFC 4180: double embedded quotes
    out += c;
  }
  out += '"';
  return out;
}

inline std::string reports_to_csv(const std::vector<Report>& reports) {
  std::string out = "claim,params,computed,bound,pass,err\n";
  for (const auto& r : reports) {
    std::string ps;
    for (const auto& [k, v] : r.params) {
      if (!ps.empty()) ps += ';';
      ps += k + "=" + v;
    }
    out += r.claim + "," + csv_quote(ps) + "," + fmt_full(r.computed) + "," +
           fmt_full(r.bound) + "," + (r.pass ? "true" : "false") + "," +
           fmt_full(r.err) + "\n";
  }
  return out;
}

inline std::string serialize_reports(const std::vector<Report>& reports, ReportFormat f) {
  return f == ReportFormat::json ? reports_to_json(reports) : reports_to_csv(reports);
}

inline void write_report(const std::vector<Report>& reports, ReportFormat f,
                         const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_report: cannot open " + path);
  os << serialize_reports(reports, f);
  if (!os) throw std::runtime_error("write_report: write failed for " + path);
}

/// Canonical report order: by claim id, then by flattened parameter text.
inline void sort_reports(std::vector<Report>& reports) {
  auto key = [](const Report& r) {
    std::string ps;
    for (const auto& [k, v] : r.params) ps += k + "=" + v + ";";
    return std::pair<std::string, std::string>(r.claim, ps);
  };
  std::stable_sort(reports.begin(), reports.end(),
                   [&](const Report& a, const Report& b) { return key(a) < key(b); });
}

inline bool all_pass(const std::vector<Report>& reports) {
  for (const auto& r : reports)
    if (!r.pass) return false;
  return true;
}

}  // namespace hermite_riesz
