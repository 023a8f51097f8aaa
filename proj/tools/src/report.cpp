#include "ginv_cli/report.hpp"

#include <cstdio>

#include "ginv_cli/matrix_file.hpp"

namespace ginv::cli {

using nlohmann::json;

namespace {

json conditions_to_json(const ConditionReport& c) {
  json entries = json::array();
  for (const auto& e : c.entries) {
    entries.push_back({{"name", e.name},
                       {"residual", e.residual},
                       {"threshold", e.threshold},
                       {"pass", e.pass},
                       {"existence_clause", e.existence_clause}});
  }
  return {{"overall", c.overall}, {"entries", std::move(entries)}};
}

ConditionReport conditions_from_json(const json& j) {
  ConditionReport c;
  for (const auto& e : j.at("entries")) {
    c.entries.push_back({e.at("name").get<std::string>(), e.at("residual").get<double>(),
                         e.at("threshold").get<double>(), e.at("pass").get<bool>(),
                         e.at("existence_clause").get<bool>()});
  }
  c.overall = j.at("overall").get<bool>();
  return c;
}

InverseKind kind_from_string(const std::string& s) {
  for (InverseKind k : {InverseKind::GDrazin, InverseKind::Drazin, InverseKind::Group}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown inverse kind: " + s);
}

json verdict_to_json(const ComparisonVerdict& v) {
  return {{"relative_error", v.relative_error}, {"tolerance", v.tolerance},
          {"pass", v.pass},                     {"oracle_index", v.oracle_index},
          {"kind", std::string(to_string(v.kind))}, {"axioms_pass", v.axioms_pass},
          {"existence_agrees", v.existence_agrees}};
}

ComparisonVerdict verdict_from_json(const json& j) {
  ComparisonVerdict v;
  v.relative_error = j.at("relative_error").get<double>();
  v.tolerance = j.at("tolerance").get<double>();
  v.pass = j.at("pass").get<bool>();
  v.oracle_index = j.at("oracle_index").get<unsigned>();
  v.kind = kind_from_string(j.at("kind").get<std::string>());
  v.axioms_pass = j.at("axioms_pass").get<bool>();
  v.existence_agrees = j.at("existence_agrees").get<bool>();
  return v;
}

json diagnostics_to_json(const Diagnostics& d) {
  json routes = json::array();
  for (const auto& r : d.routes) {
    routes.push_back({{"name", r.name}, {"difference", r.difference}, {"agree", r.agree}});
  }
  return {{"routes", std::move(routes)},
          {"notes", d.notes},
          {"truncation", d.truncation},
          {"returned", d.returned},
          {"discrepancy", d.discrepancy()}};
}

Diagnostics diagnostics_from_json(const json& j) {
  Diagnostics d;
  for (const auto& r : j.at("routes")) {
    d.routes.push_back(
        {r.at("name").get<std::string>(), r.at("difference").get<double>(), r.at("agree").get<bool>()});
  }
  d.notes = j.at("notes").get<std::vector<std::string>>();
  d.truncation = j.at("truncation").get<std::map<std::string, unsigned>>();
  d.returned = j.at("returned").get<std::string>();
  return d;
}

}  // namespace

json report_to_json(const RunReport& r) {
  json j;
  j["command"] = r.command;
  j["inputs_digest"] = r.inputs_digest;
  j["outcome"] = r.outcome;
  j["exit_code"] = r.exit_code;
  if (!r.message.empty()) j["message"] = r.message;
  if (r.conditions) j["conditions"] = conditions_to_json(*r.conditions);
  if (!r.matrices.empty()) {
    json m = json::object();
    for (const auto& [name, value] : r.matrices) m[name] = matrix_to_json(value);
    j["matrices"] = std::move(m);
  }
  if (r.index) j["index"] = *r.index;
  if (r.kind) j["kind"] = *r.kind;
  if (!r.absent.empty()) j["absent"] = r.absent;
  if (r.verdict) j["verdict"] = verdict_to_json(*r.verdict);
  if (r.diagnostics) j["diagnostics"] = diagnostics_to_json(*r.diagnostics);
  if (!r.sweep.empty()) {
    json rows = json::array();
    for (const auto& row : r.sweep) {
      rows.push_back({{"formula", row.formula},
                      {"count", row.count},
                      {"passed", row.passed},
                      {"max_error", row.max_error},
                      {"failed_seeds", row.failed_seeds}});
    }
    j["sweep"] = std::move(rows);
  }
  j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

RunReport report_from_json(const json& j) {
  RunReport r;
  r.command = j.at("command").get<std::vector<std::string>>();
  r.inputs_digest = j.at("inputs_digest").get<std::string>();
  r.outcome = j.at("outcome").get<std::string>();
  r.exit_code = j.at("exit_code").get<int>();
  r.message = j.value("message", std::string());
  if (j.contains("conditions")) r.conditions = conditions_from_json(j.at("conditions"));
  if (j.contains("matrices")) {
    for (const auto& [name, value] : j.at("matrices").items()) {
      r.matrices.emplace(name, matrix_from_json(value));
    }
  }
  if (j.contains("index")) r.index = j.at("index").get<unsigned>();
  if (j.contains("kind")) r.kind = j.at("kind").get<std::string>();
  if (j.contains("absent")) r.absent = j.at("absent").get<std::vector<std::string>>();
  if (j.contains("verdict")) r.verdict = verdict_from_json(j.at("verdict"));
  if (j.contains("diagnostics")) r.diagnostics = diagnostics_from_json(j.at("diagnostics"));
  if (j.contains("sweep")) {
    for (const auto& row : j.at("sweep")) {
      r.sweep.push_back({row.at("formula").get<std::string>(), row.at("count").get<unsigned>(),
                         row.at("passed").get<unsigned>(), row.at("max_error").get<double>(),
                         row.at("failed_seeds").get<std::vector<std::uint64_t>>()});
    }
  }
  r.wall_time_ms = j.at("wall_time_ms").get<double>();
  return r;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ginv::cli
