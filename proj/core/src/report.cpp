#include "radineq/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace radineq {

namespace {

using ojson = nlohmann::ordered_json;

// JSON has no notion of infinity or NaN; encode them as strings so the
// serialization stays lossless and deterministic.
ojson json_number(double x) {
  if (std::isnan(x)) return ojson("nan");
  if (std::isinf(x)) return ojson(x > 0 ? "inf" : "-inf");
  return ojson(x);
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf);
}

}  // namespace

CheckRecord bound_check(const std::string& name, double lhs, double rhs,
                        double tolerance, const std::string& note) {
  CheckRecord r;
  r.name = name;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.tolerance = tolerance;
  r.status = r.margin >= -tolerance;
  r.note = note;
  return r;
}

CheckRecord flag_check(const std::string& name, bool ok, const std::string& note) {
  CheckRecord r;
  r.name = name;
  r.lhs = ok ? 0.0 : 1.0;
  r.rhs = 0.0;
  r.margin = -r.lhs;
  r.tolerance = 0.0;
  r.status = r.margin >= -r.tolerance;
  r.note = note;
  return r;
}

void VerificationReport::set_env(const std::string& key, const std::string& value) {
  for (auto& kv : environment) {
    if (kv.first == key) {
      kv.second = value;
      return;
    }
  }
  environment.emplace_back(key, value);
}

void VerificationReport::add_metric(const std::string& key, double value) {
  metrics.emplace_back(key, value);
}

void VerificationReport::add(CheckRecord record) {
  checks.push_back(std::move(record));
}

bool VerificationReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.status) return false;
  return true;
}

std::string VerificationReport::to_json() const {
  ojson j;
  j["verb"] = verb;
  j["config_hash"] = config_hash;
  j["overall"] = all_passed() ? "pass" : "fail";

  ojson env = ojson::object();
  for (const auto& kv : environment) env[kv.first] = kv.second;
  j["environment"] = std::move(env);

  ojson met = ojson::object();
  for (const auto& kv : metrics) met[kv.first] = json_number(kv.second);
  j["metrics"] = std::move(met);

  ojson arr = ojson::array();
  for (const auto& c : checks) {
    ojson jc;
    jc["name"] = c.name;
    jc["status"] = c.status ? "pass" : "fail";
    jc["lhs"] = json_number(c.lhs);
    jc["rhs"] = json_number(c.rhs);
    jc["margin"] = json_number(c.margin);
    jc["tolerance"] = json_number(c.tolerance);
    if (!c.note.empty()) jc["note"] = c.note;
    arr.push_back(std::move(jc));
  }
  j["checks"] = std::move(arr);
  return j.dump(2) + "\n";
}

void CsvTable::add_row(std::initializer_list<double> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("csv row width differs from header");
  rows.emplace_back(row);
}

std::string CsvTable::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      throw std::invalid_argument("csv row width differs from header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += fmt17(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace radineq
