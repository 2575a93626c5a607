#pragma once

#include <string>
#include <utility>
#include <vector>

// Structured run reports: an ordered list of named checks with numeric
// margins, plus scalar metrics and environment notes.  Serialization is
// deterministic — two runs over the same inputs produce byte-identical
// JSON and CSV — so reports can be diffed and archived.

namespace radineq {

// One verified statement.  The invariant connecting the fields:
//   margin = rhs - lhs   and   status = (margin >= -tolerance).
// Bound checks (lhs <= rhs up to tolerance) use the fields directly;
// boolean checks are encoded with lhs = 0 (pass) or 1 (fail), rhs = 0,
// tolerance = 0.
struct CheckRecord {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  bool status = false;
  std::string note;
};

CheckRecord bound_check(const std::string& name, double lhs, double rhs,
                        double tolerance, const std::string& note = "");
CheckRecord flag_check(const std::string& name, bool ok,
                       const std::string& note = "");

struct VerificationReport {
  std::string verb;
  std::string config_hash;
  // Insertion-ordered key/value context (grid size, domain, ...).
  std::vector<std::pair<std::string, std::string>> environment;
  // Insertion-ordered named scalars (constants, iteration counts, ...).
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<CheckRecord> checks;

  void set_env(const std::string& key, const std::string& value);
  void add_metric(const std::string& key, double value);
  void add(CheckRecord record);
  bool all_passed() const;

  // Deterministic JSON: fixed key order, no timestamps, no file paths.
  // Non-finite numbers are serialized as the strings "inf"/"-inf"/"nan".
  std::string to_json() const;
};

// Column-oriented numeric table serialized as CSV with a header row; every
// number is printed with "%.17g" so values round-trip exactly.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::initializer_list<double> row);
  std::string to_csv() const;
};

// Named sidecar tables produced by one pipeline run.
using NamedTables = std::vector<std::pair<std::string, CsvTable>>;

void write_text_file(const std::string& path, const std::string& content);

}  // namespace radineq
