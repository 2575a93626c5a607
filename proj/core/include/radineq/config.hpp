#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "radineq/rayleigh.hpp"
#include "radineq/types.hpp"

// Problem configuration: a single structured text file of `key = value`
// entries grouped into one level of named blocks,
//
//   domain {
//     kind = full-space-truncated     # ball | annulus | full-space-truncated | interval-1d
//     n = 3
//     r_min = 1e-6
//     r_max = 1e3
//   }
//   weights { a = constant(1)  ...one entry per line... }
//
// `#` starts a comment; blank lines are ignored.  Parse and validation
// failures throw ConfigError carrying the dotted field path (e.g.
// "weights.a").  The exact block/key names are part of the external
// contract and documented in the repository README.

namespace radineq {

struct ConfigError : std::runtime_error {
  std::string field_path;  // "block.key", "block", or "" for file-level errors
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        field_path(std::move(path)) {}
};

struct ConfigEntry {
  std::string key;
  std::string value;
};

struct ConfigBlock {
  std::string name;
  std::vector<ConfigEntry> entries;

  const std::string* find(const std::string& key) const;
};

// Raw parse tree, preserving block and entry order.
struct ConfigDoc {
  std::vector<ConfigBlock> blocks;

  static ConfigDoc parse_text(const std::string& text);
  static ConfigDoc parse_file(const std::string& path);

  const ConfigBlock* find(const std::string& name) const;
  // Replaces or inserts a single entry (used for command-line overrides).
  void set(const std::string& block, const std::string& key,
           const std::string& value);
  // Normalized round-trippable serialization; the provenance hash is taken
  // over this form so equivalent configurations hash identically.
  std::string canonical() const;
};

// `name` or `name(arg1, arg2, ...)` with numeric or string arguments.
struct FamilySpec {
  std::string name;
  std::vector<std::string> args;

  static FamilySpec parse(const std::string& text, const std::string& field);
  double number(std::size_t i, const std::string& field) const;
  const std::string& raw(std::size_t i, const std::string& field) const;
  void expect_args(std::size_t count, const std::string& field) const;
};

// FNV-1a 64-bit over a string, rendered as 16 hex digits.
std::string fnv1a64_hex(const std::string& text);

enum class SolutionKind { talenti, eigen_sin, csv };
enum class QuotientWeights { hp, inverse_power, unit, from_solution };

// Command-line overrides applied on top of the file before validation.
struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> grid_size;
  std::optional<double> tol;
};

// Fully resolved problem configuration.  Parsing is lenient about which
// blocks are present; each pipeline entry point demands the blocks it needs
// and reports missing ones by field path.
struct ProblemConfig {
  // domain
  bool has_domain = false;
  RadialDomain domain;

  // weights
  bool has_weights = false;
  WeightFunction a;
  WeightFunction b;

  // nonlinearity
  bool has_phi = false;
  ScalarFunction phi;

  // pair
  bool has_pair = false;
  PsiGPair pair;

  // solution
  bool has_solution = false;
  SolutionKind solution_kind = SolutionKind::talenti;
  int sol_n = 3;
  double sol_p = 2.0;
  double sol_beta = 0.0;
  double sol_gamma = 3.0;
  std::string solution_csv;
  double p = 2.0;  // problem exponent (from the solution spec unless overridden)

  // run
  int grid_size = 4001;
  double tol = 1e-6;
  std::uint64_t seed = 1u;
  bool sigma_is_auto = false;  // run.sigma = sigma0
  double sigma = 0.0;
  GridGrading grading = GridGrading::log_spaced;
  bool grading_set = false;  // false: choose from the domain

  // quotient (minimize / probe verbs)
  bool has_quotient = false;
  QuotientWeights quotient_weights = QuotientWeights::unit;
  double q_gamma = 0.0;
  double q_r_param = 1.0;
  double q_alpha = 0.0;
  std::optional<double> q_p;  // exponent override for quotient-only runs
  double claim_band = 0.10;  // acceptable relative gap above the claimed constant
  MinimizerOptions minimize;

  // probe
  bool has_probe = false;
  double s_min = 1.0;
  double s_max = 6.0;
  double s_step = 0.1;
  double cut_start = 0.0;  // 0: derive from the domain
  double cut_end = 0.0;

  // transform
  bool has_transform = false;
  std::optional<double> transform_beta;  // defaults to the solution's beta

  // provenance
  std::string canonical_text;
  std::string config_hash;

  static ProblemConfig from_doc(ConfigDoc doc, const ConfigOverrides& o = {});
  static ProblemConfig from_text(const std::string& text,
                                 const ConfigOverrides& o = {});
  static ProblemConfig from_file(const std::string& path,
                                 const ConfigOverrides& o = {});
};

}  // namespace radineq
