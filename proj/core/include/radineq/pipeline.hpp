#pragma once

#include <string>

#include "radineq/config.hpp"
#include "radineq/report.hpp"

// Orchestration of the five command verbs.  Each entry point consumes a
// resolved configuration, runs the corresponding construction/verification
// sequence, and returns the structured report together with its numeric
// sidecar tables.  Configuration problems (missing blocks, inconsistent
// parameters) throw ConfigError; check failures never throw — they are
// recorded and reflected in VerificationReport::all_passed().

namespace radineq {

struct RunOutputs {
  VerificationReport report;
  NamedTables tables;  // (file name, table) pairs, e.g. {"trace.csv", ...}
};

// Full hypothesis-and-estimate verification of a configured supersolution:
// weight integrability, pair compatibility and near-zero behavior, vanishing
// tails, strong/weak differential inequality, shift admissibility, energy
// estimates (global and level-capped), the weighted-norm inequality, and the
// cutoff-substitution identity tying the last two together.
RunOutputs run_verify(const ProblemConfig& cfg);

// Descends the weighted quotient attached to the configured weight family
// and compares the result against the family's claimed constant.
RunOutputs run_minimize(const ProblemConfig& cfg);

// Sweeps the canonical decaying trial family through the quotient.
RunOutputs run_probe(const ProblemConfig& cfg);

// Applies the variable-stretch change of coordinates to the configured
// explicit solution and certifies the mapped profile against the
// constant-coefficient equation it must satisfy.
RunOutputs run_transform(const ProblemConfig& cfg);

// Audits the built-in auxiliary pair catalogue: differential compatibility,
// near-zero behavior, and exactness of the listed constants where the
// defining inequality is an identity.
RunOutputs run_pairs(const ProblemConfig& cfg);

// Dispatch by verb name ("verify", "minimize", "probe", "transform",
// "pairs"); unknown verbs throw ConfigError.
RunOutputs run_verb(const std::string& verb, const ProblemConfig& cfg);

}  // namespace radineq
