// Command-line front end: verify | minimize | probe | transform | pairs.
// Each command reads one configuration file, writes report.json plus CSV
// sidecars into --out, prints one line per check, and exits with
//   0  every check passed
//   1  at least one check failed
//   2  configuration or execution error
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "radineq/pipeline.hpp"

namespace {

struct Args {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> grid_size;
  std::optional<double> tol;
};

void add_common(CLI::App* sub, Args& args, bool config_required) {
  auto* c = sub->add_option("--config", args.config, "configuration file");
  if (config_required) c->required();
  sub->add_option("--out", args.out,
                  "directory for report.json and CSV sidecars (default: .)");
  sub->add_option("--seed", args.seed, "override run.seed");
  sub->add_option("--grid-size", args.grid_size, "override run.grid_size");
  sub->add_option("--tol", args.tol, "override run.tol");
}

int execute(const std::string& verb, const Args& args) {
  using namespace radineq;
  try {
    ConfigOverrides o;
    o.seed = args.seed;
    o.grid_size = args.grid_size;
    o.tol = args.tol;
    const ProblemConfig cfg = args.config.empty()
                                  ? ProblemConfig::from_text("", o)
                                  : ProblemConfig::from_file(args.config, o);

    const RunOutputs ro = run_verb(verb, cfg);

    std::filesystem::create_directories(args.out);
    write_text_file(args.out + "/report.json", ro.report.to_json());
    for (const auto& [name, table] : ro.tables)
      write_text_file(args.out + "/" + name, table.to_csv());

    for (const auto& c : ro.report.checks)
      std::printf("%-34s %s  margin=%.6g%s%s\n", c.name.c_str(),
                  c.status ? "pass" : "FAIL", c.margin,
                  c.note.empty() ? "" : "  # ", c.note.c_str());
    const bool ok = ro.report.all_passed();
    std::printf("overall: %s (%zu checks, hash %s)\n", ok ? "pass" : "FAIL",
                ro.report.checks.size(), ro.report.config_hash.c_str());
    return ok ? 0 : 1;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted-inequality construction and verification for radial "
               "supersolutions of degenerate p-Laplace inequalities"};
  app.require_subcommand(1);

  Args args;
  add_common(app.add_subcommand(
                 "verify", "check every hypothesis and estimate for a configured "
                           "supersolution"),
             args, true);
  add_common(app.add_subcommand(
                 "minimize", "descend the weighted quotient and compare against "
                             "the claimed constant"),
             args, true);
  add_common(app.add_subcommand(
                 "probe", "sweep the decaying trial family through the quotient"),
             args, true);
  add_common(app.add_subcommand(
                 "transform", "map the explicit solution to constant-coefficient "
                              "coordinates and re-certify it"),
             args, true);
  add_common(app.add_subcommand("pairs", "audit the built-in auxiliary pair "
                                         "catalogue"),
             args, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (const char* verb : {"verify", "minimize", "probe", "transform", "pairs"})
    if (app.got_subcommand(verb)) return execute(verb, args);
  return 2;
}
