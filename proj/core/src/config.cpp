#include "radineq/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "radineq/compat.hpp"
#include "radineq/grid.hpp"

namespace radineq {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
      return false;
  }
  return !std::isdigit(static_cast<unsigned char>(s[0]));
}

double to_double(const std::string& v, const std::string& field) {
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size())
      throw ConfigError(field, "expected a number, got '" + v + "'");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError(field, "expected a number, got '" + v + "'");
  }
}

int to_int(const std::string& v, const std::string& field) {
  double x = to_double(v, field);
  int i = static_cast<int>(x);
  if (static_cast<double>(i) != x)
    throw ConfigError(field, "expected an integer, got '" + v + "'");
  return i;
}

std::uint64_t to_u64(const std::string& v, const std::string& field) {
  try {
    std::size_t used = 0;
    if (!v.empty() && v[0] == '-')
      throw ConfigError(field, "expected a nonnegative integer, got '" + v + "'");
    std::uint64_t x = std::stoull(v, &used);
    if (used != v.size())
      throw ConfigError(field, "expected a nonnegative integer, got '" + v + "'");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError(field, "expected a nonnegative integer, got '" + v + "'");
  }
}

// Reads a known block: every access is recorded so unknown keys can be
// reported with their field path.
struct BlockReader {
  const ConfigBlock* block;  // may be null (absent block)
  std::string name;
  std::vector<std::string> consumed;

  bool present() const { return block != nullptr; }

  const std::string* get(const std::string& key) {
    consumed.push_back(key);
    return block ? block->find(key) : nullptr;
  }

  void finish() const {
    if (!block) return;
    for (const auto& e : block->entries) {
      bool known = false;
      for (const auto& k : consumed)
        if (k == e.key) { known = true; break; }
      if (!known)
        throw ConfigError(name + "." + e.key, "unknown key");
    }
  }
};

WeightFunction parse_weight(const std::string& text, const std::string& field) {
  FamilySpec f = FamilySpec::parse(text, field);
  if (f.name == "constant") {
    f.expect_args(1, field);
    return WeightFunction::constant_w(f.number(0, field));
  }
  if (f.name == "power") {
    f.expect_args(1, field);
    return WeightFunction::power_w(f.number(0, field));
  }
  if (f.name == "talenti") {
    f.expect_args(2, field);
    return WeightFunction::talenti_family_w(f.number(0, field), f.number(1, field));
  }
  if (f.name == "hp-v1") {
    f.expect_args(3, field);
    return WeightFunction::hp_v1_w(f.number(0, field), f.number(1, field),
                                   f.number(2, field));
  }
  throw ConfigError(field, "unknown weight family '" + f.name +
                               "' (expected constant, power, talenti, hp-v1)");
}

ScalarFunction parse_scalar(const std::string& text, const std::string& field) {
  FamilySpec f = FamilySpec::parse(text, field);
  if (f.name == "power") {
    f.expect_args(1, field);
    return sf_power(f.number(0, field));
  }
  if (f.name == "identity") {
    f.expect_args(0, field);
    return sf_identity();
  }
  if (f.name == "constant") {
    f.expect_args(1, field);
    return sf_constant(f.number(0, field));
  }
  if (f.name == "exp-neg") {
    f.expect_args(0, field);
    return sf_exp_neg();
  }
  if (f.name == "exp-neg-over-t") {
    f.expect_args(0, field);
    return sf_exp_neg_over_t();
  }
  if (f.name == "shifted-saturating") {
    f.expect_args(1, field);
    return sf_shifted_saturating(f.number(0, field));
  }
  throw ConfigError(field,
                    "unknown scalar family '" + f.name +
                        "' (expected power, identity, constant, exp-neg, "
                        "exp-neg-over-t, shifted-saturating)");
}

PsiGPair parse_pair(const std::string& text, const std::string& field) {
  FamilySpec f = FamilySpec::parse(text, field);
  if (f.name == "power") {
    f.expect_args(1, field);
    return pair_power(f.number(0, field));
  }
  if (f.name == "log-damped") {
    f.expect_args(1, field);
    return pair_log_damped(f.number(0, field));
  }
  if (f.name == "exp-saturating") {
    f.expect_args(1, field);
    return pair_exp_saturating(f.number(0, field));
  }
  if (f.name == "exp-over-t") {
    f.expect_args(0, field);
    return pair_exp_over_t();
  }
  throw ConfigError(field, "unknown pair family '" + f.name +
                               "' (expected power, log-damped, exp-saturating, "
                               "exp-over-t)");
}

}  // namespace

const std::string* ConfigBlock::find(const std::string& key) const {
  for (const auto& e : entries)
    if (e.key == key) return &e.value;
  return nullptr;
}

ConfigDoc ConfigDoc::parse_text(const std::string& text) {
  ConfigDoc doc;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  ConfigBlock* open = nullptr;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    if (!open) {
      if (line.back() != '{')
        throw ConfigError("", where + ": expected 'name {' to open a block, got '" +
                                  line + "'");
      std::string name = trim(line.substr(0, line.size() - 1));
      if (!valid_name(name))
        throw ConfigError("", where + ": invalid block name '" + name + "'");
      if (doc.find(name))
        throw ConfigError(name, where + ": duplicate block");
      doc.blocks.push_back(ConfigBlock{name, {}});
      open = &doc.blocks.back();
      continue;
    }
    if (line == "}") {
      open = nullptr;
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(open->name,
                        where + ": expected 'key = value' or '}', got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!valid_name(key))
      throw ConfigError(open->name, where + ": invalid key '" + key + "'");
    if (value.empty())
      throw ConfigError(open->name + "." + key, where + ": empty value");
    if (open->find(key))
      throw ConfigError(open->name + "." + key, where + ": duplicate key");
    open->entries.push_back(ConfigEntry{key, value});
  }
  if (open)
    throw ConfigError(open->name, "unterminated block (missing '}')");
  return doc;
}

ConfigDoc ConfigDoc::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError("", "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

const ConfigBlock* ConfigDoc::find(const std::string& name) const {
  for (const auto& b : blocks)
    if (b.name == name) return &b;
  return nullptr;
}

void ConfigDoc::set(const std::string& block, const std::string& key,
                    const std::string& value) {
  for (auto& b : blocks) {
    if (b.name != block) continue;
    for (auto& e : b.entries) {
      if (e.key == key) {
        e.value = value;
        return;
      }
    }
    b.entries.push_back(ConfigEntry{key, value});
    return;
  }
  blocks.push_back(ConfigBlock{block, {ConfigEntry{key, value}}});
}

std::string ConfigDoc::canonical() const {
  std::string out;
  for (const auto& b : blocks) {
    out += b.name;
    out += " {\n";
    for (const auto& e : b.entries) {
      out += "  ";
      out += e.key;
      out += " = ";
      out += e.value;
      out += "\n";
    }
    out += "}\n";
  }
  return out;
}

FamilySpec FamilySpec::parse(const std::string& text, const std::string& field) {
  std::string s = trim(text);
  FamilySpec spec;
  auto open = s.find('(');
  if (open == std::string::npos) {
    spec.name = s;
    if (!valid_name(spec.name))
      throw ConfigError(field, "invalid family '" + text + "'");
    return spec;
  }
  spec.name = trim(s.substr(0, open));
  if (!valid_name(spec.name))
    throw ConfigError(field, "invalid family '" + text + "'");
  if (s.back() != ')')
    throw ConfigError(field, "missing ')' in '" + text + "'");
  std::string inner = s.substr(open + 1, s.size() - open - 2);
  if (!trim(inner).empty()) {
    std::size_t start = 0;
    while (true) {
      auto comma = inner.find(',', start);
      std::string piece = comma == std::string::npos
                              ? inner.substr(start)
                              : inner.substr(start, comma - start);
      piece = trim(piece);
      if (piece.empty())
        throw ConfigError(field, "empty argument in '" + text + "'");
      spec.args.push_back(piece);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return spec;
}

double FamilySpec::number(std::size_t i, const std::string& field) const {
  return to_double(raw(i, field), field);
}

const std::string& FamilySpec::raw(std::size_t i, const std::string& field) const {
  if (i >= args.size())
    throw ConfigError(field, name + ": missing argument " + std::to_string(i + 1));
  return args[i];
}

void FamilySpec::expect_args(std::size_t count, const std::string& field) const {
  if (args.size() != count)
    throw ConfigError(field, name + ": expected " + std::to_string(count) +
                                 " argument(s), got " + std::to_string(args.size()));
}

std::string fnv1a64_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

ProblemConfig ProblemConfig::from_doc(ConfigDoc doc, const ConfigOverrides& o) {
  if (o.seed) doc.set("run", "seed", std::to_string(*o.seed));
  if (o.grid_size) doc.set("run", "grid_size", std::to_string(*o.grid_size));
  if (o.tol) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", *o.tol);
    doc.set("run", "tol", buf);
  }

  static const char* known[] = {"domain", "weights", "nonlinearity", "pair",
                                "solution", "run", "quotient", "probe",
                                "transform"};
  for (const auto& b : doc.blocks) {
    bool ok = false;
    for (const char* k : known)
      if (b.name == k) { ok = true; break; }
    if (!ok) throw ConfigError(b.name, "unknown block");
  }

  ProblemConfig cfg;
  cfg.canonical_text = doc.canonical();
  cfg.config_hash = fnv1a64_hex(cfg.canonical_text);

  {
    BlockReader r{doc.find("domain"), "domain", {}};
    cfg.has_domain = r.present();
    if (const auto* v = r.get("kind")) {
      try {
        cfg.domain.kind = domain_kind_from_string(*v);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("domain.kind", e.what());
      }
    }
    if (const auto* v = r.get("n")) cfg.domain.n = to_int(*v, "domain.n");
    if (const auto* v = r.get("r_min"))
      cfg.domain.r_min = to_double(*v, "domain.r_min");
    if (const auto* v = r.get("r_max"))
      cfg.domain.r_max = to_double(*v, "domain.r_max");
    r.finish();
    if (cfg.has_domain) {
      try {
        cfg.domain.validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError("domain", e.what());
      }
    }
  }

  {
    BlockReader r{doc.find("weights"), "weights", {}};
    cfg.has_weights = r.present();
    if (r.present()) {
      const auto* va = r.get("a");
      const auto* vb = r.get("b");
      if (!va) throw ConfigError("weights.a", "missing");
      if (!vb) throw ConfigError("weights.b", "missing");
      cfg.a = parse_weight(*va, "weights.a");
      cfg.b = parse_weight(*vb, "weights.b");
    }
    r.finish();
  }

  {
    BlockReader r{doc.find("nonlinearity"), "nonlinearity", {}};
    cfg.has_phi = r.present();
    if (r.present()) {
      const auto* v = r.get("phi");
      if (!v) throw ConfigError("nonlinearity.phi", "missing");
      cfg.phi = parse_scalar(*v, "nonlinearity.phi");
    }
    r.finish();
  }

  {
    BlockReader r{doc.find("pair"), "pair", {}};
    cfg.has_pair = r.present();
    if (r.present()) {
      const auto* v = r.get("family");
      if (!v) throw ConfigError("pair.family", "missing");
      cfg.pair = parse_pair(*v, "pair.family");
    }
    r.finish();
  }

  {
    BlockReader r{doc.find("solution"), "solution", {}};
    cfg.has_solution = r.present();
    const std::string* p_key = nullptr;
    if (r.present()) {
      const auto* v = r.get("family");
      p_key = r.get("p");
      if (!v) throw ConfigError("solution.family", "missing");
      FamilySpec f = FamilySpec::parse(*v, "solution.family");
      if (f.name == "talenti") {
        f.expect_args(4, "solution.family");
        cfg.solution_kind = SolutionKind::talenti;
        cfg.sol_n = to_int(f.raw(0, "solution.family"), "solution.family");
        cfg.sol_p = f.number(1, "solution.family");
        cfg.sol_beta = f.number(2, "solution.family");
        cfg.sol_gamma = f.number(3, "solution.family");
        cfg.p = cfg.sol_p;
        if (p_key)
          throw ConfigError("solution.p",
                            "p is fixed by the family arguments; remove this key");
      } else if (f.name == "eigen-sin") {
        f.expect_args(0, "solution.family");
        cfg.solution_kind = SolutionKind::eigen_sin;
        cfg.p = p_key ? to_double(*p_key, "solution.p") : 2.0;
      } else if (f.name == "csv") {
        f.expect_args(1, "solution.family");
        cfg.solution_kind = SolutionKind::csv;
        cfg.solution_csv = f.raw(0, "solution.family");
        cfg.p = p_key ? to_double(*p_key, "solution.p") : 2.0;
      } else {
        throw ConfigError("solution.family",
                          "unknown solution family '" + f.name +
                              "' (expected talenti, eigen-sin, csv)");
      }
      if (cfg.p <= 1.0) throw ConfigError("solution.p", "p must be > 1");
    }
    r.finish();
  }

  {
    BlockReader r{doc.find("run"), "run", {}};
    if (const auto* v = r.get("grid_size")) {
      cfg.grid_size = to_int(*v, "run.grid_size");
      if (cfg.grid_size < 3)
        throw ConfigError("run.grid_size", "must be at least 3");
    }
    if (const auto* v = r.get("tol")) {
      cfg.tol = to_double(*v, "run.tol");
      if (!(cfg.tol > 0.0)) throw ConfigError("run.tol", "must be positive");
    }
    if (const auto* v = r.get("seed")) cfg.seed = to_u64(*v, "run.seed");
    if (const auto* v = r.get("sigma")) {
      if (*v == "auto") {
        cfg.sigma_is_auto = true;
      } else {
        cfg.sigma = to_double(*v, "run.sigma");
      }
    }
    if (const auto* v = r.get("grading")) {
      try {
        cfg.grading = grading_from_string(*v);
        cfg.grading_set = true;
      } catch (const std::invalid_argument& e) {
        throw ConfigError("run.grading", e.what());
      }
    }
    r.finish();
  }

  {
    BlockReader r{doc.find("quotient"), "quotient", {}};
    cfg.has_quotient = r.present();
    if (const auto* v = r.get("weights")) {
      FamilySpec f = FamilySpec::parse(*v, "quotient.weights");
      if (f.name == "hp") {
        f.expect_args(2, "quotient.weights");
        cfg.quotient_weights = QuotientWeights::hp;
        cfg.q_gamma = f.number(0, "quotient.weights");
        cfg.q_r_param = f.number(1, "quotient.weights");
      } else if (f.name == "inverse-power") {
        f.expect_args(1, "quotient.weights");
        cfg.quotient_weights = QuotientWeights::inverse_power;
        cfg.q_alpha = f.number(0, "quotient.weights");
      } else if (f.name == "unit") {
        f.expect_args(0, "quotient.weights");
        cfg.quotient_weights = QuotientWeights::unit;
      } else if (f.name == "from-solution") {
        f.expect_args(0, "quotient.weights");
        cfg.quotient_weights = QuotientWeights::from_solution;
      } else {
        throw ConfigError("quotient.weights",
                          "unknown weights family '" + f.name +
                              "' (expected hp, inverse-power, unit, from-solution)");
      }
    }
    if (const auto* v = r.get("p")) {
      double qp = to_double(*v, "quotient.p");
      if (qp <= 1.0) throw ConfigError("quotient.p", "p must be > 1");
      cfg.q_p = qp;
    }
    if (const auto* v = r.get("boundary")) {
      try {
        cfg.minimize.boundary = boundary_from_string(*v);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("quotient.boundary", e.what());
      }
    }
    if (const auto* v = r.get("max_iterations")) {
      cfg.minimize.max_iterations = to_int(*v, "quotient.max_iterations");
    }
    if (const auto* v = r.get("claim_band")) {
      cfg.claim_band = to_double(*v, "quotient.claim_band");
      if (!(cfg.claim_band > 0.0))
        throw ConfigError("quotient.claim_band", "must be positive");
    }
    r.finish();
    if (cfg.has_quotient) {
      try {
        cfg.minimize.validate();
      } catch (const std::invalid_argument& e) {
        throw ConfigError("quotient", e.what());
      }
    }
  }

  {
    BlockReader r{doc.find("probe"), "probe", {}};
    cfg.has_probe = r.present();
    if (const auto* v = r.get("s_min")) cfg.s_min = to_double(*v, "probe.s_min");
    if (const auto* v = r.get("s_max")) cfg.s_max = to_double(*v, "probe.s_max");
    if (const auto* v = r.get("s_step")) {
      cfg.s_step = to_double(*v, "probe.s_step");
      if (!(cfg.s_step > 0.0)) throw ConfigError("probe.s_step", "must be positive");
    }
    if (const auto* v = r.get("cut_start"))
      cfg.cut_start = to_double(*v, "probe.cut_start");
    if (const auto* v = r.get("cut_end"))
      cfg.cut_end = to_double(*v, "probe.cut_end");
    r.finish();
    if (cfg.has_probe) {
      if (cfg.s_max < cfg.s_min)
        throw ConfigError("probe.s_max", "must be >= probe.s_min");
      if ((cfg.cut_start == 0.0) != (cfg.cut_end == 0.0))
        throw ConfigError("probe.cut_start",
                          "cut_start and cut_end must be set together");
      if (cfg.cut_end != 0.0 && cfg.cut_end <= cfg.cut_start)
        throw ConfigError("probe.cut_end", "must be > probe.cut_start");
    }
  }

  {
    BlockReader r{doc.find("transform"), "transform", {}};
    cfg.has_transform = r.present();
    if (const auto* v = r.get("beta"))
      cfg.transform_beta = to_double(*v, "transform.beta");
    r.finish();
  }

  return cfg;
}

ProblemConfig ProblemConfig::from_text(const std::string& text,
                                       const ConfigOverrides& o) {
  return from_doc(ConfigDoc::parse_text(text), o);
}

ProblemConfig ProblemConfig::from_file(const std::string& path,
                                       const ConfigOverrides& o) {
  return from_doc(ConfigDoc::parse_file(path), o);
}

}  // namespace radineq
