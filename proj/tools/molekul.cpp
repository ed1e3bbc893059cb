// molekul: command-line front end for the molekul library.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "molekul/molekul.hpp"

namespace {

using json = nlohmann::json;
using namespace molekul;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitLimit = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json rationals(const std::vector<Rational>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(v.to_string());
  return out;
}

json big_ints(const std::vector<BigInt>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(v.str());
  return out;
}

json factorization_json(const Factorization& z) { return z.coefficients; }

json primary_factorization_json(const PrimaryMonoidSpec& spec, const PrimaryFactorization& z) {
  json out = json::object();
  for (const auto& [p, c] : z) {
    if (c != 0) out[spec.atom_at(p)->to_string()] = c.str();
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Limits limits_from_env() {
  Limits limits;
  if (const char* env = std::getenv("MOLEKUL_LIMIT")) {
    try {
      std::size_t used = 0;
      unsigned long long v = std::stoull(env, &used);
      if (used != std::string(env).size() || v == 0) throw std::invalid_argument(env);
      limits.max_factorizations = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw UsageError(std::string("MOLEKUL_LIMIT must be a positive integer, got '") + env + "'");
    }
  }
  return limits;
}

// Writes JSON or a plain rendering of it: arrays one entry per line, strings
// without quotes.
void emit(const json& value, const std::string& format) {
  if (format == "text") {
    auto plain = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (value.is_array()) {
      for (const auto& v : value) std::cout << plain(v) << "\n";
    } else if (value.is_object()) {
      for (const auto& [k, v] : value.items()) std::cout << k << ": " << plain(v) << "\n";
    } else {
      std::cout << plain(value) << "\n";
    }
    return;
  }
  std::cout << value.dump(2) << "\n";
}

struct Options {
  std::string action;
  std::string target;
  std::string format = "json";
  std::string x;
  std::string atom;
  std::string other;
  std::string spec_path;
  std::string mode = "enumerate";
  std::string primes = "all";
  std::string out_path;
  std::int64_t m = 0;
  std::int64_t limit = 50;
  std::int64_t n = 0;
  std::size_t k = 1;
  std::size_t depth = 10;
  StripColors colors;
};

void require(bool present, const std::string& flag, const std::string& action) {
  if (!present) throw UsageError("action '" + action + "' needs " + flag);
}

void check_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (o.format == f) return;
  }
  throw UsageError("format '" + o.format + "' is not available for '" + o.action + "'");
}

std::int64_t parse_int(const std::string& text) {
  auto v = parse_bigint(text);
  return to_i64(v);
}

int run_ns(const Options& o, const Limits& limits) {
  if (o.action == "strip") {
    check_format(o, {"svg", "json"});
    std::vector<StripRow> rows;
    std::stringstream list(o.target);
    std::string item;
    while (std::getline(list, item, ';')) {
      if (item.empty()) continue;
      rows.push_back(classify_strip(NumericalSemigroup::from_generators(parse_generators(item)), o.limit));
    }
    if (o.format == "svg") {
      if (o.out_path.empty()) {
        std::cout << strip_svg(rows, o.colors);
      } else {
        write_strip_svg(rows, o.out_path, o.colors);
      }
      return kExitOk;
    }
    json out = json::array();
    for (const auto& r : rows) {
      json classes = json::array();
      for (auto c : r.points) classes.push_back(std::string(to_string(c)));
      out.push_back({{"label", r.label}, {"points", classes}});
    }
    emit(out, "json");
    return kExitOk;
  }

  auto n = NumericalSemigroup::from_generators(parse_generators(o.target));
  if (o.action == "graph") {
    check_format(o, {"dot", "json"});
    require(!o.x.empty(), "--x", o.action);
    auto g = factorization_graph(n, parse_int(o.x), limits);
    if (o.format == "dot") {
      std::cout << g.to_dot();
      return kExitOk;
    }
    json vertices = json::array();
    for (const auto& z : g.vertices) vertices.push_back(factorization_json(z));
    emit({{"element", g.element},
          {"vertices", vertices},
          {"edges", g.edges},
          {"components", g.component_count()}},
         "json");
    return kExitOk;
  }
  check_format(o, {"json", "text"});
  json out;
  if (o.action == "atoms") {
    out = n.atoms();
  } else if (o.action == "frobenius") {
    out = n.frobenius();
  } else if (o.action == "gaps") {
    out = gap_data(n, limits).gaps;
  } else if (o.action == "apery") {
    out = apery_set(n, o.m == 0 ? n.multiplicity() : o.m);
  } else if (o.action == "factorizations") {
    require(!o.x.empty(), "--x", o.action);
    out = json::array();
    for (const auto& z : factorizations(n, parse_int(o.x), limits)) out.push_back(factorization_json(z));
  } else if (o.action == "lengths") {
    require(!o.x.empty(), "--x", o.action);
    out = length_set(n, parse_int(o.x), limits);
  } else if (o.action == "betti") {
    out = betti_elements(n, limits);
  } else if (o.action == "molecules") {
    if (o.mode != "enumerate" && o.mode != "betti") throw UsageError("unknown mode '" + o.mode + "'");
    out = molecules(n, o.mode == "betti" ? MoleculeMode::betti_filter : MoleculeMode::enumerate, limits);
  } else {
    throw UsageError("unknown ns action '" + o.action + "'");
  }
  emit(out, o.format);
  return kExitOk;
}

int run_pm(const Options& o, const Limits& limits) {
  check_format(o, {"json", "text"});
  auto p = fg_from_generators(parse_rational_list(o.target));
  json out;
  if (o.action == "atoms") {
    out = rationals(p.atoms());
  } else if (o.action == "molecules") {
    out = rationals(molecules_fg(p, limits));
  } else if (o.action == "reduce") {
    out = {{"scale", p.scale().to_string()}, {"scaled_atoms", big_ints(p.scaled_atoms())}};
  } else if (o.action == "iso") {
    require(!o.other.empty(), "--other", o.action);
    auto other = fg_from_generators(parse_rational_list(o.other));
    auto q = scaling_analysis(p, other);
    out = {{"isomorphic", q.has_value()}};
    if (q) out["scalar"] = q->to_string();
  } else {
    throw UsageError("unknown pm action '" + o.action + "'");
  }
  emit(out, o.format);
  return kExitOk;
}

int run_primary(const Options& o, const Limits& limits) {
  check_format(o, {"json", "text"});
  require(!o.spec_path.empty(), "--spec", o.action);
  auto spec = PrimaryMonoidSpec::parse(read_file(o.spec_path));
  json out;
  if (o.action == "classify") {
    auto cls = classify_atoms(spec);
    out = {{"stable_families", cls.stable_families},
           {"unstable_families", cls.unstable_families},
           {"unstable_generators", rationals(cls.unstable_generators)}};
  } else {
    require(!o.x.empty(), "--x", o.action);
    auto x = Rational::parse(o.x);
    if (o.action == "contains") {
      auto m = contains_primary(spec, x);
      out = {{"x", x.to_string()}, {"member", m.member}};
      if (m.member) {
        out["certificate"] = primary_factorization_json(spec, m.certificate);
      } else {
        out["reason"] = std::string(to_string(m.failure));
        if (m.prime) out["prime"] = m.prime;
      }
    } else if (o.action == "multiplicity") {
      require(!o.atom.empty(), "--atom", o.action);
      auto a = Rational::parse(o.atom);
      out = {{"atom", a.to_string()}, {"x", x.to_string()},
             {"multiplicity", max_multiplicity(spec, a, x).str()}};
    } else if (o.action == "molecule" || o.action == "decompose") {
      auto v = molecule_general(spec, x, limits);
      out = {{"x", x.to_string()}, {"status", std::string(to_string(v.status))}};
      if (v.status == MoleculeStatus::molecule) {
        out["factorization"] = primary_factorization_json(spec, v.factorization);
      }
      if (v.status != MoleculeStatus::not_member) {
        out["sufficient_condition"] = sufficient_molecule_check(spec, x);
      }
      if (v.certified_unique) out["certified_unique"] = *v.certified_unique;
      if (o.action == "decompose" && v.status == MoleculeStatus::molecule) {
        out["s"] = v.stable_component->to_string();
        out["u"] = v.unstable_component->to_string();
      }
    } else {
      throw UsageError("unknown primary action '" + o.action + "'");
    }
  }
  emit(out, o.format);
  return kExitOk;
}

int run_construct(const Options& o, const Limits& limits) {
  json out;
  if (o.action == "interval") {
    check_format(o, {"json", "text"});
    auto n = interval_semigroup(o.n);
    auto m = molecules(n, MoleculeMode::enumerate, limits);
    out = {{"generators", n.atoms()}, {"molecules", m}, {"molecule_count", m.size()}};
  } else if (o.action == "stage") {
    check_format(o, {"json", "text"});
    PrimePool pool = PrimePool::all_primes();
    if (o.primes != "all") {
      std::vector<std::uint64_t> list;
      for (auto v : parse_generators(o.primes)) list.push_back(static_cast<std::uint64_t>(v));
      pool = PrimePool::of(std::move(list));
    }
    auto stage = stable_stage(pool, o.k);
    out = {{"k", o.k},
           {"atoms", rationals(stage.monoid.atoms())},
           {"new_generators", rationals(stage.new_generators)},
           {"support", stage.support}};
  } else if (o.action == "example42") {
    check_format(o, {"json", "text"});
    auto d = example_declared_two_fifths();
    out = {{"atoms", rationals(d.atoms())}, {"provenance", d.provenance()}};
    for (const char* x : {"1", "1/2", "2"}) {
      auto c = molecules_over_declared_atoms(d, Rational::parse(x), limits);
      json witnesses = json::array();
      for (const auto& z : c.witnesses) witnesses.push_back(big_ints(z));
      out["counts"][x] = {{"count", c.count}, {"witnesses", witnesses}};
    }
  } else if (o.action == "example57") {
    check_format(o, {"json", "text"});
    auto spec = odd_square_spec(o.depth);
    if (o.format == "text") {
      std::cout << spec.to_string();
      return kExitOk;
    }
    json families = json::array();
    for (const auto& f : spec.families()) {
      families.push_back({{"numerator", f.numerator.str()}, {"primes", f.primes.to_string()}});
    }
    out = {{"families", families}};
  } else {
    throw UsageError("unknown construct action '" + o.action + "'");
  }
  emit(out, o.format);
  return kExitOk;
}

int run_verify(const Options& o) {
  auto report = verify_suite(o.target);
  json results = json::array();
  for (const auto& r : report.results) {
    json item = {{"suite", r.suite}, {"property", r.property}, {"passed", r.passed}, {"checked", r.checked}};
    if (!r.passed) item["counterexample"] = r.counterexample;
    results.push_back(item);
  }
  emit({{"suite", o.target}, {"passed", report.passed()}, {"results", results}}, "json");
  return report.passed() ? kExitOk : kExitDomain;
}

void add_format(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "text", "dot", "svg"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factorization invariants and molecules of numerical semigroups and Puiseux monoids"};
  app.require_subcommand(1, 1);
  Options o;

  auto* ns = app.add_subcommand("ns", "Numerical semigroups");
  ns->add_option("action", o.action,
                 "atoms|frobenius|gaps|apery|factorizations|lengths|betti|molecules|graph|strip")
      ->required();
  ns->add_option("generators", o.target, "Comma-separated generators (';' separates strip rows)")
      ->required();
  ns->add_option("--x", o.x, "Element");
  ns->add_option("--m", o.m, "Apery modulus (default: multiplicity)");
  ns->add_option("--limit", o.limit, "Strip range upper end")->check(CLI::Range(1, 1 << 20));
  ns->add_option("--mode", o.mode, "Molecule algorithm: enumerate|betti");
  ns->add_option("--out", o.out_path, "Write SVG to this path");
  ns->add_option("--atom-color", o.colors.atom);
  ns->add_option("--molecule-color", o.colors.molecule_non_atom);
  ns->add_option("--non-molecule-color", o.colors.non_molecule);
  ns->add_option("--gap-color", o.colors.gap);
  add_format(ns, o);

  auto* pm = app.add_subcommand("pm", "Finitely generated Puiseux monoids");
  pm->add_option("action", o.action, "atoms|molecules|reduce|iso")->required();
  pm->add_option("generators", o.target, "Comma-separated rationals")->required();
  pm->add_option("--other", o.other, "Generators of the second monoid for iso");
  add_format(pm, o);

  auto* primary = app.add_subcommand("primary", "Primary Puiseux monoids from a spec file");
  primary->add_option("action", o.action, "contains|multiplicity|molecule|classify|decompose")
      ->required();
  primary->add_option("--spec", o.spec_path, "Spec file")->required();
  primary->add_option("--x", o.x, "Element");
  primary->add_option("--atom", o.atom, "Atom for multiplicity");
  add_format(primary, o);

  auto* construct = app.add_subcommand("construct", "Constructions");
  construct->add_option("action", o.action, "interval|stage|example42|example57")->required();
  construct->add_option("--n", o.n, "Molecule count for interval");
  construct->add_option("--primes", o.primes, "'all' or a comma-separated prime list");
  construct->add_option("--k", o.k, "Stage index")->check(CLI::PositiveNumber);
  construct->add_option("--depth", o.depth, "Number of odd primes for example57");
  add_format(construct, o);

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", o.target, "numsgp-oracle|dim2|betti-lemma|stages|elementary|primary-general|all")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    Limits limits = limits_from_env();
    if (*ns) return run_ns(o, limits);
    if (*pm) return run_pm(o, limits);
    if (*primary) return run_primary(o, limits);
    if (*construct) return run_construct(o, limits);
    return run_verify(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    json err = {{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.detail()}}}};
    std::cout << err.dump(2) << "\n";
    if (e.kind() == ErrorKind::UnknownSuite) return kExitUsage;
    return e.kind() == ErrorKind::LimitExceeded ? kExitLimit : kExitDomain;
  }
}
