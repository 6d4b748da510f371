#include "hilbert_cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hilbert/engine.hpp"
#include "hilbert/errors.hpp"
#include "hilbert/generators.hpp"
#include "hilbert/harness.hpp"
#include "hilbert/lattice_paths.hpp"
#include "hilbert/monomial_ideal.hpp"
#include "hilbert/series.hpp"

#ifndef HILBERT_VERSION
#define HILBERT_VERSION "0.0.0"
#endif

namespace hilbert::cli {

namespace {

constexpr int kDefaultTensorDegree = 8;
constexpr int kOpenSeriesPrecision = 10;

const char* const kGeneratorHelp = R"(Generator specs are comma-separated terms kind:params, most with an optional
repeat count xR:
  generic:D            generic form of degree D (generic:D1/D2 for a bidegree)
  genpow:D^K           K-th power of a generic form of degree D
  prodgen:D1+D2        product of generic forms of degrees D1, D2, ...
  prodlin:E1+E2        product of powers of generic linear forms
  linpow:D             D-th power of a generic linear form
  varpow:D | varpow:D@I          x_I^D, or every variable
  oddsum:D | oddsum:D@I+J+K      (x_I + x_J + x_K)^D, or every odd subset
  signedsum:D | signedsum:D@+-+  (x1 +- x2 +- ...)^D, or every sign pattern
  lie:2                random combination of commutators [x_i, x_j]
  commutator:I-J       [x_I, x_J]
  fl-family:q=Q | fl-family:q=inf   three quadratic relations in 4 variables
  explicit:POLY        e.g. explicit:x1*x2-3*x3^2
  idealpow:s=S(TERMS)  all products of S forms from TERMS
Variables are numbered from 1. Example: generic:3x5,linpow:4x2)";

struct Global {
  std::string format = "table";
  std::string output;
  bool no_timing = false;
};

nlohmann::json tool_json() { return {{"name", "hilbert"}, {"version", version()}}; }

nlohmann::json integers_json(std::span<const Integer> values) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& v : values) a.push_back(integer_to_json(v));
  return a;
}

std::string integers_text(std::span<const Integer> values) {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ", ";
    s += values[i].get_str();
  }
  return s + "]";
}

std::string ints_text(const std::vector<int>& values, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(values[i]);
  }
  return s;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<Integer> coefficients(const TruncatedSeries& s) { return {s.coeffs().begin(), s.coeffs().end()}; }

// Coefficients up to the last nonzero one.
std::vector<Integer> without_trailing_zeros(std::vector<Integer> v) {
  while (v.size() > 1 && v.back() == 0) v.pop_back();
  return v;
}

// Precision at which a Froberg-type series has certainly vanished, if it does.
int froberg_default_precision(int n, std::vector<int> degrees) {
  if (static_cast<int>(degrees.size()) < n) return kOpenSeriesPrecision;
  std::sort(degrees.begin(), degrees.end());
  int socle = 0;
  for (int i = 0; i < n; ++i) socle += degrees[static_cast<std::size_t>(i)] - 1;
  return std::min(socle + 1, kDefaultPrecisionCap);
}

std::string series_csv(std::span<const Integer> values) {
  std::string s = "degree,coefficient\n";
  for (std::size_t t = 0; t < values.size(); ++t) s += std::to_string(t) + "," + values[t].get_str() + "\n";
  return s;
}

std::string rows_table(std::span<const Integer> flat, int columns) {
  std::string s;
  for (std::size_t i = 0; i < flat.size(); ++i) {
    s += flat[i].get_str();
    s += (i + 1) % static_cast<std::size_t>(columns) == 0 ? "\n" : " ";
  }
  return s;
}

void check_format(const std::string& format) {
  if (format != "json" && format != "csv" && format != "table") {
    throw std::invalid_argument("--format must be json, csv or table");
  }
}

// --- series ------------------------------------------------------------------

struct SeriesArgs {
  std::string family;
  int n = 0;
  int m = 1;
  std::string degrees;
  std::string bidegrees;
  std::optional<int> prec;
  bool non_strict = false;
};

std::string cmd_series(const SeriesArgs& a, const Global& g) {
  nlohmann::json j{{"schema", 1}, {"tool", tool_json()}, {"command", "series"}, {"family", a.family}};
  const auto degrees = a.degrees.empty() ? std::vector<int>{} : parse_degree_list(a.degrees);
  if (a.family == "bigraded") {
    const auto gens = parse_multidegree_list(a.bidegrees);
    std::vector<Bidegree> bi;
    int px = 0;
    int py = 0;
    for (const auto& x : gens) {
      if (x.size() != 2) throw std::invalid_argument("bidegrees are pairs");
      bi.push_back({x[0], x[1]});
      px = std::max(px, x[0] + 4);
      py = std::max(py, x[1] + 4);
    }
    if (a.prec) px = py = *a.prec;
    const auto s = bigraded_froberg_series(a.m, a.n, bi, px, py, !a.non_strict);
    j["params"] = {{"m", a.m}, {"n", a.n}, {"bidegrees", gens}, {"precision", {px, py}}, {"strict", !a.non_strict}};
    j["shape"] = {px + 1, py + 1};
    j["series"] = integers_json(s.flat());
    if (g.format == "json") return j.dump() + "\n";
    if (g.format == "csv") {
      std::string out = "i,j,coefficient\n";
      for (int x = 0; x <= px; ++x) {
        for (int y = 0; y <= py; ++y) {
          out += std::to_string(x) + "," + std::to_string(y) + "," + s.flat()[static_cast<std::size_t>(x * (py + 1) + y)].get_str() + "\n";
        }
      }
      return out;
    }
    return rows_table(s.flat(), py + 1);
  }
  TruncatedSeries s;
  nlohmann::json params = nlohmann::json::object();
  if (a.family == "froberg") {
    const int p = a.prec.value_or(froberg_default_precision(a.n, degrees));
    s = froberg_series(a.n, DegreeSequence(degrees), p);
    params = {{"n", a.n}, {"degrees", degrees}, {"precision", p}};
  } else if (a.family == "anick") {
    const int p = a.prec.value_or(kDefaultTensorDegree);
    s = anick_series(a.n, DegreeSequence(degrees), p);
    params = {{"n", a.n}, {"degrees", degrees}, {"precision", p}};
  } else if (a.family == "exterior") {
    const int p = a.prec.value_or(a.n);
    s = exterior_expected_series(a.n, DegreeSequence(degrees), p);
    params = {{"n", a.n}, {"degrees", degrees}, {"precision", p}};
  } else if (a.family == "max2") {
    if (degrees.empty()) throw std::invalid_argument("max2 needs --degrees");
    const int p = a.prec.value_or(*std::max_element(degrees.begin(), degrees.end()));
    s = max_series_two_vars(DegreeSequence(degrees), p);
    params = {{"degrees", degrees}, {"precision", p}};
  } else if (a.family == "paths") {
    s = paths_conjecture_series(a.n, a.prec.value_or(-1));
    params = {{"n", a.n}, {"precision", s.precision()}};
  } else {
    throw std::invalid_argument("unknown family '" + a.family + "'");
  }
  j["params"] = params;
  j["series"] = integers_json(s.coeffs());
  j["text"] = format_series(s);
  if (g.format == "json") return j.dump() + "\n";
  if (g.format == "csv") return series_csv(s.coeffs());
  return format_series(s) + "\n";
}

// --- compute -----------------------------------------------------------------

struct ComputeArgs {
  std::string algebra = "comm";
  int n = 0;
  int m = 1;
  std::string gens;
  std::uint32_t field = kDefaultPrime;
  std::uint64_t seed = 0;
  int trials = 3;
  std::optional<int> max_deg;
};

std::string cmd_compute(const ComputeArgs& a, const Global& g) {
  if (a.n < 1) throw std::invalid_argument("--n must be positive");
  if (a.trials < 1) throw std::invalid_argument("--trials must be positive");
  const PrimeField field(a.field);
  std::optional<AlgebraKind> kind;
  if (a.algebra == "comm") kind = AlgebraKind::commutative(a.n);
  if (a.algebra == "ext") kind = AlgebraKind::exterior(a.n);
  if (a.algebra == "tensor") kind = AlgebraKind::tensor(a.n);
  if (a.algebra == "bigraded") kind = AlgebraKind::bigraded(a.m, a.n);
  if (!kind) throw std::invalid_argument("--algebra must be comm, ext, tensor or bigraded");
  const auto specs = parse_generator_specs(a.gens, *kind, field);
  EngineOptions options;
  options.field = field;
  options.seed = a.seed;
  options.trials = a.trials;

  nlohmann::json j{{"schema", 1},          {"tool", tool_json()}, {"command", "compute"},
                   {"algebra", a.algebra}, {"n", a.n},             {"gens", describe(specs)},
                   {"prime", a.field},     {"seed", a.seed},       {"trials", a.trials}};
  if (a.algebra == "bigraded") j["m"] = a.m;

  if (a.algebra == "bigraded") {
    std::vector<int> precisions{0, 0};
    const auto forms = realize_generators(*kind, specs, field, a.seed);
    for (const auto& f : forms) {
      for (int i = 0; i < 2; ++i) precisions[i] = std::max(precisions[i], f.grade[i] + 4);
    }
    if (a.max_deg) precisions = {*a.max_deg, *a.max_deg};
    const auto result = multigraded_quotient_series(*kind, specs, precisions, options);
    j["shape"] = {precisions[0] + 1, precisions[1] + 1};
    j["series"] = integers_json(result.series.flat());
    nlohmann::json profile;
    to_json(profile, result.profile);
    j["profile"] = profile;
    j["trial_seeds"] = result.trial_seeds;
    if (g.format == "json") return j.dump() + "\n";
    return rows_table(result.series.flat(), precisions[1] + 1);
  }

  int max_degree = kDefaultTensorDegree;
  if (a.max_deg) {
    max_degree = *a.max_deg;
  } else if (a.algebra == "ext") {
    max_degree = a.n;
  } else if (a.algebra == "comm") {
    std::vector<int> degrees;
    for (const auto& f : realize_generators(*kind, specs, field, a.seed)) degrees.push_back(f.grade[0]);
    max_degree = froberg_default_precision(a.n, degrees);
  }
  const auto result = quotient_series(*kind, specs, max_degree, options);
  auto shown = coefficients(result.series);
  // Quotients generated in degree one stay zero after the first zero.
  if (a.algebra != "tensor") shown = without_trailing_zeros(shown);
  j["max_degree"] = max_degree;
  j["series"] = integers_json(shown);
  nlohmann::json profile;
  to_json(profile, result.profile);
  j["profile"] = profile;
  j["trial_seeds"] = result.trial_seeds;
  if (g.format == "json") return j.dump() + "\n";
  if (g.format == "csv") return series_csv(shown);
  std::ostringstream out;
  out << integers_text(shown) << "\n" << format_series(result.series) << "\n";
  out << "ranks by degree (ambient, ideal, quotient):\n";
  for (const auto& d : result.profile.degrees) {
    out << "  " << ints_text(d.grade) << ": " << d.ambient_dim << " " << d.ideal_rank << " " << d.quotient_dim << "\n";
  }
  out << "prime " << a.field << ", seed " << a.seed << ", trials " << a.trials << "\n";
  return out.str();
}

// --- verify / grid --------------------------------------------------------------

std::string series_text(const std::vector<int>& shape, const std::vector<Integer>& values) {
  if (shape.size() == 1) return format_series(TruncatedSeries(values));
  return integers_text(values) + " shape " + ints_text(shape, "x");
}

std::string csv_header() { return "check_id,params,verdict,first_divergence,seed,prime\n"; }

std::string csv_row(const CheckSpec& spec, const std::string& verdict, const std::string& divergence,
                    const std::vector<std::uint32_t>& primes) {
  std::string prime;
  for (std::size_t i = 0; i < primes.size(); ++i) prime += (i ? ";" : "") + std::to_string(primes[i]);
  return std::string(to_string(spec.check)) + "," + csv_quote(params_text(spec)) + "," + verdict + "," +
         csv_quote(divergence) + "," + std::to_string(spec.seed) + "," + prime + "\n";
}

std::string report_csv_row(const VerificationReport& r) {
  return csv_row(r.spec, std::string(to_string(r.verdict)), r.first_divergence ? ints_text(*r.first_divergence) : "",
                 r.primes);
}

std::string report_table(const VerificationReport& r) {
  std::ostringstream out;
  out << "check        " << to_string(r.spec.check) << "\n";
  out << "params       " << params_text(r.spec) << "\n";
  out << "computed     " << series_text(r.shape, r.computed) << "\n";
  out << "reference    " << series_text(r.shape, r.reference) << "\n";
  out << "verdict      " << to_string(r.verdict);
  if (r.first_divergence) out << " (first divergence at " << ints_text(*r.first_divergence) << ")";
  out << "\n";
  out << "expectation  " << to_string(r.expectation);
  if (r.expectation_met) out << (*r.expectation_met ? ", met" : ", VIOLATED");
  out << "\n";
  if (r.spec.requested && *r.spec.requested != r.expectation) {
    out << "note         requested " << to_string(*r.spec.requested) << "; the cell is " << to_string(r.expectation)
        << "\n";
  }
  std::string primes;
  for (auto p : r.primes) primes += (primes.empty() ? "" : ",") + std::to_string(p);
  out << "primes       " << primes << "\n";
  out << "seed         " << r.spec.seed << "\n";
  return out.str();
}

struct VerifyArgs {
  std::string check;
  CheckSpec spec;
  std::string degrees;
  std::string linear_degrees;
  std::string multidegrees;
  std::string q;
  std::string expect;
  std::string recheck;
  std::optional<int> prec;
  bool non_strict = false;
};

int cmd_recheck(const std::string& path, const Global& g, std::ostream& out) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  std::vector<nlohmann::json> reports;
  auto keep = [&](const nlohmann::json& j) {
    if (j.is_object() && j.contains("check") && !j.contains("error")) reports.push_back(j);
  };
  if (auto whole = nlohmann::json::parse(text, nullptr, false); !whole.is_discarded()) {
    keep(whole);
  } else {
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      keep(nlohmann::json::parse(line));
    }
  }
  if (reports.empty()) throw std::invalid_argument("no reports in " + path);
  bool all = true;
  nlohmann::json results = nlohmann::json::array();
  std::string table;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto r = recheck(reports[i]);
    all = all && r.consistent;
    results.push_back({{"index", i}, {"check", reports[i]["check"]}, {"consistent", r.consistent}, {"message", r.message}});
    table += std::to_string(i) + "\t" + reports[i]["check"].get<std::string>() + "\t" +
             (r.consistent ? "consistent" : "INCONSISTENT") + "\t" + r.message + "\n";
  }
  if (g.format == "json") {
    out << nlohmann::json{{"schema", 1}, {"tool", tool_json()}, {"command", "recheck"}, {"results", results},
                          {"consistent", all}}
               .dump()
        << "\n";
  } else {
    out << table;
  }
  return all ? kExitOk : kExitViolated;
}

int cmd_verify(VerifyArgs a, const Global& g, std::ostream& out) {
  if (!a.recheck.empty()) return cmd_recheck(a.recheck, g, out);
  const auto id = parse_check_id(a.check);
  if (!id) throw std::invalid_argument("unknown check '" + a.check + "'");
  CheckSpec spec = a.spec;
  spec.check = *id;
  if (!a.degrees.empty()) spec.degrees = parse_degree_list(a.degrees);
  if (!a.linear_degrees.empty()) spec.linear_degrees = parse_degree_list(a.linear_degrees);
  if (!a.multidegrees.empty()) spec.multidegrees = parse_multidegree_list(a.multidegrees);
  if (!a.q.empty() && a.q != "inf") spec.q = std::stoi(a.q);
  spec.precision = a.prec;
  spec.strict = !a.non_strict;
  if (!a.expect.empty()) {
    spec.requested = parse_expectation(a.expect);
    if (!spec.requested) throw std::invalid_argument("--expect must be match, differ or report");
  }
  const auto report = check(spec);
  if (g.format == "json") {
    auto j = to_json(report, !g.no_timing);
    j["tool"] = tool_json();
    out << j.dump() << "\n";
  } else if (g.format == "csv") {
    out << csv_header() << report_csv_row(report);
  } else {
    out << report_table(report);
  }
  return report.expectation_met.value_or(true) ? kExitOk : kExitViolated;
}

struct GridArgs {
  std::string config;
  unsigned threads = 0;
};

int cmd_grid(const GridArgs& a, const Global& g, std::ostream& out) {
  std::ifstream in(a.config);
  if (!in) throw std::invalid_argument("cannot read " + a.config);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const auto cells = parse_grid(buffer.str());
  const auto result = run_grid(cells, a.threads);
  if (g.format == "json") {
    for (std::size_t i = 0; i < result.cells.size(); ++i) {
      const auto& cell = result.cells[i];
      nlohmann::json j;
      if (cell.report) {
        j = to_json(*cell.report, !g.no_timing);
      } else {
        j = {{"schema", 1},
             {"check", std::string(to_string(cell.spec.check))},
             {"params", params_to_json(cell.spec)},
             {"error", *cell.error},
             {"error_kind", cell.error_kind}};
      }
      j["cell"] = i;
      j["tool"] = tool_json();
      out << j.dump() << "\n";
    }
    out << nlohmann::json{{"summary", to_json(result.summary)}, {"tool", tool_json()}}.dump() << "\n";
  } else if (g.format == "csv") {
    out << csv_header();
    for (const auto& cell : result.cells) {
      if (cell.report) {
        out << report_csv_row(*cell.report);
      } else {
        out << csv_row(cell.spec, "error:" + cell.error_kind, "", {cell.spec.prime});
      }
    }
  } else {
    out << cells_table(result) << "\n" << summary_table(result.summary);
  }
  bool invariant = false;
  bool resource = false;
  bool invalid = false;
  for (const auto& cell : result.cells) {
    invariant = invariant || cell.error_kind == "invariant";
    resource = resource || cell.error_kind == "resource";
    invalid = invalid || cell.error_kind == "invalid";
  }
  if (result.summary.expectations_violated > 0 || invariant) return kExitViolated;
  if (resource) return kExitResource;
  if (invalid) return kExitUsage;
  return kExitOk;
}

// --- search-max ----------------------------------------------------------------

struct SearchArgs {
  int n = 2;
  std::string degrees;
  std::size_t cap = EnumerationOptions{}.cap;
  bool all_orbits = false;
  std::optional<int> prec;
};

std::string cmd_search_max(const SearchArgs& a, const Global& g) {
  EnumerationOptions options;
  options.cap = a.cap;
  options.canonicalize = !a.all_orbits;
  const auto degrees = parse_degree_list(a.degrees);
  const auto report = search_extremal_series(a.n, DegreeSequence(degrees), options, a.prec);
  nlohmann::json j;
  to_json(j, report);
  j["schema"] = 1;
  j["tool"] = tool_json();
  j["command"] = "search-max";
  if (g.format == "json") return j.dump() + "\n";
  if (g.format == "csv") {
    std::string s = "ideal,series\n";
    for (const auto& c : report.maximal) s += csv_quote(format_ideal(c.ideal)) + "," + csv_quote(format_series(c.series)) + "\n";
    return s;
  }
  std::ostringstream out;
  out << "ideals examined   " << report.examined << "\n";
  out << "unique maximum    " << (report.unique_maximum ? "yes" : "no") << "\n";
  if (report.examined > 0) {
    out << "lex maximum       " << format_ideal(report.lex_maximum.ideal) << "  " << format_series(report.lex_maximum.series)
        << "\n";
  }
  if (report.agrees_with_two_variable_bound) {
    out << "two-variable bound " << (*report.agrees_with_two_variable_bound ? "attained" : "NOT attained") << "\n";
  }
  out << "maximal ideals (" << report.maximal.size() << "):\n";
  for (const auto& c : report.maximal) out << "  " << format_ideal(c.ideal) << "  " << format_series(c.series) << "\n";
  return out.str();
}

void emit(const std::string& text, const Global& g, std::ostream& out) {
  if (g.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(g.output);
  if (!file) throw std::invalid_argument("cannot write " + g.output);
  file << text;
}

}  // namespace

std::string version() { return HILBERT_VERSION; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hilbert series of graded algebras: expected series, engine runs and checks", "hilbert"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());
  app.footer(kGeneratorHelp);

  Global g;
  app.add_option("--format", g.format, "json, csv or table")->capture_default_str();
  app.add_option("--output,-o", g.output, "Write results to this file");
  app.add_flag("--no-timing", g.no_timing, "Leave wall_time_s out of JSON reports");

  SeriesArgs series;
  auto* s = app.add_subcommand("series", "Print an expected series");
  s->fallthrough();
  s->add_option("--family", series.family, "froberg, anick, exterior, max2, paths or bigraded")->required();
  s->add_option("--n", series.n, "Number of variables (second factor for bigraded)");
  s->add_option("--m", series.m, "First factor for bigraded");
  s->add_option("--degrees", series.degrees, "Degrees, e.g. 2,2,3 or 2x12");
  s->add_option("--bidegrees", series.bidegrees, "Bidegrees, e.g. (2,1);(1,1)");
  s->add_option("--prec", series.prec, "Precision");
  s->add_flag("--non-strict", series.non_strict, "Let zeros pass the bigraded truncation");

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "Hilbert series of a quotient by the engine");
  c->fallthrough();
  c->add_option("--algebra", compute.algebra, "comm, ext, tensor or bigraded")->capture_default_str();
  c->add_option("--n", compute.n, "Number of variables")->required();
  c->add_option("--m", compute.m, "First factor for bigraded");
  c->add_option("--gens", compute.gens, "Generator spec")->required();
  c->add_option("--field,--prime", compute.field, "Prime field size")->capture_default_str();
  c->add_option("--seed", compute.seed, "Master seed")->capture_default_str();
  c->add_option("--trials", compute.trials, "Random trials")->capture_default_str();
  c->add_option("--max-deg", compute.max_deg, "Largest degree computed");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run one check against its expected series");
  v->fallthrough();
  v->add_option("--check", verify.check, "Check id (see --list-checks)");
  v->add_option("--n", verify.spec.n, "Number of variables")->capture_default_str();
  v->add_option("--m", verify.spec.m, "First factor for bigraded");
  v->add_option("--degrees", verify.degrees, "Degrees, e.g. 2,2,3 or 2x12");
  v->add_option("--linear-degrees", verify.linear_degrees, "Powers of linear forms (mixed-linpowers)");
  v->add_option("--multidegrees", verify.multidegrees, "Multidegrees, e.g. (2,1);(2,1)");
  v->add_option("--d", verify.spec.d, "Degree");
  v->add_option("--r", verify.spec.r, "Number of forms");
  v->add_option("--k", verify.spec.k, "Exponent, linear form count or top multiplier degree");
  v->add_option("--s", verify.spec.s, "Ideal power");
  v->add_option("--q", verify.q, "Family parameter (integer or inf)");
  v->add_option("--gens", verify.spec.gens, "Generator spec of the quotient (wlp, slp, mrp)");
  v->add_option("--field,--prime", verify.spec.prime, "Prime field size")->capture_default_str();
  v->add_option("--seed", verify.spec.seed, "Master seed")->capture_default_str();
  v->add_option("--trials", verify.spec.trials, "Random trials")->capture_default_str();
  v->add_option("--prec", verify.prec, "Precision");
  v->add_flag("--non-strict", verify.non_strict, "Let zeros pass the multigraded truncation");
  v->add_option("--expect", verify.expect, "match, differ or report; recorded, the cell's status decides");
  v->add_option("--recheck", verify.recheck, "Recompute verdicts of saved JSON reports");
  bool list_checks = false;
  v->add_flag("--list-checks", list_checks, "List check ids");

  GridArgs grid;
  auto* gr = app.add_subcommand("grid", "Run a grid of checks from a config file");
  gr->fallthrough();
  gr->add_option("config", grid.config, "Grid config file")->required();
  gr->add_option("--threads", grid.threads, "Worker threads (default HF_THREADS or all cores)");

  SearchArgs search;
  auto* sm = app.add_subcommand("search-max", "Exhaustive search for the maximal series of monomial ideals");
  sm->fallthrough();
  sm->add_option("--n", search.n, "Number of variables (2 or 3)")->required();
  sm->add_option("--degrees", search.degrees, "Generator degrees")->required();
  sm->add_option("--cap", search.cap, "Largest number of generator choices")->capture_default_str();
  sm->add_flag("--all-orbits", search.all_orbits, "Keep every ideal, not one per variable permutation");
  sm->add_option("--prec", search.prec, "Precision of the reported series");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    check_format(g.format);
    if (s->parsed()) {
      emit(cmd_series(series, g), g, out);
      return kExitOk;
    }
    if (c->parsed()) {
      emit(cmd_compute(compute, g), g, out);
      return kExitOk;
    }
    if (sm->parsed()) {
      emit(cmd_search_max(search, g), g, out);
      return kExitOk;
    }
    std::ostringstream text;
    int code = kExitOk;
    if (v->parsed()) {
      if (list_checks) {
        for (auto id : all_checks()) text << to_string(id) << "\n";
      } else {
        if (verify.check.empty() && verify.recheck.empty()) throw std::invalid_argument("verify needs --check or --recheck");
        code = cmd_verify(verify, g, text);
      }
    } else {
      code = cmd_grid(grid, g, text);
    }
    emit(text.str(), g, out);
    return code;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::length_error& e) {
    err << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const InvariantViolation& e) {
    err << "invariant violated: " << e.what() << "\n";
    return kExitViolated;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace hilbert::cli
