#include "hilbert/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "hilbert/engine.hpp"
#include "hilbert/errors.hpp"
#include "hilbert/generators.hpp"
#include "hilbert/lattice_paths.hpp"

namespace hilbert {

namespace {

// Below this size a prime field is too small to stand in for an infinite one.
constexpr std::uint32_t kLargePrime = 1000;
constexpr std::uint32_t kSecondPrime = 65521;
constexpr int kDifferTrials = 5;
constexpr int kTensorPrecision = 8;
constexpr int kOpenPrecisionCap = 24;

struct CheckName {
  CheckId id;
  std::string_view name;
};

constexpr CheckName kNames[] = {
    {CheckId::froberg, "froberg"},
    {CheckId::stanley_subst, "stanley-subst"},
    {CheckId::powers, "powers"},
    {CheckId::products, "products"},
    {CheckId::linpower_products, "linpower-products"},
    {CheckId::ideal_power, "ideal-power"},
    {CheckId::hl_degree, "hl-degree"},
    {CheckId::linpowers_iarrobino, "linpowers-iarrobino"},
    {CheckId::mixed_linpowers, "mixed-linpowers"},
    {CheckId::odd_sums, "odd-sums"},
    {CheckId::signed_sums, "signed-sums"},
    {CheckId::wlp, "wlp"},
    {CheckId::slp, "slp"},
    {CheckId::mrp, "mrp"},
    {CheckId::almost_revlex, "almost-revlex"},
    {CheckId::pa_ranks, "pa-ranks"},
    {CheckId::tensor_generic, "tensor-generic"},
    {CheckId::tensor_fl_family, "tensor-fl-family"},
    {CheckId::lie_quadratic, "lie-quadratic"},
    {CheckId::lie_commutator_example, "lie-commutator-example"},
    {CheckId::exterior_generic, "exterior-generic"},
    {CheckId::exterior_paths, "exterior-paths"},
    {CheckId::exterior_vs_squares, "exterior-vs-squares"},
    {CheckId::bigraded, "bigraded"},
    {CheckId::multi_p1, "multi-p1"},
    {CheckId::poschar, "poschar"},
};

std::string normalize_name(std::string_view text) {
  std::string out;
  for (char c : text) out += c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<Integer> coefficients(const TruncatedSeries& s) { return {s.coeffs().begin(), s.coeffs().end()}; }

std::vector<Integer> elementwise_min(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  std::vector<Integer> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] < b[i] ? a[i] : b[i];
  return out;
}

int first_zero(const TruncatedSeries& s) {
  for (int t = 0; t <= s.precision(); ++t) {
    if (s[t] == 0) return t;
  }
  return -1;
}

int sum_of(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

std::vector<int> repeat(int value, int count) { return std::vector<int>(static_cast<std::size_t>(std::max(count, 0)), value); }

// Degree of the first vanishing coefficient of the expected commutative
// series plus one, or a bounded guess for series that never vanish.
int commutative_precision(const CheckSpec& spec, int n, const std::vector<int>& degrees) {
  if (spec.precision) return *spec.precision;
  const auto expected = froberg_series(n, DegreeSequence(degrees), kDefaultPrecisionCap);
  const int t = first_zero(expected);
  if (t >= 0) return std::min(t + 1, kDefaultPrecisionCap);
  return std::min(sum_of(degrees) + 2, kOpenPrecisionCap);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// Run parameters shared by the engine sides of one check.
struct Plan {
  std::vector<std::uint32_t> primes;
  int trials = 3;
};

struct Side {
  std::vector<Integer> coeffs;
  std::vector<std::uint64_t> seeds;
  nlohmann::json profiles = nlohmann::json::array();
};

Side engine_side(const AlgebraKind& kind, const std::vector<GeneratorSpec>& specs, int precision, const Plan& plan,
                 std::uint64_t seed) {
  Side out;
  for (auto p : plan.primes) {
    EngineOptions options;
    options.field = PrimeField(p);
    options.seed = seed;
    options.trials = plan.trials;
    const auto result = quotient_series(kind, specs, precision, options);
    auto c = coefficients(result.series);
    out.coeffs = out.coeffs.empty() ? c : elementwise_min(out.coeffs, c);
    out.seeds.insert(out.seeds.end(), result.trial_seeds.begin(), result.trial_seeds.end());
    nlohmann::json profile;
    to_json(profile, result.profile);
    out.profiles.push_back({{"prime", p}, {"profile", profile}});
  }
  return out;
}

Side multigraded_side(const AlgebraKind& kind, const std::vector<GeneratorSpec>& specs,
                      const std::vector<int>& precisions, const Plan& plan, std::uint64_t seed) {
  Side out;
  for (auto p : plan.primes) {
    EngineOptions options;
    options.field = PrimeField(p);
    options.seed = seed;
    options.trials = plan.trials;
    const auto result = multigraded_quotient_series(kind, specs, precisions, options);
    std::vector<Integer> c(result.series.flat().begin(), result.series.flat().end());
    out.coeffs = out.coeffs.empty() ? c : elementwise_min(out.coeffs, c);
    out.seeds.insert(out.seeds.end(), result.trial_seeds.begin(), result.trial_seeds.end());
  }
  return out;
}

struct Outcome {
  std::vector<int> shape;
  std::vector<Integer> computed;
  std::vector<Integer> reference;
  std::vector<std::uint64_t> seeds;
  nlohmann::json details = nlohmann::json::object();
};

std::vector<GeneratorSpec> generics(const std::vector<int>& degrees) {
  std::vector<GeneratorSpec> out;
  for (int d : degrees) out.push_back(generic(d));
  return out;
}

// Seed of the comparison side when both sides come from the engine.
std::uint64_t reference_seed(const CheckSpec& spec) { return derive_seed(spec.seed, 0x7265660aull); }

Outcome engine_vs_expected(const AlgebraKind& kind, const std::vector<GeneratorSpec>& specs, const TruncatedSeries& expected,
                           const Plan& plan, const CheckSpec& spec) {
  Outcome out;
  const Side side = engine_side(kind, specs, expected.precision(), plan, spec.seed);
  out.shape = {expected.precision() + 1};
  out.computed = side.coeffs;
  out.reference = coefficients(expected);
  out.seeds = side.seeds;
  out.details["profiles"] = side.profiles;
  return out;
}

Outcome engine_vs_engine(const AlgebraKind& kind, const std::vector<GeneratorSpec>& specs,
                         const std::vector<GeneratorSpec>& reference_specs, int precision, const Plan& plan,
                         const CheckSpec& spec) {
  Outcome out;
  const Side a = engine_side(kind, specs, precision, plan, spec.seed);
  const Side b = engine_side(kind, reference_specs, precision, plan, reference_seed(spec));
  out.shape = {precision + 1};
  out.computed = a.coeffs;
  out.reference = b.coeffs;
  out.seeds = a.seeds;
  out.seeds.insert(out.seeds.end(), b.seeds.begin(), b.seeds.end());
  return out;
}

TruncatedSeries rational(std::initializer_list<std::pair<int, long>> denominator_terms, int precision) {
  IntPolynomial den;
  for (const auto& [degree, c] : denominator_terms) {
    if (den.size() <= static_cast<std::size_t>(degree)) den.resize(static_cast<std::size_t>(degree) + 1);
    den[static_cast<std::size_t>(degree)] += c;
  }
  return expand_rational({1}, den, precision);
}

// Quotient of the polynomial ring for the Lefschetz checks.
struct Quotient {
  AlgebraKind kind = AlgebraKind::commutative(1);
  std::vector<Form> forms;
  std::vector<std::size_t> dims;
  int top = 0;
};

Quotient lefschetz_quotient(const CheckSpec& spec, const PrimeField& field, const Plan& plan) {
  Quotient q;
  q.kind = AlgebraKind::commutative(spec.n);
  const auto specs = spec.gens.empty() ? generics(spec.degrees) : parse_generator_specs(spec.gens, q.kind, field);
  require(!specs.empty(), "the quotient needs generators");
  // Keep the trial with the smallest quotient.
  std::optional<std::vector<std::size_t>> best;
  for (int trial = 0; trial < plan.trials; ++trial) {
    const auto forms = realize_generators(q.kind, specs, field, derive_seed(spec.seed, static_cast<std::uint64_t>(trial)));
    std::vector<std::size_t> dims;
    if (spec.precision) {
      dims = quotient_dimensions(q.kind, forms, *spec.precision, field);
    } else {
      for (int p = 8;; p *= 2) {
        dims = quotient_dimensions(q.kind, forms, p, field);
        if (dims.back() == 0) break;
        if (p >= kDefaultPrecisionCap) throw std::invalid_argument("Lefschetz checks need an artinian quotient");
      }
    }
    if (!best || std::lexicographical_compare(dims.begin(), dims.end(), best->begin(), best->end())) {
      best = dims;
      q.forms = forms;
    }
  }
  q.dims = *best;
  q.top = static_cast<int>(q.dims.size()) - 1;
  while (q.top > 0 && q.dims[static_cast<std::size_t>(q.top)] == 0) --q.top;
  return q;
}

// Largest rank over several random multipliers of the given degree.
MultiplicationRank best_rank(const Quotient& q, const std::vector<GeneratorSpec>& multiplier_spec, int i,
                             const PrimeField& field, std::uint64_t seed, int trials) {
  MultiplicationRank best;
  for (int trial = 0; trial < trials; ++trial) {
    const auto mult = realize_generators(q.kind, multiplier_spec, field, derive_seed(seed, static_cast<std::uint64_t>(trial)));
    const auto r = multiplication_rank(q.kind, q.forms, mult.at(0), i, field);
    if (trial == 0 || r.rank > best.rank) best = r;
    if (best.maximal()) break;
  }
  return best;
}

Outcome lefschetz(const CheckSpec& spec, const Plan& plan) {
  const PrimeField field(plan.primes.front());
  const Quotient q = lefschetz_quotient(spec, field, plan);
  Outcome out;
  out.details["quotient_dims"] = q.dims;
  std::vector<int> powers;
  if (spec.check == CheckId::wlp) {
    powers = {1};
  } else {
    const int top = spec.k > 0 ? spec.k : std::max(q.top, 1);
    for (int j = 1; j <= top; ++j) powers.push_back(j);
  }
  const std::uint64_t multiplier_seed = derive_seed(spec.seed, 0x6d756c74ull);
  for (int j : powers) {
    std::vector<GeneratorSpec> mult;
    if (spec.check == CheckId::mrp) {
      mult = {generic(j)};
    } else {
      mult = {GeneratorSpec{PowerOfLinear{j}}};
    }
    for (int i = 0; i < q.top; ++i) {
      if (i + j > q.top) {
        out.computed.emplace_back(0);
        out.reference.emplace_back(0);
        continue;
      }
      const auto r = best_rank(q, mult, i, field, derive_seed(multiplier_seed, static_cast<std::uint64_t>(j)), plan.trials);
      out.computed.emplace_back(static_cast<unsigned long>(r.rank));
      out.reference.emplace_back(static_cast<unsigned long>(std::min(r.source_dim, r.target_dim)));
    }
  }
  if (spec.check == CheckId::wlp) {
    out.shape = {q.top};
  } else {
    out.shape = {static_cast<int>(powers.size()), q.top};
  }
  return out;
}

// Trial whose ideal is largest in every degree, with its lead monomials.
std::vector<std::vector<MonomialKey>> generic_leads(const CheckSpec& spec, int precision, const Plan& plan) {
  const auto kind = AlgebraKind::commutative(spec.n);
  const PrimeField field(plan.primes.front());
  std::vector<std::vector<MonomialKey>> best;
  std::size_t best_total = 0;
  for (int trial = 0; trial < plan.trials; ++trial) {
    const auto forms =
        realize_generators(kind, generics(spec.degrees), field, derive_seed(spec.seed, static_cast<std::uint64_t>(trial)));
    auto leads = initial_ideal_leads(kind, forms, precision, field);
    std::size_t total = 0;
    for (const auto& l : leads) total += l.size();
    if (trial == 0 || total > best_total) {
      best = std::move(leads);
      best_total = total;
    }
  }
  return best;
}

Outcome almost_revlex(const CheckSpec& spec, const Plan& plan) {
  const int precision = commutative_precision(spec, spec.n, spec.degrees);
  const auto leads = generic_leads(spec, precision, plan);
  const auto kind = AlgebraKind::commutative(spec.n);
  Outcome out;
  out.shape = {precision + 1};
  std::vector<Integer> quotient;
  for (int t = 0; t <= precision; ++t) {
    const auto basis = monomial_basis(kind, {t});
    const auto& members = leads[static_cast<std::size_t>(t)];
    const std::set<MonomialKey> in(members.begin(), members.end());
    std::size_t segment = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (in.count(basis[i])) segment = i + 1;
    }
    out.computed.emplace_back(static_cast<unsigned long>(members.size()));
    out.reference.emplace_back(static_cast<unsigned long>(segment));
    quotient.emplace_back(static_cast<unsigned long>(basis.size() - members.size()));
  }
  const auto result = is_almost_degrevlex(leads, spec.n);
  out.details["almost_degrevlex"] = result.holds;
  if (result.witness) {
    out.details["witness"] = {format_monomial(kind, result.witness->first), format_monomial(kind, result.witness->second)};
  }
  const auto expected = froberg_series(spec.n, DegreeSequence(spec.degrees), precision);
  const bool froberg_holds = TruncatedSeries(quotient) == expected;
  out.details["froberg_holds"] = froberg_holds;
  if (result.holds && !froberg_holds) {
    throw InvariantViolation("almost degrevlex initial ideal without the expected series for " + params_text(spec));
  }
  return out;
}

Outcome pa_ranks(const CheckSpec& spec, const Plan& plan) {
  const int precision = commutative_precision(spec, spec.n, spec.degrees);
  const auto leads = generic_leads(spec, precision, plan);
  const auto kind = AlgebraKind::commutative(spec.n);
  Outcome out;
  out.shape = {spec.n, precision};
  for (int i = 0; i < spec.n; ++i) {
    // gin(I) + (x_n, ..., x_{n-i+1}), multiplied by x_{n-i}.
    std::vector<std::vector<MonomialKey>> ideal(leads.size());
    for (std::size_t t = 0; t < leads.size(); ++t) {
      const std::set<MonomialKey> in(leads[t].begin(), leads[t].end());
      for (const auto& m : monomial_basis(kind, {static_cast<int>(t)})) {
        bool member = in.count(m) > 0;
        for (int v = spec.n - i; v < spec.n && !member; ++v) member = m[static_cast<std::size_t>(v)] > 0;
        if (member) ideal[t].push_back(m);
      }
    }
    for (int t = 0; t < precision; ++t) {
      const auto r = monomial_multiplication_rank(spec.n, ideal, spec.n - i - 1, t);
      out.computed.emplace_back(static_cast<unsigned long>(r.rank));
      out.reference.emplace_back(static_cast<unsigned long>(std::min(r.source_dim, r.target_dim)));
    }
  }
  return out;
}

std::vector<int> ideal_power_degrees(const std::vector<int>& inner, int s) {
  std::vector<int> out;
  std::vector<std::size_t> pick(static_cast<std::size_t>(s), 0);
  while (true) {
    int total = 0;
    for (auto i : pick) total += inner[i];
    out.push_back(total);
    std::size_t pos = pick.size();
    while (pos > 0 && pick[pos - 1] == inner.size() - 1) --pos;
    if (pos == 0) break;
    const std::size_t v = ++pick[pos - 1];
    for (std::size_t i = pos; i < pick.size(); ++i) pick[i] = v;
  }
  return out;
}

Integer binomial(long n, long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Outcome run_check(const CheckSpec& spec, const Plan& plan) {
  const int n = spec.n;
  switch (spec.check) {
    case CheckId::froberg:
    case CheckId::hl_degree: {
      require(n >= 1, "n must be positive");
      const auto kind = AlgebraKind::commutative(n);
      if (spec.check == CheckId::froberg) {
        const int p = commutative_precision(spec, n, spec.degrees);
        return engine_vs_expected(kind, generics(spec.degrees), froberg_series(n, DegreeSequence(spec.degrees), p), plan,
                                  spec);
      }
      require(!spec.degrees.empty(), "hl-degree needs degrees");
      require(*std::min_element(spec.degrees.begin(), spec.degrees.end()) >= 2, "hl-degree needs degrees >= 2");
      const int t = *std::min_element(spec.degrees.begin(), spec.degrees.end()) + 1;
      auto full = engine_vs_expected(kind, generics(spec.degrees), froberg_series(n, DegreeSequence(spec.degrees), t), plan,
                                     spec);
      Outcome out;
      out.shape = {1};
      out.computed = {full.computed.back()};
      out.reference = {full.reference.back()};
      out.seeds = full.seeds;
      out.details["degree"] = t;
      out.details["field"] = "F_" + std::to_string(plan.primes.front());
      return out;
    }
    case CheckId::stanley_subst:
    case CheckId::poschar: {
      std::vector<int> degrees = spec.degrees;
      if (spec.check == CheckId::poschar) degrees = repeat(spec.d, n + 1);
      require(static_cast<int>(degrees.size()) >= n, "stanley-subst needs at least n degrees");
      std::vector<GeneratorSpec> specs;
      for (int i = 0; i < n; ++i) specs.push_back({VariablePower{degrees[static_cast<std::size_t>(i)], i}});
      for (std::size_t i = static_cast<std::size_t>(n); i < degrees.size(); ++i) specs.push_back(generic(degrees[i]));
      const int p = commutative_precision(spec, n, degrees);
      return engine_vs_expected(AlgebraKind::commutative(n), specs, froberg_series(n, DegreeSequence(degrees), p), plan,
                                spec);
    }
    case CheckId::powers: {
      std::vector<GeneratorSpec> specs;
      std::vector<int> degrees;
      for (int d : spec.degrees) {
        specs.push_back({PowerOfGeneric{d, spec.k}});
        degrees.push_back(d * spec.k);
      }
      const int p = commutative_precision(spec, n, degrees);
      return engine_vs_expected(AlgebraKind::commutative(n), specs, froberg_series(n, DegreeSequence(degrees), p), plan,
                                spec);
    }
    case CheckId::products:
    case CheckId::linpower_products: {
      require(!spec.degrees.empty() && spec.r >= 1, "products need factor degrees and r >= 1");
      GeneratorSpec one = spec.check == CheckId::products ? GeneratorSpec{ProductOfGenerics{spec.degrees}}
                                                           : GeneratorSpec{ProductOfLinearPowers{spec.degrees}};
      const std::vector<GeneratorSpec> specs(static_cast<std::size_t>(spec.r), one);
      const auto degrees = repeat(sum_of(spec.degrees), spec.r);
      const int p = commutative_precision(spec, n, degrees);
      return engine_vs_expected(AlgebraKind::commutative(n), specs, froberg_series(n, DegreeSequence(degrees), p), plan,
                                spec);
    }
    case CheckId::ideal_power: {
      require(!spec.degrees.empty() && spec.s >= 1, "ideal-power needs inner degrees and s >= 1");
      const std::vector<GeneratorSpec> specs{{IdealPower{spec.s, generics(spec.degrees)}}};
      const auto degrees = ideal_power_degrees(spec.degrees, spec.s);
      const int p = commutative_precision(spec, n, degrees);
      auto out = engine_vs_expected(AlgebraKind::commutative(n), specs, froberg_series(n, DegreeSequence(degrees), p),
                                    plan, spec);
      out.details["generator_count"] = degrees.size();
      return out;
    }
    case CheckId::linpowers_iarrobino: {
      require(spec.r >= 1 && spec.d >= 1, "linpowers-iarrobino needs d and r");
      const auto degrees = repeat(spec.d, spec.r);
      const int p = commutative_precision(spec, n, degrees);
      const std::vector<GeneratorSpec> powers(static_cast<std::size_t>(spec.r), GeneratorSpec{PowerOfLinear{spec.d}});
      return engine_vs_engine(AlgebraKind::commutative(n), powers, generics(degrees), p, plan, spec);
    }
    case CheckId::mixed_linpowers: {
      std::vector<GeneratorSpec> specs;
      std::vector<int> degrees;
      for (int d : spec.linear_degrees) {
        specs.push_back({PowerOfLinear{d}});
        degrees.push_back(d);
      }
      for (int d : spec.degrees) {
        specs.push_back(generic(d));
        degrees.push_back(d);
      }
      const int p = commutative_precision(spec, n, degrees);
      return engine_vs_engine(AlgebraKind::commutative(n), specs, generics(degrees), p, plan, spec);
    }
    case CheckId::odd_sums: {
      require(n >= 1 && n <= 12, "odd-sums supports 1 <= n <= 12");
      const auto kind = AlgebraKind::commutative(n);
      const auto specs = parse_generator_specs("oddsum:" + std::to_string(spec.d), kind, PrimeField(plan.primes.front()));
      const auto degrees = repeat(spec.d, static_cast<int>(specs.size()));
      const int p = commutative_precision(spec, n, degrees);
      auto out = engine_vs_engine(kind, specs, generics(degrees), p, plan, spec);
      out.details["forms"] = specs.size();
      return out;
    }
    case CheckId::signed_sums: {
      const auto kind = AlgebraKind::commutative(4);
      const auto specs = parse_generator_specs("signedsum:" + std::to_string(spec.d), kind, PrimeField(plan.primes.front()));
      const auto degrees = repeat(spec.d, 8);
      const int target = 2 * (spec.d - 1);
      const int p = std::max(commutative_precision(spec, 4, degrees), target + 1);
      auto out = engine_vs_engine(kind, specs, generics(degrees), p, plan, spec);
      std::vector<Integer> difference(out.computed.size());
      std::vector<Integer> asked(out.computed.size());
      for (std::size_t t = 0; t < difference.size(); ++t) difference[t] = out.computed[t] - out.reference[t];
      asked[static_cast<std::size_t>(target)] = binomial(spec.d, 2);
      nlohmann::json diff = nlohmann::json::array();
      for (const auto& v : difference) diff.push_back(integer_to_json(v));
      out.details["difference"] = diff;
      out.details["difference_is_binomial"] = difference == asked;
      return out;
    }
    case CheckId::wlp:
    case CheckId::slp:
    case CheckId::mrp:
      return lefschetz(spec, plan);
    case CheckId::almost_revlex:
      return almost_revlex(spec, plan);
    case CheckId::pa_ranks:
      return pa_ranks(spec, plan);
    case CheckId::tensor_generic: {
      const int p = spec.precision.value_or(kTensorPrecision);
      return engine_vs_expected(AlgebraKind::tensor(n), generics(spec.degrees),
                                anick_series(n, DegreeSequence(spec.degrees), p), plan, spec);
    }
    case CheckId::tensor_fl_family: {
      const int p = spec.precision.value_or(spec.q ? *spec.q + 6 : kTensorPrecision);
      const auto kind = AlgebraKind::tensor(4);
      const PrimeField field(plan.primes.front());
      std::vector<GeneratorSpec> specs;
      for (auto& f : froberg_lofwall_relations(field, spec.q)) specs.push_back({Explicit{f, format_form(kind, field, f)}});
      const auto expected = spec.q ? rational({{0, 1}, {1, -4}, {2, 3}, {*spec.q + 3, -1}}, p)
                                   : rational({{0, 1}, {1, -4}, {2, 3}}, p);
      Plan single = plan;
      single.trials = 1;
      auto out = engine_vs_expected(kind, specs, expected, single, spec);
      out.details["relations"] = describe(specs);
      return out;
    }
    case CheckId::lie_quadratic: {
      require(spec.r >= 1, "lie-quadratic needs r >= 1");
      const int p = spec.precision.value_or(kTensorPrecision);
      const std::vector<GeneratorSpec> specs(static_cast<std::size_t>(spec.r), GeneratorSpec{LieQuadratic{}});
      return engine_vs_expected(AlgebraKind::tensor(n), specs, anick_series(n, DegreeSequence(repeat(2, spec.r)), p), plan,
                                spec);
    }
    case CheckId::lie_commutator_example: {
      require(n >= 2, "the commutator example needs n >= 2");
      const int p = spec.precision.value_or(kTensorPrecision);
      std::vector<GeneratorSpec> specs;
      for (int j = 1; j < n; ++j) specs.push_back({Commutator{0, j}});
      Plan single = plan;
      single.trials = 1;
      return engine_vs_expected(AlgebraKind::tensor(n), specs, rational({{0, 1}, {1, -n}, {2, n - 1}}, p), single, spec);
    }
    case CheckId::exterior_generic: {
      const int p = spec.precision.value_or(n);
      return engine_vs_expected(AlgebraKind::exterior(n), generics(spec.degrees),
                                exterior_expected_series(n, DegreeSequence(spec.degrees), p), plan, spec);
    }
    case CheckId::exterior_paths: {
      const int p = spec.precision.value_or(n);
      return engine_vs_expected(AlgebraKind::exterior(n), {generic(2), generic(2)}, paths_conjecture_series(n, p), plan,
                                spec);
    }
    case CheckId::exterior_vs_squares: {
      require(spec.k >= 1, "exterior-vs-squares needs k >= 1");
      const int p = spec.precision.value_or(n);
      std::vector<GeneratorSpec> squares;
      for (int i = 0; i < n; ++i) squares.push_back({VariablePower{2, i}});
      for (int i = 0; i < spec.k; ++i) squares.push_back({PowerOfLinear{2}});
      Outcome out;
      const Side a = engine_side(AlgebraKind::commutative(n), squares, p, plan, spec.seed);
      const Side b = engine_side(AlgebraKind::exterior(n), generics(repeat(2, spec.k)), p, plan, reference_seed(spec));
      out.shape = {p + 1};
      out.computed = a.coeffs;
      out.reference = b.coeffs;
      out.seeds = a.seeds;
      out.seeds.insert(out.seeds.end(), b.seeds.begin(), b.seeds.end());
      return out;
    }
    case CheckId::bigraded:
    case CheckId::multi_p1: {
      require(!spec.multidegrees.empty(), "multigraded checks need multidegrees");
      const bool bi = spec.check == CheckId::bigraded;
      const auto kind = bi ? AlgebraKind::bigraded(spec.m, n) : AlgebraKind::multigraded(repeat(2, n));
      const int arity = kind.grading_rank();
      std::vector<int> precisions(static_cast<std::size_t>(arity), 0);
      std::vector<GeneratorSpec> specs;
      for (const auto& g : spec.multidegrees) {
        require(static_cast<int>(g.size()) == arity, "multidegree has the wrong length");
        specs.push_back(generic(g));
        for (int a = 0; a < arity; ++a) {
          precisions[static_cast<std::size_t>(a)] = std::max(precisions[static_cast<std::size_t>(a)], g[static_cast<std::size_t>(a)]);
        }
      }
      for (auto& p : precisions) p = spec.precision.value_or(p + (bi ? 4 : 2));
      const Side side = multigraded_side(kind, specs, precisions, plan, spec.seed);
      const auto expected = multigraded_froberg_series(kind.groups(), spec.multidegrees, precisions, spec.strict);
      Outcome out;
      for (int p : precisions) out.shape.push_back(p + 1);
      out.computed = side.coeffs;
      out.reference.assign(expected.flat().begin(), expected.flat().end());
      out.seeds = side.seeds;
      out.details["strict_truncation"] = spec.strict;
      return out;
    }
  }
  throw std::invalid_argument("unknown check");
}

bool is_oneto_cell(int d, int n, int r) {
  static const std::set<std::tuple<int, int, int>> cells{{2, 5, 7}, {3, 3, 5}, {3, 5, 7}, {3, 4, 9}, {3, 5, 14}};
  return cells.count({d, n, r}) > 0;
}

bool all_equal_to(const std::vector<int>& v, int value) {
  return std::all_of(v.begin(), v.end(), [&](int x) { return x == value; });
}

std::string join(const std::vector<int>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

// Keys each check reads (beyond prime, seed, trials, precision).
std::vector<std::string_view> used_keys(CheckId id) {
  switch (id) {
    case CheckId::froberg:
    case CheckId::hl_degree:
    case CheckId::almost_revlex:
    case CheckId::pa_ranks:
    case CheckId::tensor_generic:
    case CheckId::exterior_generic:
    case CheckId::stanley_subst:
      return {"n", "degrees"};
    case CheckId::powers: return {"n", "degrees", "k"};
    case CheckId::products:
    case CheckId::linpower_products: return {"n", "r", "degrees"};
    case CheckId::ideal_power: return {"n", "degrees", "s"};
    case CheckId::linpowers_iarrobino: return {"n", "d", "r"};
    case CheckId::mixed_linpowers: return {"n", "linear_degrees", "degrees"};
    case CheckId::odd_sums: return {"n", "d"};
    case CheckId::signed_sums: return {"d"};
    case CheckId::wlp: return {"n", "degrees", "gens"};
    case CheckId::slp:
    case CheckId::mrp: return {"n", "degrees", "gens", "k"};
    case CheckId::tensor_fl_family: return {"q"};
    case CheckId::lie_quadratic: return {"n", "r"};
    case CheckId::lie_commutator_example:
    case CheckId::exterior_paths: return {"n"};
    case CheckId::exterior_vs_squares: return {"n", "k"};
    case CheckId::bigraded: return {"m", "n", "multidegrees", "strict"};
    case CheckId::multi_p1: return {"n", "multidegrees", "strict"};
    case CheckId::poschar: return {"n", "d"};
  }
  return {};
}

}  // namespace

const std::vector<CheckId>& all_checks() {
  static const std::vector<CheckId> ids = [] {
    std::vector<CheckId> v;
    for (const auto& c : kNames) v.push_back(c.id);
    return v;
  }();
  return ids;
}

std::string_view to_string(CheckId id) {
  for (const auto& c : kNames) {
    if (c.id == id) return c.name;
  }
  return "?";
}

std::optional<CheckId> parse_check_id(std::string_view name) {
  const auto key = normalize_name(name);
  for (const auto& c : kNames) {
    if (c.name == key) return c.id;
  }
  return std::nullopt;
}

std::string_view to_string(Expectation e) {
  switch (e) {
    case Expectation::must_match: return "must_match";
    case Expectation::must_differ: return "must_differ";
    case Expectation::report: return "report";
  }
  return "?";
}

std::optional<Expectation> parse_expectation(std::string_view text) {
  const auto key = normalize_name(text);
  if (key == "match" || key == "must-match") return Expectation::must_match;
  if (key == "differ" || key == "must-differ") return Expectation::must_differ;
  if (key == "report") return Expectation::report;
  return std::nullopt;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::match: return "match";
    case Verdict::mismatch: return "mismatch";
    case Verdict::incomparable: return "incomparable";
  }
  return "?";
}

Expectation default_expectation(const CheckSpec& spec) {
  const int n = spec.n;
  const bool large = spec.prime >= kLargePrime;
  const int r = static_cast<int>(spec.degrees.size());
  switch (spec.check) {
    case CheckId::froberg:
      return large && (r <= n || n <= 3 || r == n + 1) ? Expectation::must_match : Expectation::report;
    case CheckId::hl_degree:
      return large ? Expectation::must_match : Expectation::report;
    case CheckId::stanley_subst: {
      if (!large || r > n + 1 || r < n) return Expectation::report;
      int socle = 0;
      for (int i = 0; i < n; ++i) socle += spec.degrees[static_cast<std::size_t>(i)] - 1;
      return static_cast<int>(spec.prime) > socle ? Expectation::must_match : Expectation::report;
    }
    case CheckId::poschar: {
      const long p = spec.prime;
      const long d = spec.d;
      return p >= d && d >= 2 && d * (p - 1) + d * p <= static_cast<long>(n) * (d - 1) ? Expectation::must_differ
                                                                                      : Expectation::report;
    }
    case CheckId::linpowers_iarrobino:
      return large && is_oneto_cell(spec.d, n, spec.r) ? Expectation::must_differ : Expectation::report;
    case CheckId::odd_sums:
      if (!large) return Expectation::report;
      if (n <= 4) return Expectation::must_match;
      return n == 7 && spec.d >= 3 ? Expectation::must_differ : Expectation::report;
    case CheckId::wlp:
    case CheckId::slp:
    case CheckId::mrp: {
      if (!large) return Expectation::report;
      if (n <= 2) return Expectation::must_match;
      if (!spec.gens.empty()) return Expectation::report;
      if (spec.check == CheckId::wlp && n <= 4) return Expectation::must_match;
      if (spec.check == CheckId::mrp && n <= 3) return Expectation::must_match;
      return Expectation::report;
    }
    case CheckId::tensor_generic:
      return large && all_equal_to(spec.degrees, 2) && 4 * r <= n * n ? Expectation::must_match : Expectation::report;
    case CheckId::tensor_fl_family:
    case CheckId::lie_commutator_example:
      return Expectation::must_match;
    case CheckId::exterior_generic: {
      if (!large) return Expectation::report;
      if (r == 1 && spec.degrees[0] % 2 == 0) return Expectation::must_match;
      if (r == 1 && spec.degrees[0] == n - 3 && n - 3 >= 1) return Expectation::must_match;
      if (r == 1 && spec.degrees[0] % 2 == 1 && spec.degrees[0] == n - 2) return Expectation::must_differ;
      if (r == 1 && spec.degrees[0] == 3 && n == 9) return Expectation::must_differ;
      if (n == 5 && r == 2 && all_equal_to(spec.degrees, 2)) return Expectation::must_differ;
      return Expectation::report;
    }
    case CheckId::exterior_vs_squares:
      return large && spec.k == 3 && n == 11 ? Expectation::must_differ : Expectation::report;
    case CheckId::bigraded: {
      if (!large) return Expectation::report;
      const auto& g = spec.multidegrees;
      const int count = static_cast<int>(g.size());
      if (spec.m == 1 && n == 1 && count <= 4 && count >= 1) {
        const bool uniform = std::all_of(g.begin(), g.end(), [&](const auto& x) { return x == g[0]; }) &&
                             g[0].size() == 2 && g[0][0] <= 3 && g[0][1] <= 3;
        const bool total_three =
            std::all_of(g.begin(), g.end(), [](const auto& x) { return x.size() == 2 && x[0] + x[1] == 3; });
        if (uniform || total_three) return Expectation::must_match;
      }
      if (spec.m == 1 && n == 2 && count == 3 &&
          std::all_of(g.begin(), g.end(), [](const auto& x) { return x == std::vector<int>{2, 1}; })) {
        return Expectation::must_differ;
      }
      return Expectation::report;
    }
    default:
      return Expectation::report;
  }
}

nlohmann::json params_to_json(const CheckSpec& spec) {
  nlohmann::json j = nlohmann::json::object();
  for (auto key : used_keys(spec.check)) {
    if (key == "n") j["n"] = spec.n;
    if (key == "m") j["m"] = spec.m;
    if (key == "degrees") j["degrees"] = spec.degrees;
    if (key == "linear_degrees") j["linear_degrees"] = spec.linear_degrees;
    if (key == "multidegrees") j["multidegrees"] = spec.multidegrees;
    if (key == "d") j["d"] = spec.d;
    if (key == "r") j["r"] = spec.r;
    if (key == "k") j["k"] = spec.k;
    if (key == "s") j["s"] = spec.s;
    if (key == "q") j["q"] = spec.q ? nlohmann::json(*spec.q) : nlohmann::json("inf");
    if (key == "gens" && !spec.gens.empty()) j["gens"] = spec.gens;
    if (key == "strict") j["strict"] = spec.strict;
  }
  j["prime"] = spec.prime;
  j["seed"] = spec.seed;
  j["trials"] = spec.trials;
  if (spec.precision) j["precision"] = *spec.precision;
  if (spec.requested) j["requested_expectation"] = std::string(to_string(*spec.requested));
  return j;
}

CheckSpec spec_from_json(const nlohmann::json& j) {
  CheckSpec spec;
  const auto id = parse_check_id(j.at("check").get<std::string>());
  if (!id) throw std::invalid_argument("unknown check " + j.at("check").dump());
  spec.check = *id;
  const auto& p = j.at("params");
  if (p.contains("n")) spec.n = p["n"];
  if (p.contains("m")) spec.m = p["m"];
  if (p.contains("degrees")) spec.degrees = p["degrees"].get<std::vector<int>>();
  if (p.contains("linear_degrees")) spec.linear_degrees = p["linear_degrees"].get<std::vector<int>>();
  if (p.contains("multidegrees")) spec.multidegrees = p["multidegrees"].get<std::vector<std::vector<int>>>();
  if (p.contains("d")) spec.d = p["d"];
  if (p.contains("r")) spec.r = p["r"];
  if (p.contains("k")) spec.k = p["k"];
  if (p.contains("s")) spec.s = p["s"];
  if (p.contains("q") && p["q"].is_number()) spec.q = p["q"].get<int>();
  if (p.contains("gens")) spec.gens = p["gens"];
  if (p.contains("strict")) spec.strict = p["strict"];
  if (p.contains("prime")) spec.prime = p["prime"];
  if (p.contains("seed")) spec.seed = p["seed"];
  if (p.contains("trials")) spec.trials = p["trials"];
  if (p.contains("precision")) spec.precision = p["precision"].get<int>();
  if (p.contains("requested_expectation")) spec.requested = parse_expectation(p["requested_expectation"].get<std::string>());
  return spec;
}

std::string params_text(const CheckSpec& spec) {
  std::string out;
  auto add = [&](const std::string& item) {
    if (!out.empty()) out += ' ';
    out += item;
  };
  for (auto key : used_keys(spec.check)) {
    if (key == "n") add("n=" + std::to_string(spec.n));
    if (key == "m") add("m=" + std::to_string(spec.m));
    if (key == "degrees") add("degrees=" + join(spec.degrees));
    if (key == "linear_degrees") add("linear_degrees=" + join(spec.linear_degrees));
    if (key == "multidegrees") {
      std::string s;
      for (const auto& g : spec.multidegrees) s += (s.empty() ? "(" : ";(") + join(g) + ")";
      add("multidegrees=" + s);
    }
    if (key == "d") add("d=" + std::to_string(spec.d));
    if (key == "r") add("r=" + std::to_string(spec.r));
    if (key == "k") add("k=" + std::to_string(spec.k));
    if (key == "s") add("s=" + std::to_string(spec.s));
    if (key == "q") add("q=" + (spec.q ? std::to_string(*spec.q) : std::string("inf")));
    if (key == "gens" && !spec.gens.empty()) add("gens=" + spec.gens);
    if (key == "strict" && !spec.strict) add("strict=false");
  }
  if (spec.prime != kDefaultPrime) add("p=" + std::to_string(spec.prime));
  return out;
}

namespace {

struct Judgement {
  Verdict verdict = Verdict::match;
  CoefficientOrder order = CoefficientOrder::equal;
  std::optional<std::vector<int>> first_divergence;
  std::optional<bool> expectation_met;
};

std::vector<int> unflatten(const std::vector<int>& shape, std::size_t position) {
  std::vector<int> index(shape.size());
  for (std::size_t a = shape.size(); a-- > 0;) {
    index[a] = static_cast<int>(position % static_cast<std::size_t>(shape[a]));
    position /= static_cast<std::size_t>(shape[a]);
  }
  return index;
}

Judgement judge(const std::vector<int>& shape, const std::vector<Integer>& computed, const std::vector<Integer>& reference,
                Expectation expectation) {
  Judgement out;
  const auto cmp = compare_sequences(computed, reference);
  out.order = cmp.coefficientwise;
  out.verdict = cmp.coefficientwise == CoefficientOrder::equal          ? Verdict::match
                : cmp.coefficientwise == CoefficientOrder::incomparable ? Verdict::incomparable
                                                                        : Verdict::mismatch;
  if (cmp.first_divergence) out.first_divergence = unflatten(shape, static_cast<std::size_t>(*cmp.first_divergence));
  if (expectation == Expectation::must_match) out.expectation_met = out.verdict == Verdict::match;
  if (expectation == Expectation::must_differ) out.expectation_met = out.verdict != Verdict::match;
  return out;
}

nlohmann::json integers_to_json(const std::vector<Integer>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(integer_to_json(x));
  return a;
}

std::vector<Integer> integers_from_json(const nlohmann::json& a) {
  std::vector<Integer> out;
  for (const auto& x : a) out.push_back(integer_from_json(x));
  return out;
}

}  // namespace

VerificationReport check(const CheckSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  if (spec.trials < 1) throw std::invalid_argument("trials must be positive");
  VerificationReport report;
  report.spec = spec;
  report.expectation = default_expectation(spec);
  Plan plan;
  plan.primes = {spec.prime};
  plan.trials = spec.trials;
  if (report.expectation == Expectation::must_differ) {
    plan.trials = std::max(plan.trials, kDifferTrials);
    if (spec.check != CheckId::poschar) plan.primes.push_back(spec.prime == kSecondPrime ? kDefaultPrime : kSecondPrime);
  }
  Outcome outcome = run_check(spec, plan);
  report.shape = outcome.shape;
  report.computed = std::move(outcome.computed);
  report.reference = std::move(outcome.reference);
  report.primes = plan.primes;
  report.trial_seeds = std::move(outcome.seeds);
  report.details = std::move(outcome.details);
  report.details["trials_per_prime"] = plan.trials;
  const auto j = judge(report.shape, report.computed, report.reference, report.expectation);
  report.verdict = j.verdict;
  report.order = j.order;
  report.first_divergence = j.first_divergence;
  report.expectation_met = j.expectation_met;
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

nlohmann::json to_json(const VerificationReport& report, bool with_timing) {
  nlohmann::json j;
  j["schema"] = 1;
  j["check"] = std::string(to_string(report.spec.check));
  j["params"] = params_to_json(report.spec);
  j["expectation"] = std::string(to_string(report.expectation));
  j["empirical"] = true;
  j["shape"] = report.shape;
  j["computed"] = integers_to_json(report.computed);
  j["reference"] = integers_to_json(report.reference);
  j["verdict"] = std::string(to_string(report.verdict));
  j["order"] = std::string(to_string(report.order));
  j["first_divergence"] = report.first_divergence ? nlohmann::json(*report.first_divergence) : nlohmann::json(nullptr);
  j["expectation_met"] = report.expectation_met ? nlohmann::json(*report.expectation_met) : nlohmann::json(nullptr);
  j["primes"] = report.primes;
  j["trial_seeds"] = report.trial_seeds;
  j["details"] = report.details;
  if (with_timing) j["wall_time_s"] = report.wall_time_s;
  return j;
}

RecheckResult recheck(const nlohmann::json& report) {
  try {
    if (report.value("schema", 0) != 1) return {false, "unsupported report schema"};
    const auto shape = report.at("shape").get<std::vector<int>>();
    const auto computed = integers_from_json(report.at("computed"));
    const auto reference = integers_from_json(report.at("reference"));
    std::size_t size = 1;
    for (int s : shape) size *= static_cast<std::size_t>(s);
    if (computed.size() != size || reference.size() != size) return {false, "series do not match the shape"};
    const auto expectation = parse_expectation(report.at("expectation").get<std::string>());
    if (!expectation) return {false, "unknown expectation"};
    const auto j = judge(shape, computed, reference, *expectation);
    if (report.at("verdict").get<std::string>() != to_string(j.verdict)) return {false, "verdict differs"};
    if (report.at("order").get<std::string>() != to_string(j.order)) return {false, "order differs"};
    const auto& fd = report.at("first_divergence");
    if (fd.is_null() != !j.first_divergence || (!fd.is_null() && fd.get<std::vector<int>>() != *j.first_divergence)) {
      return {false, "first divergence differs"};
    }
    const auto& met = report.at("expectation_met");
    if (met.is_null() != !j.expectation_met || (!met.is_null() && met.get<bool>() != *j.expectation_met)) {
      return {false, "expectation outcome differs"};
    }
    return {true, "verdict " + std::string(to_string(j.verdict)) + " reproduced"};
  } catch (const std::exception& e) {
    return {false, std::string("malformed report: ") + e.what()};
  }
}

VerificationReport first_nontrivial_check(int n, const std::vector<int>& degrees, std::uint32_t prime,
                                          std::uint64_t seed) {
  CheckSpec spec;
  spec.check = CheckId::hl_degree;
  spec.n = n;
  spec.degrees = degrees;
  spec.prime = prime;
  spec.seed = seed;
  return check(spec);
}

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HF_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  return hw;
}

GridResult run_grid(const std::vector<CheckSpec>& cells, unsigned threads) {
  GridResult result;
  result.cells.resize(cells.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      GridCell& cell = result.cells[i];
      cell.spec = cells[i];
      try {
        cell.report = check(cells[i]);
      } catch (const ResourceError& e) {
        cell.error = e.what();
        cell.error_kind = "resource";
      } catch (const InvariantViolation& e) {
        cell.error = e.what();
        cell.error_kind = "invariant";
      } catch (const std::exception& e) {
        cell.error = e.what();
        cell.error_kind = "invalid";
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads ? threads : worker_count(),
                                                         static_cast<unsigned>(std::max<std::size_t>(cells.size(), 1))));
  if (count == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  auto& s = result.summary;
  s.cells = cells.size();
  for (const auto& cell : result.cells) {
    if (!cell.report) {
      ++s.errors;
      continue;
    }
    switch (cell.report->verdict) {
      case Verdict::match: ++s.matches; break;
      case Verdict::mismatch: ++s.mismatches; break;
      case Verdict::incomparable: ++s.incomparable; break;
    }
    if (!cell.report->expectation_met) {
      ++s.report_only;
    } else if (*cell.report->expectation_met) {
      ++s.expectations_met;
    } else {
      ++s.expectations_violated;
    }
  }
  return result;
}

nlohmann::json to_json(const GridSummary& s) {
  return {{"schema", 1},
          {"cells", s.cells},
          {"matches", s.matches},
          {"mismatches", s.mismatches},
          {"incomparable", s.incomparable},
          {"errors", s.errors},
          {"expectations_met", s.expectations_met},
          {"expectations_violated", s.expectations_violated},
          {"report_only", s.report_only}};
}

std::string summary_table(const GridSummary& s) {
  std::ostringstream out;
  const std::pair<const char*, std::size_t> rows[] = {
      {"cells", s.cells},
      {"matches", s.matches},
      {"mismatches", s.mismatches},
      {"incomparable", s.incomparable},
      {"errors", s.errors},
      {"expectations met", s.expectations_met},
      {"expectations violated", s.expectations_violated},
      {"report only", s.report_only},
  };
  for (const auto& [name, value] : rows) {
    out << name;
    for (std::size_t i = std::string_view(name).size(); i < 24; ++i) out << ' ';
    out << value << '\n';
  }
  return out.str();
}

std::string cells_table(const GridResult& result) {
  std::ostringstream out;
  for (std::size_t i = 0; i < result.cells.size(); ++i) {
    const auto& cell = result.cells[i];
    out << i << '\t' << to_string(cell.spec.check) << '\t' << params_text(cell.spec) << '\t';
    if (!cell.report) {
      out << "error(" << cell.error_kind << ")\t" << *cell.error << '\n';
      continue;
    }
    const auto& r = *cell.report;
    out << to_string(r.verdict);
    if (r.first_divergence) out << " at " << join(*r.first_divergence);
    out << '\t' << to_string(r.expectation);
    if (r.expectation_met) out << (*r.expectation_met ? " ok" : " VIOLATED");
    out << '\n';
  }
  return out.str();
}

// --- grid parsing ---------------------------------------------------------------

namespace {

std::string trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trimmed(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

std::string where(int line) { return line > 0 ? "line " + std::to_string(line) + ": " : std::string(); }

long to_long(const std::string& s, int line) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) {
    throw std::invalid_argument(where(line) + "expected an integer, got '" + s + "'");
  }
  return v;
}

// "2, 4..6" -> 2,4,5,6
std::vector<long> int_list(const std::string& value, int line) {
  std::vector<long> out;
  for (const auto& item : split(value, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_long(item, line));
    } else {
      const long a = to_long(trimmed(item.substr(0, dots)), line);
      const long b = to_long(trimmed(item.substr(dots + 2)), line);
      if (b < a) throw std::invalid_argument(where(line) + "empty range " + item);
      for (long v = a; v <= b; ++v) out.push_back(v);
    }
  }
  return out;
}

// "2,2,2; 3x4" -> {2,2,2}, {3,3,3,3}; "()" is the empty sequence.
std::vector<std::vector<int>> sequence_list(const std::string& value, int line) {
  std::vector<std::vector<int>> out;
  for (const auto& alt : split(value, ';')) {
    std::vector<int> seq;
    if (alt != "()" && !alt.empty()) {
      for (const auto& item : split(alt, ',')) {
        const auto x = item.find('x');
        if (x == std::string::npos) {
          seq.push_back(static_cast<int>(to_long(item, line)));
        } else {
          const int d = static_cast<int>(to_long(trimmed(item.substr(0, x)), line));
          const long count = to_long(trimmed(item.substr(x + 1)), line);
          for (long i = 0; i < count; ++i) seq.push_back(d);
        }
      }
    }
    out.push_back(seq);
  }
  return out;
}

// "(2,1);(2,1) | (1,1)" -> two alternatives.
std::vector<std::vector<std::vector<int>>> multidegree_list(const std::string& value, int line) {
  std::vector<std::vector<std::vector<int>>> out;
  for (const auto& alt : split(value, '|')) {
    std::vector<std::vector<int>> gens;
    for (const auto& g : split(alt, ';')) {
      if (g.size() < 2 || g.front() != '(' || g.back() != ')') {
        throw std::invalid_argument(where(line) + "multidegrees look like (2,1);(1,1)");
      }
      std::vector<int> md;
      for (const auto& x : split(std::string_view(g).substr(1, g.size() - 2), ',')) {
        md.push_back(static_cast<int>(to_long(x, line)));
      }
      gens.push_back(md);
    }
    out.push_back(gens);
  }
  return out;
}

void multisets(const std::vector<long>& values, long size, std::size_t from, std::vector<int>& current,
               std::vector<std::vector<int>>& out) {
  if (static_cast<long>(current.size()) == size) {
    out.push_back(current);
    return;
  }
  for (std::size_t i = from; i < values.size(); ++i) {
    current.push_back(static_cast<int>(values[i]));
    multisets(values, size, i, current, out);
    current.pop_back();
  }
}

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

using Setter = std::function<void(CheckSpec&)>;

std::vector<Setter> expand_entry(const Entry& e, const std::map<std::string, Entry>& all) {
  std::vector<Setter> out;
  const auto& key = e.key;
  const int line = e.line;
  auto ints = [&](auto apply) {
    for (long v : int_list(e.value, line)) out.push_back([=](CheckSpec& s) { apply(s, v); });
  };
  if (key == "check") {
    for (const auto& name : split(e.value, ',')) {
      const auto id = parse_check_id(name);
      if (!id) throw std::invalid_argument(where(line) + "unknown check '" + name + "'");
      out.push_back([id = *id](CheckSpec& s) { s.check = id; });
    }
  } else if (key == "n") {
    ints([](CheckSpec& s, long v) { s.n = static_cast<int>(v); });
  } else if (key == "m") {
    ints([](CheckSpec& s, long v) { s.m = static_cast<int>(v); });
  } else if (key == "d") {
    ints([](CheckSpec& s, long v) { s.d = static_cast<int>(v); });
  } else if (key == "r") {
    ints([](CheckSpec& s, long v) { s.r = static_cast<int>(v); });
  } else if (key == "k") {
    ints([](CheckSpec& s, long v) { s.k = static_cast<int>(v); });
  } else if (key == "s") {
    ints([](CheckSpec& s, long v) { s.s = static_cast<int>(v); });
  } else if (key == "trials") {
    ints([](CheckSpec& s, long v) { s.trials = static_cast<int>(v); });
  } else if (key == "precision") {
    ints([](CheckSpec& s, long v) { s.precision = static_cast<int>(v); });
  } else if (key == "prime") {
    ints([](CheckSpec& s, long v) { s.prime = static_cast<std::uint32_t>(v); });
  } else if (key == "q") {
    for (const auto& item : split(e.value, ',')) {
      if (item == "inf") {
        out.push_back([](CheckSpec& s) { s.q.reset(); });
      } else {
        for (long v : int_list(item, line)) out.push_back([=](CheckSpec& s) { s.q = static_cast<int>(v); });
      }
    }
  } else if (key == "strict") {
    for (const auto& item : split(e.value, ',')) {
      if (item != "true" && item != "false") {
        throw std::invalid_argument(where(line) + "strict is true or false");
      }
      const bool v = item == "true";
      out.push_back([=](CheckSpec& s) { s.strict = v; });
    }
  } else if (key == "expect") {
    for (const auto& item : split(e.value, ',')) {
      const auto ex = parse_expectation(item);
      if (!ex) throw std::invalid_argument(where(line) + "unknown expectation '" + item + "'");
      out.push_back([ex = *ex](CheckSpec& s) { s.requested = ex; });
    }
  } else if (key == "gens") {
    for (const auto& item : split(e.value, ';')) out.push_back([=](CheckSpec& s) { s.gens = item; });
  } else if (key == "degrees" || key == "linear_degrees") {
    const bool linear = key == "linear_degrees";
    for (auto seq : sequence_list(e.value, line)) {
      out.push_back([=](CheckSpec& s) { (linear ? s.linear_degrees : s.degrees) = seq; });
    }
  } else if (key == "degree_values") {
    const auto sizes = all.find("degree_sizes");
    if (sizes == all.end()) throw std::invalid_argument(where(line) + "degree_values needs degree_sizes");
    auto values = int_list(e.value, line);
    std::sort(values.rbegin(), values.rend());
    std::vector<std::vector<int>> seqs;
    for (long size : int_list(sizes->second.value, sizes->second.line)) {
      std::vector<int> current;
      multisets(values, size, 0, current, seqs);
    }
    for (auto seq : seqs) out.push_back([=](CheckSpec& s) { s.degrees = seq; });
  } else if (key == "multidegrees") {
    for (auto md : multidegree_list(e.value, line)) out.push_back([=](CheckSpec& s) { s.multidegrees = md; });
  } else {
    throw std::invalid_argument(where(line) + "unknown key '" + key + "'");
  }
  return out;
}

std::vector<CheckSpec> expand_section(const std::vector<Entry>& entries) {
  std::map<std::string, Entry> latest;
  for (const auto& e : entries) latest[e.key] = e;
  if (!latest.count("check")) throw std::invalid_argument("grid section without a check");
  std::uint64_t seed = 0;
  if (auto it = latest.find("seed"); it != latest.end()) {
    seed = static_cast<std::uint64_t>(to_long(it->second.value, it->second.line));
  }
  // List keys in first-appearance order; later values of a key replace earlier ones.
  std::vector<std::string> order;
  for (const auto& e : entries) {
    if (e.key == "seed" || e.key == "degree_sizes") continue;
    if (std::find(order.begin(), order.end(), e.key) == order.end()) order.push_back(e.key);
  }
  std::vector<std::vector<Setter>> axes;
  for (const auto& key : order) axes.push_back(expand_entry(latest.at(key), latest));
  std::vector<CheckSpec> cells;
  std::vector<std::size_t> pos(axes.size(), 0);
  for (const auto& a : axes) {
    if (a.empty()) return cells;
  }
  while (true) {
    CheckSpec spec;
    for (std::size_t a = 0; a < axes.size(); ++a) axes[a][pos[a]](spec);
    spec.seed = seed;
    cells.push_back(spec);
    std::size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++pos[a] < axes[a].size()) break;
      pos[a] = 0;
      if (a == 0) return cells;
    }
    if (axes.empty()) return cells;
  }
}

}  // namespace

std::vector<int> parse_degree_list(std::string_view text) {
  const auto seqs = sequence_list(trimmed(text), 0);
  if (seqs.size() != 1) throw std::invalid_argument("expected one degree list, got '" + std::string(text) + "'");
  return seqs.front();
}

std::vector<std::vector<int>> parse_multidegree_list(std::string_view text) {
  const auto alts = multidegree_list(trimmed(text), 0);
  if (alts.size() != 1) throw std::invalid_argument("expected one multidegree list, got '" + std::string(text) + "'");
  return alts.front();
}

std::vector<CheckSpec> parse_grid(std::string_view text) {
  std::vector<Entry> defaults;
  std::vector<std::vector<Entry>> sections;
  int line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line = trimmed(line.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw std::invalid_argument(where(line_no) + "unterminated section");
      sections.push_back(defaults);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument(where(line_no) + "expected key = value");
    Entry e{trimmed(line.substr(0, eq)), trimmed(line.substr(eq + 1)), line_no};
    (sections.empty() ? defaults : sections.back()).push_back(std::move(e));
  }
  if (sections.empty() && !defaults.empty()) sections.push_back(defaults);
  std::vector<CheckSpec> cells;
  for (const auto& section : sections) {
    auto part = expand_section(section);
    cells.insert(cells.end(), part.begin(), part.end());
  }
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i].seed = derive_seed(cells[i].seed, i);
  return cells;
}

}  // namespace hilbert
