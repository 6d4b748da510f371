#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hilbert/engine.hpp"
#include "hilbert/harness.hpp"
#include "hilbert/lattice_paths.hpp"
#include "hilbert/monomial_ideal.hpp"
#include "hilbert/series.hpp"
#include "../unit/oracles.hpp"

using namespace hilbert;

namespace {

constexpr std::uint64_t kMasterSeed = 20240601;

// Every harness run, kept for the determinism rerun.
std::vector<CheckSpec> g_specs;
std::vector<std::string> g_dumps;
std::uint64_t g_cell = 0;

struct Outcome {
  std::vector<std::string> failures;
  std::size_t cells = 0;

  void fail(const std::string& what) {
    if (failures.size() < 8) failures.push_back(what);
    else if (failures.size() == 8) failures.push_back("...");
  }
  void expect(bool ok, const std::string& what) {
    ++cells;
    if (!ok) fail(what);
  }
};

VerificationReport run(CheckSpec spec) {
  spec.seed = derive_seed(kMasterSeed, g_cell++);
  auto report = check(spec);
  g_specs.push_back(spec);
  g_dumps.push_back(to_json(report, false).dump());
  return report;
}

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::string describe_cell(const VerificationReport& r) {
  std::string out = std::string(to_string(r.spec.check)) + " " + params_text(r.spec) + ": " +
                    std::string(to_string(r.verdict));
  if (r.first_divergence) out += " at " + join(*r.first_divergence);
  return out;
}

bool met(const VerificationReport& r) { return r.expectation_met.value_or(false); }

std::vector<long long> longs(const std::vector<Integer>& v) {
  std::vector<long long> out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

// Nonincreasing sequences of length r with entries in [lo, hi].
void multisets(int r, int lo, int hi, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> cur;
  auto rec = [&](auto&& self, int top) -> void {
    if (static_cast<int>(cur.size()) == r) {
      visit(cur);
      return;
    }
    for (int d = top; d >= lo; --d) {
      cur.push_back(d);
      self(self, d);
      cur.pop_back();
    }
  };
  rec(rec, hi);
}

Outcome froberg_proved_cases() {
  Outcome o;
  auto cell = [&](int n, const std::vector<int>& degrees) {
    CheckSpec s;
    s.check = CheckId::froberg;
    s.n = n;
    s.degrees = degrees;
    const auto r = run(s);
    const int p = static_cast<int>(r.computed.size()) - 1;
    const auto oracle = oracle::plus(oracle::commutative_raw(n, degrees, p));
    o.expect(r.verdict == Verdict::match && r.expectation == Expectation::must_match && met(r) &&
                 longs(r.reference) == oracle,
             describe_cell(r));
  };
  for (int n = 1; n <= 3; ++n) {
    for (int r = 1; r <= 6; ++r) multisets(r, 1, 4, [&](const auto& d) { cell(n, d); });
  }
  for (int r = 1; r <= 5; ++r) multisets(r, 1, 4, [&](const auto& d) { cell(4, d); });
  return o;
}

Outcome truncation_algebra() {
  Outcome o;
  std::mt19937_64 rng(kMasterSeed);
  for (int i = 0; i < 1000; ++i) {
    const int n = static_cast<int>(rng() % 5) + 1;
    const int r = static_cast<int>(rng() % 6) + 1;
    std::vector<int> degrees;
    for (int j = 0; j < r; ++j) degrees.push_back(static_cast<int>(rng() % 6) + 1);
    const int p = 40;
    const std::vector<int> head(degrees.begin(), degrees.end() - 1);
    const auto inner = truncate_plus(froberg_series(n, DegreeSequence(head), p));
    IntPolynomial factor(static_cast<std::size_t>(degrees.back()) + 1);
    factor[0] = 1;
    factor[static_cast<std::size_t>(degrees.back())] = -1;
    const auto lhs = truncate_plus(factor * inner);
    const auto rhs = froberg_series(n, DegreeSequence(degrees), p);
    const auto direct = oracle::plus(oracle::commutative_raw(n, degrees, p));
    std::vector<long long> rhs_longs;
    for (long x : rhs.to_longs()) rhs_longs.push_back(x);
    o.expect(lhs == rhs && rhs_longs == direct, "n=" + std::to_string(n) + " degrees=" + join(degrees));
  }
  std::uniform_int_distribution<long> coeff(-6, 30);
  for (int i = 0; i < 10000; ++i) {
    std::vector<Integer> c(rng() % 16 + 1);
    for (auto& x : c) x = coeff(rng);
    const auto once = truncate_plus(TruncatedSeries(c));
    o.expect(truncate_plus(once) == once, "idempotence sample " + std::to_string(i));
  }
  return o;
}

Outcome maximal_series_two_vars() {
  Outcome o;
  for (int r = 1; r <= 4; ++r) {
    multisets(r, std::max(r - 1, 1), 7, [&](const std::vector<int>& d) {
      const DegreeSequence degrees(d);
      EnumerationOptions all;
      all.canonicalize = false;
      const auto ideals = enumerate_monomial_ideals(2, degrees, all);
      for (const auto& I : ideals) {
        const auto& g = I.generators;
        const auto least = *std::min_element(g.begin(), g.end(), [](const auto& a, const auto& b) {
          return monomial_degree(a) < monomial_degree(b);
        });
        o.expect(static_cast<int>(g.size()) <= least[0] + least[1] + 1, "generator count " + format_ideal(I));
      }
      if (d.back() < r) return;
      // Bring the bound over (1 - z)^2.
      auto numerator = max_series_two_vars_numerator(degrees);
      numerator.push_back(0);
      for (std::size_t t = numerator.size() - 1; t >= 1; --t) numerator[t] -= numerator[t - 1];
      const RationalSeries bound{numerator, 2};
      for (const auto& I : ideals) {
        const auto c = compare_exact(monomial_rational_series(I), bound);
        o.expect(c.coefficientwise == CoefficientOrder::less || c.coefficientwise == CoefficientOrder::equal,
                 "above the bound: " + format_ideal(I));
      }
      const auto attained = compare_exact(monomial_rational_series(max_ideal_two_vars(degrees)), bound);
      o.expect(attained.coefficientwise == CoefficientOrder::equal, "bound not attained for " + join(d));
    });
  }
  return o;
}

Outcome three_variable_example() {
  Outcome o;
  const auto ideal = [](std::vector<Monomial> g) { return minimalize(3, std::move(g)).ideal; };
  const auto I = ideal({{5, 0, 0}, {3, 1, 0}, {2, 0, 1}, {0, 2, 0}});
  const auto J = ideal({{2, 0, 0}, {1, 2, 0}, {1, 0, 3}, {0, 5, 0}});
  const auto K = ideal({{5, 0, 0}, {3, 1, 0}, {1, 2, 0}, {1, 0, 1}});
  const auto i = monomial_rational_series(I);
  const auto j = monomial_rational_series(J);
  const auto k = monomial_rational_series(K);
  o.expect(compare_exact(i, j).coefficientwise == CoefficientOrder::less, "I < J");
  o.expect(compare_exact(k, i).coefficientwise == CoefficientOrder::greater, "K > I");
  o.expect(compare_exact(k, j).coefficientwise == CoefficientOrder::greater, "K > J");
  const auto search = search_extremal_series(3, {5, 4, 3, 2});
  o.expect(search.unique_maximum && compare_exact(monomial_rational_series(search.lex_maximum.ideal), k).coefficientwise == CoefficientOrder::equal,
           "K is the maximum over all minimal monomial ideals");
  // The same comparisons through the Macaulay matrix.
  const PrimeField f;
  const auto kind = AlgebraKind::commutative(3);
  for (const auto* ideal_ptr : {&I, &J, &K}) {
    std::vector<Form> forms;
    for (const auto& m : ideal_ptr->generators) forms.push_back(monomial_form(kind, MonomialKey(m.begin(), m.end())));
    const auto dims = quotient_dimensions(kind, forms, 12, f);
    const auto exact = expand(monomial_rational_series(*ideal_ptr), 12);
    for (int t = 0; t <= 12; ++t) o.expect(exact[t] == dims[static_cast<std::size_t>(t)], format_ideal(*ideal_ptr));
  }
  return o;
}

Outcome tensor_algebra() {
  Outcome o;
  for (std::optional<int> q : {std::optional<int>(1), std::optional<int>(2), std::optional<int>(3), std::optional<int>()}) {
    CheckSpec s;
    s.check = CheckId::tensor_fl_family;
    s.q = q;
    if (!q) s.precision = 8;
    const auto r = run(s);
    o.expect(r.verdict == Verdict::match && met(r) && static_cast<int>(r.computed.size()) == (q ? *q + 7 : 9),
             describe_cell(r));
  }
  for (int n = 2; n <= 4; ++n) {
    for (int r = 1; 4 * r <= n * n; ++r) {
      CheckSpec s;
      s.check = CheckId::tensor_generic;
      s.n = n;
      s.degrees = std::vector<int>(static_cast<std::size_t>(r), 2);
      s.precision = 8;
      const auto rep = run(s);
      const auto raw = oracle::anick_raw(n, s.degrees, 8);
      o.expect(rep.verdict == Verdict::match && met(rep) && longs(rep.computed) == raw, describe_cell(rep));
    }
  }
  return o;
}

Outcome lie_algebra() {
  Outcome o;
  for (int n = 2; n <= 5; ++n) {
    CheckSpec s;
    s.check = CheckId::lie_commutator_example;
    s.n = n;
    s.precision = 8;
    const auto r = run(s);
    // (1 - n z + (n-1) z^2)^{-1}
    std::vector<long long> expected{1, n};
    for (int t = 2; t <= 8; ++t) expected.push_back(n * expected[t - 1] - (n - 1) * expected[t - 2]);
    o.expect(r.verdict == Verdict::match && longs(r.computed) == expected, describe_cell(r));
  }
  for (int n = 2; n <= 4; ++n) {
    for (int r = 1; r <= n * (n - 1) / 2; ++r) {
      CheckSpec s;
      s.check = CheckId::lie_quadratic;
      s.n = n;
      s.r = r;
      s.precision = n == 4 ? 7 : 8;
      const auto rep = run(s);
      const auto bound = oracle::plus(oracle::anick_raw(n, std::vector<int>(static_cast<std::size_t>(r), 2), *s.precision));
      bool above = true;
      for (std::size_t t = 0; t < bound.size(); ++t) above = above && rep.computed[t] >= static_cast<long>(bound[t]);
      o.expect(above, describe_cell(rep));
    }
  }
  return o;
}

Outcome exterior_algebra() {
  Outcome o;
  for (int n = 2; n <= 9; ++n) {
    for (int d : {2, 4}) {
      if (d > n) continue;
      CheckSpec s;
      s.check = CheckId::exterior_generic;
      s.n = n;
      s.degrees = {d};
      const auto r = run(s);
      o.expect(r.verdict == Verdict::match && met(r) && longs(r.computed) == oracle::plus(oracle::exterior_raw(n, {d}, n)),
               describe_cell(r));
    }
  }
  for (int n = 2; n <= 8; ++n) {
    CheckSpec s;
    s.check = CheckId::exterior_paths;
    s.n = n;
    const auto r = run(s);
    o.expect(r.verdict == Verdict::match, describe_cell(r));
    if (n == 5) o.expect(longs(r.computed) == std::vector<long long>{1, 5, 8, 1, 0, 0}, "five-variable series");
  }
  for (int n : {5, 7}) {
    CheckSpec s;
    s.check = CheckId::exterior_generic;
    s.n = n;
    s.degrees = {n - 2};
    const auto r = run(s);
    auto expected = oracle::plus(oracle::exterior_raw(n, s.degrees, n));
    expected[static_cast<std::size_t>(n - 1)] += 1;
    o.expect(r.verdict == Verdict::mismatch && met(r) && longs(r.computed) == expected, describe_cell(r));
  }
  return o;
}

Outcome bigraded_cases() {
  Outcome o;
  auto cell = [&](int m, int n, const std::vector<std::vector<int>>& g, Verdict want) {
    CheckSpec s;
    s.check = CheckId::bigraded;
    s.m = m;
    s.n = n;
    s.multidegrees = g;
    const auto r = run(s);
    o.expect(r.verdict == want && met(r), describe_cell(r));
  };
  for (int d = 0; d <= 3; ++d) {
    for (int e = 0; e <= 3; ++e) {
      if (d + e == 0) continue;
      for (int r = 1; r <= 4; ++r) cell(1, 1, std::vector<std::vector<int>>(static_cast<std::size_t>(r), {d, e}), Verdict::match);
    }
  }
  for (int r = 1; r <= 4; ++r) {
    multisets(r, 0, 3, [&](const std::vector<int>& first) {
      std::vector<std::vector<int>> g;
      for (int a : first) g.push_back({a, 3 - a});
      cell(1, 1, g, Verdict::match);
    });
  }
  cell(1, 2, {{2, 1}, {2, 1}, {2, 1}}, Verdict::mismatch);
  return o;
}

Outcome positive_characteristic() {
  Outcome o;
  for (auto [n, want] : {std::pair{6, Verdict::mismatch}, std::pair{5, Verdict::match}}) {
    CheckSpec s;
    s.check = CheckId::poschar;
    s.prime = 2;
    s.d = 2;
    s.n = n;
    const auto r = run(s);
    o.expect(r.verdict == want, describe_cell(r));
  }
  for (auto [r, want] : {std::pair{5, Verdict::mismatch}, std::pair{6, Verdict::mismatch}, std::pair{7, Verdict::mismatch},
                         std::pair{8, Verdict::mismatch}, std::pair{9, Verdict::match}}) {
    CheckSpec s;
    s.check = CheckId::linpowers_iarrobino;
    s.n = 3;
    s.d = 3;
    s.r = r;
    const auto rep = run(s);
    o.expect(rep.verdict == want, describe_cell(rep));
  }
  return o;
}

Outcome cross_oracle() {
  Outcome o;
  std::mt19937_64 rng(kMasterSeed + 10);
  const PrimeField f;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = static_cast<int>(rng() % 3) + 1;
    const int r = static_cast<int>(rng() % 6) + 1;
    std::vector<Monomial> gens;
    for (int i = 0; i < r; ++i) {
      Monomial m(static_cast<std::size_t>(n));
      for (auto& e : m) e = static_cast<int>(rng() % 5);
      if (monomial_degree(m) == 0) m[0] = 1;
      gens.push_back(m);
    }
    const auto I = minimalize(n, gens).ideal;
    const auto kind = AlgebraKind::commutative(n);
    std::vector<Form> forms;
    for (const auto& m : I.generators) forms.push_back(monomial_form(kind, MonomialKey(m.begin(), m.end())));
    const auto series = monomial_quotient_series(I, 10);
    bool same = true;
    for (int t = 0; t <= 10; ++t) {
      const auto dim = basis_size(kind, {t}) - macaulay_rank(kind, forms, {t}, f);
      same = same && series[t] == dim;
    }
    o.expect(same, format_ideal(I));
  }
  for (int n = 1; n <= 12; ++n) {
    for (int s = 1; 2 * s <= n + 2; ++s) {
      o.expect(lattice_path_count(n, s) == lattice_path_count_brute_force(n, s),
               "paths n=" + std::to_string(n) + " s=" + std::to_string(s));
    }
  }
  return o;
}

Outcome lower_bounds() {
  Outcome o;
  const auto stats = lower_bound_stats();
  o.expect(stats.checks > 0, "no lower-bound comparisons were made");
  o.expect(stats.violations == 0, std::to_string(stats.violations) + " violations");
  return o;
}

Outcome determinism() {
  Outcome o;
  for (std::size_t i = 0; i < g_specs.size(); ++i) {
    o.expect(to_json(check(g_specs[i]), false).dump() == g_dumps[i], std::string(to_string(g_specs[i].check)) + " " +
                                                                          params_text(g_specs[i]));
  }
  const auto one = run_grid(g_specs, 1);
  const auto many = run_grid(g_specs, 4);
  for (std::size_t i = 0; i < g_specs.size(); ++i) {
    const bool ok = one.cells[i].report && many.cells[i].report &&
                    to_json(*one.cells[i].report, false).dump() == g_dumps[i] &&
                    to_json(*many.cells[i].report, false).dump() == g_dumps[i];
    o.expect(ok, "grid cell " + std::to_string(i));
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"froberg proved cases", froberg_proved_cases},
      {"truncation operator algebra", truncation_algebra},
      {"maximal series in two variables", maximal_series_two_vars},
      {"three-variable monomial example", three_variable_example},
      {"tensor algebra family and generic quadrics", tensor_algebra},
      {"lie commutator example and quadratic lower bound", lie_algebra},
      {"exterior principal, paths and odd cases", exterior_algebra},
      {"bigraded checks", bigraded_cases},
      {"positive characteristic and linear powers", positive_characteristic},
      {"cross-oracle consistency", cross_oracle},
      {"lower-bound invariants", lower_bounds},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = o.failures.empty();
    failed += pass ? 0 : 1;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", secs);
    std::cout << (pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << " (" << o.cells << " checks, "
              << timing << ")\n";
    for (const auto& f : o.failures) std::cout << "    " << f << "\n";
    std::cout.flush();
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
