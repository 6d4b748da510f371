#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "hilbert/errors.hpp"
#include "hilbert/monomial_ideal.hpp"
#include "oracles.hpp"

using namespace hilbert;

namespace {

MonomialIdeal ideal(int n, std::vector<Monomial> gens) { return minimalize(n, std::move(gens)).ideal; }

// Minimal generating sets in two variables with the given degrees, by brute force.
std::size_t brute_force_count_two_vars(const std::vector<int>& degrees) {
  std::set<std::vector<Monomial>> found;
  std::vector<Monomial> chosen;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == degrees.size()) {
      auto copy = chosen;
      std::sort(copy.begin(), copy.end());
      if (std::adjacent_find(copy.begin(), copy.end()) != copy.end()) return;
      for (const auto& a : copy) {
        for (const auto& b : copy) {
          if (a != b && divides(a, b)) return;
        }
      }
      found.insert(copy);
      return;
    }
    for (int a = 0; a <= degrees[i]; ++a) {
      chosen.push_back({a, degrees[i] - a});
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  return found.size();
}

}  // namespace

TEST(Monomials, BasicOperations) {
  EXPECT_TRUE(divides({1, 0, 2}, {1, 1, 2}));
  EXPECT_FALSE(divides({2, 0}, {1, 3}));
  EXPECT_EQ(monomial_lcm({2, 0, 1}, {1, 3, 0}), (Monomial{2, 3, 1}));
  EXPECT_EQ(format_monomial({5, 1, 0}), "x^5*y");
  EXPECT_EQ(format_monomial({0, 0, 0, 2}), "x4^2");
}

TEST(Monomials, Minimalize) {
  const auto r = minimalize(2, {{2, 0}, {3, 0}, {0, 2}, {2, 0}});
  EXPECT_FALSE(r.was_minimal);
  EXPECT_EQ(r.ideal.generators, (std::vector<Monomial>{{2, 0}, {0, 2}}));
  EXPECT_TRUE(minimalize(2, {{1, 1}, {2, 0}}).was_minimal);
}

TEST(InclusionExclusion, MatchesStaircaseCount) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = static_cast<int>(rng() % 3) + 1;
    std::vector<Monomial> gens;
    const int r = static_cast<int>(rng() % 6) + 1;
    for (int i = 0; i < r; ++i) {
      Monomial m(static_cast<std::size_t>(n));
      for (auto& e : m) e = static_cast<int>(rng() % 4);
      if (monomial_degree(m) == 0) m[0] = 1;
      gens.push_back(m);
    }
    const auto I = ideal(n, gens);
    const auto s = monomial_quotient_series(I, 10);
    for (int t = 0; t <= 10; ++t) EXPECT_EQ(s[t], static_cast<long>(oracle::staircase_count(n, I.generators, t)));
  }
}

TEST(InclusionExclusion, TooManyGenerators) {
  std::vector<Monomial> gens;
  for (int a = 0; a <= kInclusionExclusionLimit; ++a) gens.push_back({a, kInclusionExclusionLimit - a});
  EXPECT_THROW(monomial_rational_series(ideal(2, gens)), std::length_error);
}

TEST(ExactComparison, SeesBeyondAnyPrecision) {
  // (x^3, y^3) against (x^3, xy^3, y^4): equal through degree 2.
  const auto a = monomial_rational_series(ideal(2, {{3, 0}, {0, 3}}));
  const auto b = monomial_rational_series(ideal(2, {{3, 0}, {1, 3}, {0, 4}}));
  const auto c = compare_exact(a, b);
  EXPECT_EQ(c.coefficientwise, CoefficientOrder::less);
  EXPECT_EQ(c.first_divergence, 3);
  EXPECT_EQ(compare_exact(a, a).coefficientwise, CoefficientOrder::equal);
}

TEST(TwoVariables, ExtremalIdealAttainsTheBound) {
  for (const auto& degrees : std::vector<std::vector<int>>{{3, 2}, {4, 3, 3}, {5, 4, 3}, {7, 6, 5, 4}}) {
    const auto I = max_ideal_two_vars(DegreeSequence(degrees));
    EXPECT_EQ(monomial_quotient_series(I, 12), max_series_two_vars(DegreeSequence(degrees), 12));
  }
  EXPECT_EQ(format_ideal(max_ideal_two_vars({3, 2})), "(x^3, x*y)");
}

TEST(Enumeration, TwoVariablesMatchesBruteForce) {
  EnumerationOptions all;
  all.canonicalize = false;
  for (const auto& degrees : std::vector<std::vector<int>>{{3, 2}, {4, 4}, {5, 3, 2}, {4, 4, 3, 3}, {6, 5, 4, 2}}) {
    EXPECT_EQ(enumerate_monomial_ideals(2, DegreeSequence(degrees), all).size(), brute_force_count_two_vars(degrees));
  }
}

TEST(Enumeration, CanonicalFormsAreFewer) {
  const auto all = enumerate_monomial_ideals(3, {3, 2}, {false, 2'000'000});
  const auto orbits = enumerate_monomial_ideals(3, {3, 2});
  EXPECT_LT(orbits.size(), all.size());
  EXPECT_GE(orbits.size() * 6, all.size());
}

TEST(Enumeration, CapRaisesResourceError) {
  EXPECT_THROW(enumerate_monomial_ideals(3, {6, 5, 4, 3}, {true, 100}), ResourceError);
  EXPECT_THROW(enumerate_monomial_ideals(4, {2}), std::invalid_argument);
}

TEST(Search, ThreeVariableExample) {
  const auto I = monomial_quotient_series(ideal(3, {{5, 0, 0}, {3, 1, 0}, {2, 0, 1}, {0, 2, 0}}), 12);
  const auto J = monomial_quotient_series(ideal(3, {{2, 0, 0}, {1, 2, 0}, {1, 0, 3}, {0, 5, 0}}), 12);
  const auto K = monomial_quotient_series(ideal(3, {{5, 0, 0}, {3, 1, 0}, {1, 2, 0}, {1, 0, 1}}), 12);
  EXPECT_EQ(series_compare(I, J).coefficientwise, CoefficientOrder::less);
  EXPECT_EQ(series_compare(K, J).coefficientwise, CoefficientOrder::greater);
  const auto report = search_extremal_series(3, {5, 4, 3, 2});
  EXPECT_TRUE(report.unique_maximum);
  EXPECT_EQ(report.lex_maximum.series.truncated(12), K);
  EXPECT_EQ(format_ideal(report.lex_maximum.ideal), "(x^5, x^3*y, x*y^2, x*z)");
}

TEST(Search, TwoVariablesPrincipalAndBound) {
  const auto r = search_extremal_series(2, {3, 2});
  EXPECT_TRUE(r.unique_maximum);
  EXPECT_EQ(r.agrees_with_two_variable_bound, true);
  const auto principal = search_extremal_series(2, {9});
  EXPECT_TRUE(principal.unique_maximum);
  EXPECT_EQ(principal.maximal.size(), 5u);
}
