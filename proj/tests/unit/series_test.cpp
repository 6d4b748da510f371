#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <random>

#include "hilbert/series.hpp"
#include "oracles.hpp"

using namespace hilbert;

namespace {

std::vector<long> longs(const oracle::Coeffs& c) { return {c.begin(), c.end()}; }

}  // namespace

TEST(TruncatePlus, ZerosPassNegativesCut) {
  EXPECT_EQ(truncate_plus(TruncatedSeries{1, 3, 0, 2, -1, 5}).to_longs(), (std::vector<long>{1, 3, 0, 2, 0, 0}));
  EXPECT_EQ(truncate_plus(TruncatedSeries{1, 0, 0}).to_longs(), (std::vector<long>{1, 0, 0}));
  EXPECT_EQ(truncate_plus(TruncatedSeries{-1, 2}).to_longs(), (std::vector<long>{0, 0}));
}

TEST(TruncatePlus, IdempotentOnRandomSequences) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> coeff(-5, 20);
  for (int i = 0; i < 2000; ++i) {
    std::vector<Integer> c(rng() % 12 + 1);
    for (auto& x : c) x = coeff(rng);
    const TruncatedSeries s(c);
    const auto once = truncate_plus(s);
    EXPECT_EQ(truncate_plus(once), once);
  }
}

TEST(FrobergSeries, MatchesDirectExpansion) {
  for (int n = 1; n <= 5; ++n) {
    for (const auto& degrees : std::vector<std::vector<int>>{{}, {2}, {2, 2, 2}, {3, 2, 2, 2}, {4, 3, 3, 2, 2, 2}}) {
      const auto expected = oracle::plus(oracle::commutative_raw(n, degrees, 14));
      EXPECT_EQ(froberg_series(n, DegreeSequence(degrees), 14).to_longs(), longs(expected));
    }
  }
}

TEST(FrobergSeries, KnownValues) {
  EXPECT_EQ(froberg_series(3, {2, 2, 2, 2}, 4).to_longs(), (std::vector<long>{1, 3, 2, 0, 0}));
  EXPECT_EQ(froberg_series(2, {3, 2}, 5).to_longs(), (std::vector<long>{1, 2, 2, 1, 0, 0}));
  // Complete intersection: no truncation.
  EXPECT_EQ(froberg_series(3, {2, 2}, 4).to_longs(), (std::vector<long>{1, 3, 4, 4, 4}));
}

TEST(FrobergSeries, AddingAFormAndTruncatingAgain) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = static_cast<int>(rng() % 5) + 1;
    const int r = static_cast<int>(rng() % 7);
    std::vector<int> degrees;
    for (int i = 0; i < r; ++i) degrees.push_back(static_cast<int>(rng() % 6) + 1);
    const int extra = static_cast<int>(rng() % 6) + 1;
    const int precision = static_cast<int>(rng() % 30) + 1;
    IntPolynomial factor(static_cast<std::size_t>(extra) + 1);
    factor[0] = 1;
    factor[static_cast<std::size_t>(extra)] = -1;
    const auto left = truncate_plus(factor * froberg_series(n, DegreeSequence(degrees), precision));
    EXPECT_EQ(left, froberg_series(n, DegreeSequence(degrees).with(extra), precision));
  }
}

TEST(AnickSeries, MatchesRecurrence) {
  for (int n = 2; n <= 4; ++n) {
    for (const auto& degrees : std::vector<std::vector<int>>{{2}, {2, 2}, {2, 2, 2, 2}, {3, 3}}) {
      EXPECT_EQ(anick_series(n, DegreeSequence(degrees), 9).to_longs(),
                longs(oracle::plus(oracle::anick_raw(n, degrees, 9))));
    }
  }
  EXPECT_EQ(anick_series(2, {2, 2, 2, 2}, 3).to_longs(), (std::vector<long>{1, 2, 0, 0}));
}

TEST(ExteriorSeries, MatchesExpansion) {
  for (int n = 1; n <= 9; ++n) {
    for (const auto& degrees : std::vector<std::vector<int>>{{}, {2}, {3}, {2, 2}, {4, 2}}) {
      EXPECT_EQ(exterior_expected_series(n, DegreeSequence(degrees), n).to_longs(),
                longs(oracle::plus(oracle::exterior_raw(n, degrees, n))));
    }
  }
  EXPECT_EQ(exterior_expected_series(5, {2, 2}, 5).to_longs(), (std::vector<long>{1, 5, 8, 0, 0, 0}));
}

TEST(MaxSeriesTwoVars, SmallCases) {
  EXPECT_EQ(max_series_two_vars({3, 2}, 5).to_longs(), (std::vector<long>{1, 2, 2, 1, 1, 1}));
  // Principal ideal of degree d: 1 + 2z + ... + d z^{d-1} + d z^d + ...
  EXPECT_EQ(max_series_two_vars({4}, 6).to_longs(), (std::vector<long>{1, 2, 3, 4, 4, 4, 4}));
}

TEST(ExpandRational, GeometricAndErrors) {
  EXPECT_EQ(expand_rational({1}, {1, -1}, 4).to_longs(), (std::vector<long>{1, 1, 1, 1, 1}));
  EXPECT_EQ(expand_rational({1, 1}, {1, -2}, 3).to_longs(), (std::vector<long>{1, 3, 6, 12}));
  EXPECT_THROW(expand_rational({1}, {0, 1}, 3), std::invalid_argument);
  EXPECT_THROW(expand_rational({1}, {2, 1}, 3), std::domain_error);
}

TEST(Compare, CoefficientwiseAndFirstDivergence) {
  const auto c = series_compare(TruncatedSeries{1, 3, 5, 6}, TruncatedSeries{1, 3, 5, 7});
  EXPECT_EQ(c.coefficientwise, CoefficientOrder::less);
  EXPECT_EQ(c.first_divergence, 3);
  const auto d = series_compare(TruncatedSeries{1, 4, 2}, TruncatedSeries{1, 3, 5});
  EXPECT_EQ(d.coefficientwise, CoefficientOrder::incomparable);
  EXPECT_EQ(d.lexicographic, std::strong_ordering::greater);
  EXPECT_EQ(series_compare(TruncatedSeries{1, 2}, TruncatedSeries{1, 2}).coefficientwise, CoefficientOrder::equal);
  EXPECT_THROW(series_compare(TruncatedSeries{1}, TruncatedSeries{1, 2}), std::invalid_argument);
}

TEST(Bigraded, StrictAndNonStrictTruncation) {
  const auto s = TruncatedBiSeries::from_rows({{1, 2, 0}, {2, -1, 3}, {0, 4, 4}});
  EXPECT_EQ(bigraded_truncate_plus(s, false), TruncatedBiSeries::from_rows({{1, 2, 0}, {2, 0, 0}, {0, 0, 0}}));
  EXPECT_EQ(bigraded_truncate_plus(s, true), TruncatedBiSeries::from_rows({{1, 2, 0}, {2, 0, 0}, {0, 0, 0}}));
  const auto t = TruncatedBiSeries::from_rows({{1, 0, 2}, {1, 1, 1}});
  // Strict: a zero cuts everything above and to the right of it.
  EXPECT_EQ(bigraded_truncate_plus(t, true), TruncatedBiSeries::from_rows({{1, 0, 0}, {1, 0, 0}}));
  EXPECT_EQ(bigraded_truncate_plus(t, false), t);
}

TEST(Bigraded, ProductOfProjectiveLinesCompleteIntersection) {
  // Two (1,1) forms on P1 x P1: (1 - xy)^2 / ((1-x)^2 (1-y)^2) has no negative coefficients.
  const std::vector<Bidegree> gens{{1, 1}, {1, 1}};
  const auto s = bigraded_froberg_series(1, 1, gens, 3, 3);
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; j <= 3; ++j) {
      long long raw = 0;
      // coefficient of x^i y^j in (1 - 2xy + x^2y^2) sum (a+1)(b+1) x^a y^b
      for (int k = 0; k <= 2; ++k) {
        const long long c = k == 1 ? -2 : 1;
        if (i >= k && j >= k) raw += c * (i - k + 1) * (j - k + 1);
      }
      EXPECT_EQ(s(i, j), static_cast<long>(raw)) << i << "," << j;
    }
  }
}

TEST(Json, SeriesRoundTripAndBigIntegers) {
  const TruncatedSeries s(std::vector<Integer>{1, Integer("123456789012345678901234567890"), -3});
  nlohmann::json j = s;
  TruncatedSeries back;
  from_json(j, back);
  EXPECT_EQ(back, s);
  EXPECT_TRUE(j["coeffs"][1].is_string());
}

TEST(Format, Superscripts) {
  EXPECT_EQ(format_series(TruncatedSeries{1, 3, 2, 0}), "1 + 3z + 2z²");
  EXPECT_EQ(format_series(TruncatedSeries{1, 2, 2, 1}), "1 + 2z + 2z² + z³ + …");
  EXPECT_EQ(format_series(TruncatedSeries{1, -4, 0}), "1 - 4z");
}
