#include <gtest/gtest.h>

#include <random>

#include "hilbert/echelon.hpp"
#include "hilbert/engine.hpp"
#include "hilbert/errors.hpp"
#include "hilbert/generators.hpp"
#include "oracles.hpp"

using namespace hilbert;

namespace {

std::vector<long> to_longs(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Form> parse_all(const AlgebraKind& kind, const PrimeField& f, const std::vector<std::string>& texts) {
  std::vector<Form> out;
  for (const auto& t : texts) out.push_back(parse_form(kind, f, t));
  return out;
}

}  // namespace

TEST(PrimeField, Arithmetic) {
  const PrimeField f(7);
  EXPECT_EQ(f.mul(f.inv(3), 3), 1u);
  EXPECT_EQ(f.pow(3, 6), 1u);
  EXPECT_EQ(f.from_int(-1), 6u);
  EXPECT_EQ(f.lift(6), -1);
  EXPECT_THROW(f.inv(0), std::domain_error);
  EXPECT_THROW(PrimeField(8), std::invalid_argument);
  EXPECT_TRUE(is_prime(32003));
  EXPECT_FALSE(is_prime(32001));
}

TEST(RowEchelon, RankMatchesDenseElimination) {
  std::mt19937_64 rng(3);
  for (std::uint32_t p : {2u, 7u, 32003u}) {
    const PrimeField f(p);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t rows = rng() % 9 + 1;
      const std::size_t cols = rng() % 9 + 1;
      std::vector<std::vector<std::uint32_t>> dense(rows, std::vector<std::uint32_t>(cols, 0));
      RowEchelon e(f, cols);
      for (auto& row : dense) {
        std::vector<MatrixEntry> sparse;
        for (std::size_t c = 0; c < cols; ++c) {
          if (rng() % 3 == 0) continue;
          row[c] = static_cast<std::uint32_t>(rng() % p);
          if (row[c]) sparse.push_back({static_cast<std::uint32_t>(c), row[c]});
        }
        e.insert(sparse);
      }
      EXPECT_EQ(e.rank(), oracle::dense_rank(dense, p));
    }
  }
}

TEST(RowEchelon, PivotsIndependentOfInsertionOrder) {
  const PrimeField f(101);
  std::mt19937_64 rng(5);
  std::vector<std::vector<MatrixEntry>> rows;
  for (int i = 0; i < 12; ++i) {
    std::vector<MatrixEntry> row;
    for (std::uint32_t c = 0; c < 15; ++c) {
      if (rng() % 4 == 0) row.push_back({c, static_cast<std::uint32_t>(rng() % 100 + 1)});
    }
    rows.push_back(row);
  }
  RowEchelon a(f, 15);
  for (const auto& r : rows) a.insert(r);
  RowEchelon b(f, 15, RowEchelon::Tail::keep);
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) b.insert(*it);
  EXPECT_EQ(a.pivot_columns(), b.pivot_columns());
}

TEST(CommutativeEngine, MatchesDenseMacaulayOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = static_cast<int>(rng() % 3) + 1;
    const auto kind = AlgebraKind::commutative(n);
    const PrimeField f(rng() % 2 ? 32003 : 5);
    std::vector<GeneratorSpec> specs;
    std::vector<int> degrees;
    const int r = static_cast<int>(rng() % 4) + 1;
    for (int i = 0; i < r; ++i) {
      degrees.push_back(static_cast<int>(rng() % 3) + 1);
      specs.push_back(rng() % 3 == 0 ? GeneratorSpec{PowerOfLinear{degrees.back()}} : generic(degrees.back()));
    }
    const auto forms = realize_generators(kind, specs, f, rng());
    const auto dims = quotient_dimensions(kind, forms, 6, f);
    std::vector<oracle::Poly> polys;
    for (const auto& g : forms) polys.push_back(oracle::to_poly(g));
    for (int t = 0; t <= 6; ++t) {
      EXPECT_EQ(dims[static_cast<std::size_t>(t)], oracle::commutative_quotient_dim(n, polys, degrees, t, f.prime()))
          << "n=" << n << " t=" << t;
      EXPECT_EQ(basis_size(kind, {t}) - macaulay_rank(kind, forms, {t}, f), dims[static_cast<std::size_t>(t)]);
    }
  }
}

TEST(CommutativeEngine, MonomialCompleteIntersection) {
  const auto kind = AlgebraKind::commutative(3);
  const PrimeField f;
  const auto forms = parse_all(kind, f, {"x1^2", "x2^3", "x3^2"});
  // (1+z)(1+z+z^2)(1+z)
  EXPECT_EQ(to_longs(quotient_dimensions(kind, forms, 6, f)), (std::vector<long>{1, 3, 4, 3, 1, 0, 0}));
}

TEST(ExteriorEngine, PrincipalMonomial) {
  const int n = 5;
  const auto kind = AlgebraKind::exterior(n);
  const PrimeField f;
  const auto forms = parse_all(kind, f, {"x1*x2"});
  const auto dims = quotient_dimensions(kind, forms, n, f);
  for (int t = 0; t <= n; ++t) EXPECT_EQ(static_cast<long>(dims[static_cast<std::size_t>(t)]), binom(n, t) - binom(n - 2, t - 2));
}

TEST(ExteriorEngine, SquaresOfOddFormsVanish) {
  const auto kind = AlgebraKind::exterior(4);
  const PrimeField f;
  const auto a = parse_form(kind, f, "x1+2*x2-x3");
  EXPECT_TRUE(multiply(kind, f, a, a).is_zero());
  const auto b = parse_form(kind, f, "x1*x2");
  const auto c = parse_form(kind, f, "x3*x4");
  EXPECT_EQ(multiply(kind, f, b, c), multiply(kind, f, c, b));
}

TEST(TensorEngine, CokernelMatchesTwoSidedMacaulayMatrix) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = static_cast<int>(rng() % 2) + 2;
    const auto kind = AlgebraKind::tensor(n);
    const PrimeField f(rng() % 2 ? 32003 : 3);
    std::vector<GeneratorSpec> specs;
    const int r = static_cast<int>(rng() % 3) + 1;
    for (int i = 0; i < r; ++i) specs.push_back(rng() % 4 == 0 ? GeneratorSpec{LieQuadratic{}} : generic(static_cast<int>(rng() % 2) + 2));
    const auto forms = realize_generators(kind, specs, f, rng());
    const int top = n == 2 ? 6 : 5;
    const auto dims = tensor_quotient_dimensions(n, forms, top, f);
    for (int t = 0; t <= top; ++t) {
      EXPECT_EQ(dims[static_cast<std::size_t>(t)], basis_size(kind, {t}) - macaulay_rank(kind, forms, {t}, f))
          << "n=" << n << " t=" << t;
    }
  }
}

TEST(TensorEngine, CommutatorsGiveThePolynomialRing) {
  // [x_i, x_j] for all i < j: the commutative polynomial ring.
  const int n = 3;
  const auto kind = AlgebraKind::tensor(n);
  const PrimeField f;
  const auto forms = realize_generators(kind, {{Commutator{0, 1}}, {Commutator{0, 2}}, {Commutator{1, 2}}}, f, 0);
  EXPECT_EQ(to_longs(quotient_dimensions(kind, forms, 6, f)), (std::vector<long>{1, 3, 6, 10, 15, 21, 28}));
}

TEST(QuotientSeries, DeterministicAndAboveLowerBound) {
  const auto kind = AlgebraKind::commutative(4);
  const std::vector<GeneratorSpec> specs(6, generic(2));
  EngineOptions o;
  o.seed = 99;
  const auto before = lower_bound_stats();
  const auto a = quotient_series(kind, specs, 5, o);
  const auto b = quotient_series(kind, specs, 5, o);
  EXPECT_EQ(a.series, b.series);
  EXPECT_EQ(a.trial_seeds, b.trial_seeds);
  EXPECT_FALSE(a.trial_seeds.empty());
  const auto after = lower_bound_stats();
  EXPECT_GT(after.checks, before.checks);
  EXPECT_EQ(after.violations, before.violations);
  const auto cmp = series_compare(a.series, froberg_series(4, DegreeSequence(std::vector<int>(6, 2)), 5));
  EXPECT_TRUE(cmp.coefficientwise == CoefficientOrder::equal || cmp.coefficientwise == CoefficientOrder::greater);
}

TEST(QuotientSeries, TrialsRunWithoutEarlyStop) {
  const auto kind = AlgebraKind::commutative(3);
  EngineOptions o;
  o.trials = 4;
  o.stop_at_lower_bound = false;
  const auto r = quotient_series(kind, {generic(2), generic(2)}, 4, o);
  EXPECT_EQ(r.trial_seeds.size(), 4u);
  o.stop_at_lower_bound = true;
  EXPECT_EQ(quotient_series(kind, {generic(2), generic(2)}, 4, o).trial_seeds.size(), 1u);
}

TEST(QuotientSeries, ColumnCapRaisesResourceError) {
  const auto kind = AlgebraKind::commutative(4);
  EngineOptions o;
  o.column_cap = 10;
  EXPECT_THROW(quotient_series(kind, {generic(2)}, 4, o), ResourceError);
}

TEST(Multigraded, ProductOfProjectiveLinesCompleteIntersection) {
  const auto kind = AlgebraKind::bigraded(1, 1);
  const std::vector<int> prec{3, 3};
  const auto r = multigraded_quotient_series(kind, {generic(Grade{1, 1}), generic(Grade{1, 1})}, prec);
  const auto expected = multigraded_froberg_series(kind.groups(), {{1, 1}, {1, 1}}, prec);
  EXPECT_EQ(r.series, expected);
}

TEST(InitialIdeal, LeadCountsAreIdealDimensions) {
  const auto kind = AlgebraKind::commutative(3);
  const PrimeField f;
  const auto forms = realize_generators(kind, {generic(2), generic(2), generic(3)}, f, 8);
  const auto leads = initial_ideal_leads(kind, forms, 6, f);
  const auto dims = quotient_dimensions(kind, forms, 6, f);
  for (int t = 0; t <= 6; ++t) {
    EXPECT_EQ(leads[static_cast<std::size_t>(t)].size() + dims[static_cast<std::size_t>(t)], basis_size(kind, {t}));
  }
}

TEST(InitialIdeal, MonomialIdealIsItsOwnInitialIdeal) {
  const auto kind = AlgebraKind::commutative(2);
  const PrimeField f;
  const auto leads = initial_ideal_leads(kind, parse_all(kind, f, {"x2^2"}), 3, f);
  ASSERT_EQ(leads[2].size(), 1u);
  EXPECT_EQ(leads[2][0], (MonomialKey{0, 2}));
  // y^2 is not a degrevlex initial segment: x^2 and xy are larger.
  const auto r = is_almost_degrevlex(leads, 2);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->first, (MonomialKey{0, 2}));
  const auto good = initial_ideal_leads(kind, parse_all(kind, f, {"x1^2"}), 3, f);
  EXPECT_TRUE(is_almost_degrevlex(good, 2).holds);
}

TEST(Multiplication, RanksOnSmallCompleteIntersection) {
  const auto kind = AlgebraKind::commutative(2);
  const PrimeField f;
  const auto forms = parse_all(kind, f, {"x1^2", "x2^2"});
  const auto l = parse_form(kind, f, "x1+x2");
  const auto r0 = multiplication_rank(kind, forms, l, 0, f);
  EXPECT_EQ(r0.rank, 1u);
  const auto r1 = multiplication_rank(kind, forms, l, 1, f);
  EXPECT_EQ(r1.source_dim, 2u);
  EXPECT_EQ(r1.target_dim, 1u);
  EXPECT_TRUE(r1.maximal());
  // x1 alone kills x1 in degree one.
  const auto x = parse_form(kind, f, "x1");
  EXPECT_EQ(multiplication_rank(kind, forms, x, 1, f).rank, 1u);
  EXPECT_EQ(multiplication_rank(kind, forms, parse_form(kind, f, "x1*x2"), 0, f).rank, 1u);
}

TEST(Multiplication, MonomialQuotientByVariable) {
  // k[x,y]/(x^2, xy, y^3): degree one -> two by y.
  const std::vector<std::vector<MonomialKey>> ideal{{}, {}, {{2, 0}, {1, 1}}, {{3, 0}, {2, 1}, {1, 2}, {0, 3}}};
  const auto r = monomial_multiplication_rank(2, ideal, 1, 1);
  EXPECT_EQ(r.source_dim, 2u);
  EXPECT_EQ(r.target_dim, 1u);
  EXPECT_EQ(r.rank, 1u);
}
