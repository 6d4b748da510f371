#pragma once

// Monomial ideals of k[x_1..x_n]: exact Hilbert series by inclusion-exclusion,
// the extremal construction in two variables and exhaustive searches.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hilbert/series.hpp"

namespace hilbert {

/// Exponent vector.
using Monomial = std::vector<int>;

int monomial_degree(const Monomial& m);
bool divides(const Monomial& a, const Monomial& b);
Monomial monomial_lcm(const Monomial& a, const Monomial& b);
/// "x^5*y" for n <= 3 (x, y, z), "x1^2*x3" otherwise.
std::string format_monomial(const Monomial& m);

struct MonomialIdeal {
  int n = 0;
  /// Minimal generators, sorted by descending degree, then lex descending.
  std::vector<Monomial> generators;

  bool operator==(const MonomialIdeal&) const = default;
};

std::string format_ideal(const MonomialIdeal& ideal);

struct MinimalizeResult {
  MonomialIdeal ideal;
  bool was_minimal = true;
};

/// Removes generators divisible by another one (and duplicates).
MinimalizeResult minimalize(int n, std::vector<Monomial> monomials);

/// Largest generator count inclusion-exclusion accepts.
inline constexpr int kInclusionExclusionLimit = 20;

/// The Hilbert series of k[x_1..x_n]/I as numerator / (1 - z)^n.
struct RationalSeries {
  IntPolynomial numerator;
  int n = 0;
};

/// Numerator by inclusion-exclusion over the lcms of generator subsets.
/// Throws std::length_error above kInclusionExclusionLimit generators.
RationalSeries monomial_rational_series(const MonomialIdeal& ideal);

TruncatedSeries monomial_quotient_series(const MonomialIdeal& ideal, int precision);
TruncatedSeries expand(const RationalSeries& series, int precision);

/// Comparison of the full (infinite) series. first_divergence is the first
/// degree where the coefficients differ.
SeriesComparison compare_exact(const RationalSeries& a, const RationalSeries& b);

/// (x^{d_1}, x^{d_2-1} y, ..., x^{d_r-(r-1)} y^{r-1}). Requires d_r >= r.
MonomialIdeal max_ideal_two_vars(const DegreeSequence& degrees);

struct EnumerationOptions {
  /// Keep one ideal per orbit under permutations of the variables.
  bool canonicalize = true;
  /// Upper bound on the number of generator choices examined.
  std::size_t cap = 2'000'000;
};

/// Every minimally generated monomial ideal in n in {2, 3} variables whose
/// generator degrees are exactly `degrees`, in a deterministic order.
/// Throws ResourceError above the cap. In two variables, checks that no ideal
/// has more than a + b + 1 generators where x^a y^b is a generator of least
/// degree.
std::vector<MonomialIdeal> enumerate_monomial_ideals(int n, const DegreeSequence& degrees,
                                                     const EnumerationOptions& options = {});

struct ExtremalCandidate {
  MonomialIdeal ideal;
  RationalSeries rational;
  TruncatedSeries series;
};

struct ExtremalReport {
  int n = 0;
  DegreeSequence degrees;
  int precision = 0;
  std::size_t examined = 0;
  /// Ideals whose series is not strictly below another one's.
  std::vector<ExtremalCandidate> maximal;
  /// One series lies above all others.
  bool unique_maximum = false;
  ExtremalCandidate lex_maximum;
  /// For n = 2 and d_r >= r: whether the maximum equals max_series_two_vars.
  std::optional<bool> agrees_with_two_variable_bound;
};

/// Exhaustive search for the coefficientwise maximal series. Throws
/// InvariantViolation when a two-variable search contradicts the bound.
ExtremalReport search_extremal_series(int n, const DegreeSequence& degrees, const EnumerationOptions& options = {},
                                      std::optional<int> precision = std::nullopt);

void to_json(nlohmann::json& j, const MonomialIdeal& ideal);
void to_json(nlohmann::json& j, const ExtremalReport& report);

}  // namespace hilbert
