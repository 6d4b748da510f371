#pragma once

// Exact truncated power series in one and several variables.
//
// Coefficients are GMP integers. A TruncatedSeries of precision N carries the
// coefficients of z^0 .. z^N; everything past N is unknown, not zero.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json_fwd.hpp>

namespace hilbert {

using Integer = mpz_class;

/// Dense integer polynomial; index i holds the coefficient of z^i.
using IntPolynomial = std::vector<Integer>;

inline constexpr int kDefaultPrecisionCap = 64;

class TruncatedSeries {
 public:
  /// The zero series of precision 0.
  TruncatedSeries() : coeffs_(1) {}
  /// The zero series of the given precision.
  explicit TruncatedSeries(int precision);
  explicit TruncatedSeries(std::vector<Integer> coeffs);
  TruncatedSeries(std::initializer_list<long> coeffs);

  int precision() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Integer& operator[](int degree) const { return coeffs_[static_cast<std::size_t>(degree)]; }
  const Integer& at(int degree) const;
  std::span<const Integer> coeffs() const { return coeffs_; }

  /// Drops coefficients above `precision`; `precision` must not exceed the current one.
  TruncatedSeries truncated(int precision) const;

  /// Coefficients as machine integers; throws std::overflow_error if one does not fit.
  std::vector<long> to_longs() const;

  bool operator==(const TruncatedSeries& other) const { return coeffs_ == other.coeffs_; }

 private:
  std::vector<Integer> coeffs_;
};

// Binary arithmetic truncates to the smaller of the two precisions.
TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(const IntPolynomial& p, const TruncatedSeries& s);

/// Degrees d_1 >= ... >= d_r >= 1 of a sequence of forms. Input order is irrelevant;
/// the constructor sorts.
class DegreeSequence {
 public:
  DegreeSequence() = default;
  explicit DegreeSequence(std::vector<int> degrees);
  DegreeSequence(std::initializer_list<int> degrees);

  std::span<const int> degrees() const { return degrees_; }
  int size() const { return static_cast<int>(degrees_.size()); }
  bool empty() const { return degrees_.empty(); }
  int operator[](int i) const { return degrees_[static_cast<std::size_t>(i)]; }
  int max() const;
  int min() const;
  auto begin() const { return degrees_.begin(); }
  auto end() const { return degrees_.end(); }

  /// The same sequence with one more degree inserted.
  DegreeSequence with(int degree) const;

  bool operator==(const DegreeSequence&) const = default;

 private:
  std::vector<int> degrees_;
};

// --- univariate truncation and expansion -----------------------------------

/// Zeroes every coefficient from the first negative one onward. Zeros pass.
TruncatedSeries truncate_plus(const TruncatedSeries& s);

/// Power series expansion of numerator/denominator up to `precision`.
/// Throws std::invalid_argument if the denominator has zero constant term and
/// std::domain_error if a coefficient is not an integer.
TruncatedSeries expand_rational(const IntPolynomial& numerator, const IntPolynomial& denominator,
                                int precision);

/// Cuts an expected series after the first two consecutive zero coefficients.
/// Series that never vanish twice in a row are returned unchanged.
TruncatedSeries trim_after_vanishing(const TruncatedSeries& s);

// --- closed-form expected series -------------------------------------------

/// (prod (1 - z^{d_i}) / (1 - z)^n)_+
TruncatedSeries froberg_series(int n, const DegreeSequence& degrees, int precision);

/// ((1 - n z + sum z^{d_i})^{-1})_+
TruncatedSeries anick_series(int n, const DegreeSequence& degrees, int precision);

/// (prod (1 - z^{d_i}) (1 + z)^n)_+
TruncatedSeries exterior_expected_series(int n, const DegreeSequence& degrees, int precision);

/// Upper bound for k[x,y] modulo a minimally generated ideal with the given
/// generator degrees: (1 + z + ... + z^{d_r - 1} - (z^{d_{r-1}} + ... + z^{d_1})) / (1 - z).
/// No truncation is applied.
TruncatedSeries max_series_two_vars(const DegreeSequence& degrees, int precision);

/// Numerator polynomial of the rational form of max_series_two_vars (denominator 1 - z).
IntPolynomial max_series_two_vars_numerator(const DegreeSequence& degrees);

// --- comparison -------------------------------------------------------------

enum class CoefficientOrder { equal, less, greater, incomparable };

std::string_view to_string(CoefficientOrder order);

struct SeriesComparison {
  /// `less` means a <= b in every coefficient and a != b.
  CoefficientOrder coefficientwise = CoefficientOrder::equal;
  std::strong_ordering lexicographic = std::strong_ordering::equal;
  std::optional<int> first_divergence;
};

/// Throws std::invalid_argument when the precisions differ.
SeriesComparison series_compare(const TruncatedSeries& a, const TruncatedSeries& b);

/// Same comparison on two equally long coefficient sequences (flattened
/// multigraded series compare through this).
SeriesComparison compare_sequences(std::span<const Integer> a, std::span<const Integer> b);

// --- multigraded series -----------------------------------------------------

struct Bidegree {
  int x = 0;
  int y = 0;
  bool operator==(const Bidegree&) const = default;
};

/// Row-major array of coefficients a_{i_1,...,i_k}, 0 <= i_j <= precisions[j].
class TruncatedMultiSeries {
 public:
  TruncatedMultiSeries() = default;
  explicit TruncatedMultiSeries(std::vector<int> precisions);
  TruncatedMultiSeries(std::vector<int> precisions, std::vector<Integer> coeffs);

  std::span<const int> precisions() const { return precisions_; }
  int arity() const { return static_cast<int>(precisions_.size()); }
  std::span<const Integer> flat() const { return coeffs_; }
  std::size_t flat_index(std::span<const int> index) const;
  const Integer& at(std::span<const int> index) const { return coeffs_[flat_index(index)]; }
  /// Multi-index of a flat position.
  std::vector<int> unflatten(std::size_t position) const;

  bool operator==(const TruncatedMultiSeries&) const = default;

 private:
  std::vector<int> precisions_;
  std::vector<Integer> coeffs_;
};

class TruncatedBiSeries {
 public:
  TruncatedBiSeries(int prec_x, int prec_y);
  TruncatedBiSeries(int prec_x, int prec_y, std::vector<Integer> row_major);
  static TruncatedBiSeries from_rows(const std::vector<std::vector<long>>& rows);

  int prec_x() const { return prec_x_; }
  int prec_y() const { return prec_y_; }
  const Integer& operator()(int i, int j) const {
    return coeffs_[static_cast<std::size_t>(i) * static_cast<std::size_t>(prec_y_ + 1) +
                   static_cast<std::size_t>(j)];
  }
  std::span<const Integer> flat() const { return coeffs_; }

  TruncatedMultiSeries to_multi() const;
  static TruncatedBiSeries from_multi(const TruncatedMultiSeries& s);

  bool operator==(const TruncatedBiSeries&) const = default;

 private:
  int prec_x_;
  int prec_y_;
  std::vector<Integer> coeffs_;
};

/// b = a where every coefficient at or below the index (componentwise) is > 0
/// (strict) or >= 0 (non-strict); b = 0 elsewhere.
TruncatedMultiSeries multigraded_truncate_plus(const TruncatedMultiSeries& s, bool strict = true);
TruncatedBiSeries bigraded_truncate_plus(const TruncatedBiSeries& s, bool strict = true);

/// (prod (1 - x_1^{a_1} ... x_k^{a_k}) / prod (1 - x_j)^{g_j})_+ where g_j is the number
/// of variables of the j-th factor.
TruncatedMultiSeries multigraded_froberg_series(std::span<const int> group_sizes,
                                                const std::vector<std::vector<int>>& multidegrees,
                                                std::span<const int> precisions, bool strict = true);

/// Expected series of P^m x P^n (coordinate ring k[x_0..x_m, y_0..y_n]).
TruncatedBiSeries bigraded_froberg_series(int m, int n, std::span<const Bidegree> bidegrees,
                                          int prec_x, int prec_y, bool strict = true);

// --- rendering and serialization --------------------------------------------

/// "1 + 3z + 2z²"; a trailing " + …" marks a series whose last known
/// coefficient is nonzero.
std::string format_series(const TruncatedSeries& s, std::string_view variable = "z");

void to_json(nlohmann::json& j, const TruncatedSeries& s);
void from_json(const nlohmann::json& j, TruncatedSeries& s);
void to_json(nlohmann::json& j, const TruncatedBiSeries& s);
void to_json(nlohmann::json& j, const TruncatedMultiSeries& s);

nlohmann::json integer_to_json(const Integer& value);
Integer integer_from_json(const nlohmann::json& j);

}  // namespace hilbert
