#include "hilbert/series.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hilbert {

namespace {

void require_precision(int precision) {
  if (precision < 0) throw std::invalid_argument("series precision must be non-negative");
}

IntPolynomial one_minus_z_pow(int d) {
  IntPolynomial p(static_cast<std::size_t>(d) + 1);
  p[0] = 1;
  p[static_cast<std::size_t>(d)] -= 1;
  return p;
}

// Product of polynomials, discarding terms above `precision`.
IntPolynomial multiply_truncated(const IntPolynomial& a, const IntPolynomial& b, int precision) {
  const std::size_t len = std::min(a.size() + b.size() - 1, static_cast<std::size_t>(precision) + 1);
  IntPolynomial out(len);
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

IntPolynomial product_one_minus(const DegreeSequence& degrees, int precision) {
  IntPolynomial p{1};
  for (int d : degrees) p = multiply_truncated(p, one_minus_z_pow(d), precision);
  return p;
}

// Coefficients of (1 - z)^{-n}: C(n - 1 + t, t).
TruncatedSeries inverse_power_of_one_minus(int n, int precision) {
  std::vector<Integer> c(static_cast<std::size_t>(precision) + 1);
  for (int t = 0; t <= precision; ++t) {
    mpz_bin_uiui(c[static_cast<std::size_t>(t)].get_mpz_t(), static_cast<unsigned long>(n - 1 + t),
                 static_cast<unsigned long>(t));
  }
  return TruncatedSeries(std::move(c));
}

}  // namespace

// --- TruncatedSeries ---------------------------------------------------------

TruncatedSeries::TruncatedSeries(int precision) {
  require_precision(precision);
  coeffs_.resize(static_cast<std::size_t>(precision) + 1);
}

TruncatedSeries::TruncatedSeries(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("a truncated series needs at least one coefficient");
}

TruncatedSeries::TruncatedSeries(std::initializer_list<long> coeffs) {
  if (coeffs.size() == 0) throw std::invalid_argument("a truncated series needs at least one coefficient");
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
}

const Integer& TruncatedSeries::at(int degree) const {
  if (degree < 0 || degree > precision()) throw std::out_of_range("degree outside series precision");
  return coeffs_[static_cast<std::size_t>(degree)];
}

TruncatedSeries TruncatedSeries::truncated(int precision) const {
  require_precision(precision);
  if (precision > this->precision()) throw std::invalid_argument("cannot raise the precision of a series");
  return TruncatedSeries(std::vector<Integer>(coeffs_.begin(), coeffs_.begin() + precision + 1));
}

std::vector<long> TruncatedSeries::to_longs() const {
  std::vector<long> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) {
    if (!c.fits_slong_p()) throw std::overflow_error("series coefficient exceeds machine range");
    out.push_back(c.get_si());
  }
  return out;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int prec = std::min(a.precision(), b.precision());
  std::vector<Integer> c(static_cast<std::size_t>(prec) + 1);
  for (int i = 0; i <= prec; ++i) c[static_cast<std::size_t>(i)] = a[i] + b[i];
  return TruncatedSeries(std::move(c));
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int prec = std::min(a.precision(), b.precision());
  std::vector<Integer> c(static_cast<std::size_t>(prec) + 1);
  for (int i = 0; i <= prec; ++i) c[static_cast<std::size_t>(i)] = a[i] - b[i];
  return TruncatedSeries(std::move(c));
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int prec = std::min(a.precision(), b.precision());
  IntPolynomial pa(a.coeffs().begin(), a.coeffs().end());
  IntPolynomial pb(b.coeffs().begin(), b.coeffs().end());
  auto c = multiply_truncated(pa, pb, prec);
  c.resize(static_cast<std::size_t>(prec) + 1);
  return TruncatedSeries(std::move(c));
}

TruncatedSeries operator*(const IntPolynomial& p, const TruncatedSeries& s) {
  IntPolynomial ps(s.coeffs().begin(), s.coeffs().end());
  auto c = multiply_truncated(p.empty() ? IntPolynomial{0} : p, ps, s.precision());
  c.resize(static_cast<std::size_t>(s.precision()) + 1);
  return TruncatedSeries(std::move(c));
}

// --- DegreeSequence ------------------------------------------------------------

DegreeSequence::DegreeSequence(std::vector<int> degrees) : degrees_(std::move(degrees)) {
  for (int d : degrees_) {
    if (d < 1) throw std::invalid_argument("form degrees must be positive");
  }
  std::sort(degrees_.begin(), degrees_.end(), std::greater<>());
}

DegreeSequence::DegreeSequence(std::initializer_list<int> degrees)
    : DegreeSequence(std::vector<int>(degrees)) {}

int DegreeSequence::max() const {
  if (degrees_.empty()) throw std::logic_error("max of an empty degree sequence");
  return degrees_.front();
}

int DegreeSequence::min() const {
  if (degrees_.empty()) throw std::logic_error("min of an empty degree sequence");
  return degrees_.back();
}

DegreeSequence DegreeSequence::with(int degree) const {
  auto d = degrees_;
  d.push_back(degree);
  return DegreeSequence(std::move(d));
}

// --- truncation and expansion ------------------------------------------------

TruncatedSeries truncate_plus(const TruncatedSeries& s) {
  std::vector<Integer> b(s.coeffs().begin(), s.coeffs().end());
  bool negative_seen = false;
  for (auto& c : b) {
    if (c < 0) negative_seen = true;
    if (negative_seen) c = 0;
  }
  return TruncatedSeries(std::move(b));
}

TruncatedSeries expand_rational(const IntPolynomial& numerator, const IntPolynomial& denominator,
                                int precision) {
  require_precision(precision);
  if (denominator.empty() || denominator[0] == 0) {
    throw std::invalid_argument("denominator must have a nonzero constant term");
  }
  const auto len = static_cast<std::size_t>(precision) + 1;
  std::vector<Integer> c(len);
  const Integer& lead = denominator[0];
  const bool unit = (lead == 1 || lead == -1);
  if (unit) {
    for (std::size_t t = 0; t < len; ++t) {
      Integer acc = t < numerator.size() ? numerator[t] : Integer(0);
      for (std::size_t j = 1; j < denominator.size() && j <= t; ++j) acc -= denominator[j] * c[t - j];
      c[t] = lead == 1 ? acc : Integer(-acc);
    }
    return TruncatedSeries(std::move(c));
  }
  std::vector<mpq_class> q(len);
  for (std::size_t t = 0; t < len; ++t) {
    mpq_class acc = t < numerator.size() ? mpq_class(numerator[t]) : mpq_class(0);
    for (std::size_t j = 1; j < denominator.size() && j <= t; ++j) acc -= mpq_class(denominator[j]) * q[t - j];
    q[t] = acc / mpq_class(lead);
    q[t].canonicalize();
    if (q[t].get_den() != 1) {
      throw std::domain_error("rational expansion has a non-integral coefficient at degree " +
                              std::to_string(t));
    }
    c[t] = q[t].get_num();
  }
  return TruncatedSeries(std::move(c));
}

TruncatedSeries trim_after_vanishing(const TruncatedSeries& s) {
  for (int t = 0; t + 1 <= s.precision(); ++t) {
    if (s[t] == 0 && s[t + 1] == 0) return s.truncated(t + 1);
  }
  return s;
}

// --- expected series ---------------------------------------------------------

TruncatedSeries froberg_series(int n, const DegreeSequence& degrees, int precision) {
  if (n < 1) throw std::invalid_argument("froberg_series needs n >= 1");
  require_precision(precision);
  return truncate_plus(product_one_minus(degrees, precision) * inverse_power_of_one_minus(n, precision));
}

TruncatedSeries anick_series(int n, const DegreeSequence& degrees, int precision) {
  if (n < 1) throw std::invalid_argument("anick_series needs n >= 1");
  IntPolynomial den{1, -n};
  for (int d : degrees) {
    if (static_cast<std::size_t>(d) >= den.size()) den.resize(static_cast<std::size_t>(d) + 1);
    den[static_cast<std::size_t>(d)] += 1;
  }
  return truncate_plus(expand_rational(IntPolynomial{1}, den, precision));
}

TruncatedSeries exterior_expected_series(int n, const DegreeSequence& degrees, int precision) {
  if (n < 1) throw std::invalid_argument("exterior_expected_series needs n >= 1");
  require_precision(precision);
  IntPolynomial binom(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    mpz_bin_uiui(binom[static_cast<std::size_t>(k)].get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
  }
  auto p = multiply_truncated(product_one_minus(degrees, precision), binom, precision);
  p.resize(static_cast<std::size_t>(precision) + 1);
  return truncate_plus(TruncatedSeries(std::move(p)));
}

IntPolynomial max_series_two_vars_numerator(const DegreeSequence& degrees) {
  if (degrees.empty()) throw std::invalid_argument("max_series_two_vars needs at least one degree");
  const int r = degrees.size();
  IntPolynomial num(static_cast<std::size_t>(degrees.max()) + 1);
  for (int j = 0; j < degrees[r - 1]; ++j) num[static_cast<std::size_t>(j)] += 1;
  for (int i = 0; i + 1 < r; ++i) num[static_cast<std::size_t>(degrees[i])] -= 1;
  return num;
}

TruncatedSeries max_series_two_vars(const DegreeSequence& degrees, int precision) {
  return expand_rational(max_series_two_vars_numerator(degrees), IntPolynomial{1, -1}, precision);
}

// --- comparison ----------------------------------------------------------------

std::string_view to_string(CoefficientOrder order) {
  switch (order) {
    case CoefficientOrder::equal: return "equal";
    case CoefficientOrder::less: return "less";
    case CoefficientOrder::greater: return "greater";
    case CoefficientOrder::incomparable: return "incomparable";
  }
  return "?";
}

SeriesComparison compare_sequences(std::span<const Integer> a, std::span<const Integer> b) {
  if (a.size() != b.size()) throw std::invalid_argument("compared series have different precision");
  SeriesComparison out;
  bool some_less = false;
  bool some_greater = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int c = cmp(a[i], b[i]);
    if (c == 0) continue;
    if (!out.first_divergence) {
      out.first_divergence = static_cast<int>(i);
      out.lexicographic = c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    (c < 0 ? some_less : some_greater) = true;
  }
  if (some_less && some_greater) {
    out.coefficientwise = CoefficientOrder::incomparable;
  } else if (some_less) {
    out.coefficientwise = CoefficientOrder::less;
  } else if (some_greater) {
    out.coefficientwise = CoefficientOrder::greater;
  }
  return out;
}

SeriesComparison series_compare(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.precision() != b.precision()) throw std::invalid_argument("compared series have different precision");
  return compare_sequences(a.coeffs(), b.coeffs());
}

// --- multigraded -----------------------------------------------------------------

TruncatedMultiSeries::TruncatedMultiSeries(std::vector<int> precisions) : precisions_(std::move(precisions)) {
  std::size_t total = 1;
  for (int p : precisions_) {
    require_precision(p);
    total *= static_cast<std::size_t>(p) + 1;
  }
  coeffs_.resize(total);
}

TruncatedMultiSeries::TruncatedMultiSeries(std::vector<int> precisions, std::vector<Integer> coeffs)
    : TruncatedMultiSeries(std::move(precisions)) {
  if (coeffs.size() != coeffs_.size()) throw std::invalid_argument("coefficient array does not match the shape");
  coeffs_ = std::move(coeffs);
}

std::size_t TruncatedMultiSeries::flat_index(std::span<const int> index) const {
  if (index.size() != precisions_.size()) throw std::invalid_argument("multi-index has the wrong arity");
  std::size_t flat = 0;
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (index[k] < 0 || index[k] > precisions_[k]) throw std::out_of_range("multi-index outside precision");
    flat = flat * (static_cast<std::size_t>(precisions_[k]) + 1) + static_cast<std::size_t>(index[k]);
  }
  return flat;
}

std::vector<int> TruncatedMultiSeries::unflatten(std::size_t position) const {
  std::vector<int> index(precisions_.size());
  for (std::size_t k = precisions_.size(); k-- > 0;) {
    const auto extent = static_cast<std::size_t>(precisions_[k]) + 1;
    index[k] = static_cast<int>(position % extent);
    position /= extent;
  }
  return index;
}

TruncatedBiSeries::TruncatedBiSeries(int prec_x, int prec_y) : prec_x_(prec_x), prec_y_(prec_y) {
  require_precision(prec_x);
  require_precision(prec_y);
  coeffs_.resize(static_cast<std::size_t>(prec_x + 1) * static_cast<std::size_t>(prec_y + 1));
}

TruncatedBiSeries::TruncatedBiSeries(int prec_x, int prec_y, std::vector<Integer> row_major)
    : TruncatedBiSeries(prec_x, prec_y) {
  if (row_major.size() != coeffs_.size()) throw std::invalid_argument("coefficient array does not match the shape");
  coeffs_ = std::move(row_major);
}

TruncatedBiSeries TruncatedBiSeries::from_rows(const std::vector<std::vector<long>>& rows) {
  if (rows.empty() || rows.front().empty()) throw std::invalid_argument("empty coefficient array");
  std::vector<Integer> flat;
  for (const auto& row : rows) {
    if (row.size() != rows.front().size()) throw std::invalid_argument("ragged coefficient array");
    for (long v : row) flat.emplace_back(v);
  }
  return TruncatedBiSeries(static_cast<int>(rows.size()) - 1, static_cast<int>(rows.front().size()) - 1,
                           std::move(flat));
}

TruncatedMultiSeries TruncatedBiSeries::to_multi() const {
  return TruncatedMultiSeries({prec_x_, prec_y_}, coeffs_);
}

TruncatedBiSeries TruncatedBiSeries::from_multi(const TruncatedMultiSeries& s) {
  if (s.arity() != 2) throw std::invalid_argument("bigraded series needs arity 2");
  return TruncatedBiSeries(s.precisions()[0], s.precisions()[1],
                           std::vector<Integer>(s.flat().begin(), s.flat().end()));
}

TruncatedMultiSeries multigraded_truncate_plus(const TruncatedMultiSeries& s, bool strict) {
  const auto flat = s.flat();
  std::vector<char> ok(flat.size(), 0);
  std::vector<Integer> out(flat.size());
  // Row-major order visits every predecessor (index minus a unit vector) first.
  for (std::size_t pos = 0; pos < flat.size(); ++pos) {
    bool good = strict ? flat[pos] > 0 : flat[pos] >= 0;
    auto index = s.unflatten(pos);
    for (std::size_t k = 0; good && k < index.size(); ++k) {
      if (index[k] == 0) continue;
      --index[k];
      good = ok[s.flat_index(index)] != 0;
      ++index[k];
    }
    ok[pos] = good ? 1 : 0;
    if (good) out[pos] = flat[pos];
  }
  return TruncatedMultiSeries(std::vector<int>(s.precisions().begin(), s.precisions().end()), std::move(out));
}

TruncatedBiSeries bigraded_truncate_plus(const TruncatedBiSeries& s, bool strict) {
  return TruncatedBiSeries::from_multi(multigraded_truncate_plus(s.to_multi(), strict));
}

TruncatedMultiSeries multigraded_froberg_series(std::span<const int> group_sizes,
                                                const std::vector<std::vector<int>>& multidegrees,
                                                std::span<const int> precisions, bool strict) {
  if (group_sizes.size() != precisions.size() || group_sizes.empty()) {
    throw std::invalid_argument("group sizes and precisions must have the same positive arity");
  }
  for (int g : group_sizes) {
    if (g < 1) throw std::invalid_argument("every factor needs at least one variable");
  }
  TruncatedMultiSeries shape(std::vector<int>(precisions.begin(), precisions.end()));
  const std::size_t total = shape.flat().size();

  // Numerator prod (1 - x^a), truncated to the box.
  std::vector<Integer> num(total);
  num[0] = 1;
  for (const auto& a : multidegrees) {
    if (a.size() != group_sizes.size()) throw std::invalid_argument("multidegree has the wrong arity");
    std::vector<Integer> next = num;
    for (std::size_t pos = 0; pos < total; ++pos) {
      if (num[pos] == 0) continue;
      auto index = shape.unflatten(pos);
      bool inside = true;
      for (std::size_t k = 0; k < index.size(); ++k) {
        index[k] += a[k];
        if (index[k] > precisions[k]) inside = false;
      }
      if (inside) next[shape.flat_index(index)] -= num[pos];
    }
    num = std::move(next);
  }

  // Denominator expansion is a product of one-variable binomial series.
  std::vector<Integer> out(total);
  for (std::size_t pos = 0; pos < total; ++pos) {
    const auto target = shape.unflatten(pos);
    Integer acc = 0;
    for (std::size_t src = 0; src < total; ++src) {
      if (num[src] == 0) continue;
      const auto index = shape.unflatten(src);
      Integer term = num[src];
      for (std::size_t k = 0; k < index.size() && term != 0; ++k) {
        const int gap = target[k] - index[k];
        if (gap < 0) {
          term = 0;
          break;
        }
        Integer b;
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(group_sizes[k] - 1 + gap),
                     static_cast<unsigned long>(gap));
        term *= b;
      }
      acc += term;
    }
    out[pos] = acc;
  }
  return multigraded_truncate_plus(
      TruncatedMultiSeries(std::vector<int>(precisions.begin(), precisions.end()), std::move(out)), strict);
}

TruncatedBiSeries bigraded_froberg_series(int m, int n, std::span<const Bidegree> bidegrees, int prec_x,
                                          int prec_y, bool strict) {
  if (m < 1 || n < 1) throw std::invalid_argument("bigraded_froberg_series needs m, n >= 1");
  std::vector<std::vector<int>> degrees;
  degrees.reserve(bidegrees.size());
  for (const auto& b : bidegrees) degrees.push_back({b.x, b.y});
  const int groups[] = {m + 1, n + 1};
  const int precs[] = {prec_x, prec_y};
  return TruncatedBiSeries::from_multi(multigraded_froberg_series(groups, degrees, precs, strict));
}

// --- rendering -----------------------------------------------------------------

namespace {

std::string superscript(int e) {
  static const char* const digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  std::string digits_ascii = std::to_string(e);
  std::string out;
  for (char c : digits_ascii) out += digits[c - '0'];
  return out;
}

}  // namespace

std::string format_series(const TruncatedSeries& s, std::string_view variable) {
  std::string out;
  int last = s.precision();
  while (last > 0 && s[last] == 0) --last;
  for (int t = 0; t <= last; ++t) {
    const Integer& c = s[t];
    if (c == 0 && !(t == 0 && last == 0)) continue;
    Integer mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (t == 0 || mag != 1) out += mag.get_str();
    if (t >= 1) out += variable;
    if (t >= 2) out += superscript(t);
  }
  if (out.empty()) out = "0";
  if (s[s.precision()] != 0) out += " + …";
  return out;
}

nlohmann::json integer_to_json(const Integer& value) {
  if (value.fits_slong_p()) return value.get_si();
  return value.get_str();
}

Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Integer(j.get<std::string>());
  if (j.is_number_integer()) return Integer(j.get<long>());
  throw std::invalid_argument("expected an integer");
}

void to_json(nlohmann::json& j, const TruncatedSeries& s) {
  auto coeffs = nlohmann::json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(integer_to_json(c));
  j = nlohmann::json{{"precision", s.precision()}, {"coeffs", std::move(coeffs)}};
}

void from_json(const nlohmann::json& j, TruncatedSeries& s) {
  std::vector<Integer> coeffs;
  for (const auto& c : j.at("coeffs")) coeffs.push_back(integer_from_json(c));
  const int precision = j.at("precision").get<int>();
  if (static_cast<int>(coeffs.size()) != precision + 1) {
    throw std::invalid_argument("series JSON: coefficient count does not match precision");
  }
  s = TruncatedSeries(std::move(coeffs));
}

void to_json(nlohmann::json& j, const TruncatedBiSeries& s) {
  auto rows = nlohmann::json::array();
  for (int i = 0; i <= s.prec_x(); ++i) {
    auto row = nlohmann::json::array();
    for (int jj = 0; jj <= s.prec_y(); ++jj) row.push_back(integer_to_json(s(i, jj)));
    rows.push_back(std::move(row));
  }
  j = nlohmann::json{{"prec_x", s.prec_x()}, {"prec_y", s.prec_y()}, {"coeffs", std::move(rows)}};
}

void to_json(nlohmann::json& j, const TruncatedMultiSeries& s) {
  auto coeffs = nlohmann::json::array();
  for (const auto& c : s.flat()) coeffs.push_back(integer_to_json(c));
  j = nlohmann::json{{"precisions", std::vector<int>(s.precisions().begin(), s.precisions().end())},
                     {"coeffs", std::move(coeffs)}};
}

}  // namespace hilbert
