#include "hilbert/monomial_ideal.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "hilbert/errors.hpp"

namespace hilbert {

namespace {

bool generator_before(const Monomial& a, const Monomial& b) {
  const int da = monomial_degree(a);
  const int db = monomial_degree(b);
  if (da != db) return da > db;
  return a > b;
}

void sort_generators(std::vector<Monomial>& gens) { std::sort(gens.begin(), gens.end(), generator_before); }

int sign_of(const Integer& v) { return sgn(v); }

// Signs of the coefficients of D / (1 - z)^n: explicit below `tail_from`,
// constant (or zero) from there on.
struct SignPattern {
  std::vector<int> head;
  int tail = 0;
};

SignPattern difference_signs(const IntPolynomial& d, int n) {
  int degree = static_cast<int>(d.size()) - 1;
  while (degree >= 0 && d[static_cast<std::size_t>(degree)] == 0) --degree;
  std::size_t length = static_cast<std::size_t>(std::max(degree, 0)) + 2;
  std::vector<std::vector<Integer>> levels;
  auto compute = [&](std::size_t len) {
    levels.assign(static_cast<std::size_t>(n) + 1, std::vector<Integer>(len));
    for (std::size_t t = 0; t < len && t < d.size(); ++t) levels[0][t] = d[t];
    for (int j = 1; j <= n; ++j) {
      Integer running = 0;
      for (std::size_t t = 0; t < len; ++t) {
        running += levels[static_cast<std::size_t>(j - 1)][t];
        levels[static_cast<std::size_t>(j)][t] = running;
      }
    }
  };
  compute(length);
  // Level 0 vanishes from degree + 1 on. Each partial-sum level moves
  // monotonically toward the sign of the level below, by at least 1 per step.
  std::size_t from = static_cast<std::size_t>(degree + 1);
  int tail = 0;
  for (int j = 1; j <= n; ++j) {
    if (tail == 0) {
      if (from >= length) compute(length = from + 1);
      tail = sign_of(levels[static_cast<std::size_t>(j)][from]);
      continue;
    }
    while (true) {
      if (from >= length) compute(length = 2 * from + 1);
      if (sign_of(levels[static_cast<std::size_t>(j)][from]) == tail) break;
      ++from;
    }
  }
  if (from >= length) compute(length = from + 1);
  SignPattern out;
  out.tail = tail;
  for (std::size_t t = 0; t < from; ++t) out.head.push_back(sign_of(levels[static_cast<std::size_t>(n)][t]));
  return out;
}

std::vector<Monomial> monomials_of_degree(int n, int d) {
  std::vector<Monomial> out;
  Monomial m(static_cast<std::size_t>(n), 0);
  // Lex descending: first exponent as large as possible.
  auto fill = [&](auto&& self, int var, int left) -> void {
    if (var == n - 1) {
      m[static_cast<std::size_t>(var)] = left;
      out.push_back(m);
      return;
    }
    for (int e = left; e >= 0; --e) {
      m[static_cast<std::size_t>(var)] = e;
      self(self, var + 1, left - e);
    }
  };
  if (n > 0) fill(fill, 0, d);
  return out;
}

Integer binomial(std::size_t n, std::size_t k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

std::vector<Monomial> canonical_form(int n, const std::vector<Monomial>& gens) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Monomial> best;
  do {
    std::vector<Monomial> image;
    for (const auto& g : gens) {
      Monomial h(g.size());
      for (std::size_t v = 0; v < g.size(); ++v) h[static_cast<std::size_t>(perm[v])] = g[v];
      image.push_back(std::move(h));
    }
    sort_generators(image);
    if (best.empty() || std::lexicographical_compare(image.begin(), image.end(), best.begin(), best.end(),
                                                     [](const Monomial& a, const Monomial& b) { return a > b; })) {
      best = std::move(image);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

RationalSeries as_rational(const IntPolynomial& numerator_over_one_minus_z, int n) {
  // N / (1 - z) = N (1 - z)^{n-1} / (1 - z)^n
  IntPolynomial num = numerator_over_one_minus_z;
  for (int i = 1; i < n; ++i) {
    IntPolynomial next(num.size() + 1);
    for (std::size_t k = 0; k < num.size(); ++k) {
      next[k] += num[k];
      next[k + 1] -= num[k];
    }
    num = std::move(next);
  }
  return {num, n};
}

}  // namespace

int monomial_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Monomial monomial_lcm(const Monomial& a, const Monomial& b) {
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

std::string format_monomial(const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += m.size() <= 3 ? std::string(1, "xyz"[i]) : "x" + std::to_string(i + 1);
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string format_ideal(const MonomialIdeal& ideal) {
  std::string out = "(";
  for (std::size_t i = 0; i < ideal.generators.size(); ++i) {
    if (i) out += ", ";
    out += format_monomial(ideal.generators[i]);
  }
  return out + ")";
}

MinimalizeResult minimalize(int n, std::vector<Monomial> monomials) {
  for (const auto& m : monomials) {
    if (static_cast<int>(m.size()) != n) throw std::invalid_argument("monomial has the wrong number of variables");
    for (int e : m) {
      if (e < 0) throw std::invalid_argument("negative exponent");
    }
  }
  MinimalizeResult out;
  out.ideal.n = n;
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < monomials.size() && !redundant; ++j) {
      if (i == j || !divides(monomials[j], monomials[i])) continue;
      // Of two equal monomials keep the first.
      redundant = monomials[j] != monomials[i] || j < i;
    }
    if (redundant) {
      out.was_minimal = false;
    } else {
      out.ideal.generators.push_back(monomials[i]);
    }
  }
  sort_generators(out.ideal.generators);
  return out;
}

RationalSeries monomial_rational_series(const MonomialIdeal& ideal) {
  const auto& gens = ideal.generators;
  if (static_cast<int>(gens.size()) > kInclusionExclusionLimit) {
    throw std::length_error("inclusion-exclusion is limited to " + std::to_string(kInclusionExclusionLimit) +
                            " generators");
  }
  RationalSeries out;
  out.n = ideal.n;
  out.numerator.assign(1, 1);
  auto add = [&](int degree, int sign) {
    if (out.numerator.size() <= static_cast<std::size_t>(degree)) out.numerator.resize(static_cast<std::size_t>(degree) + 1);
    out.numerator[static_cast<std::size_t>(degree)] += sign;
  };
  auto walk = [&](auto&& self, std::size_t next, const Monomial& lcm, int sign) -> void {
    for (std::size_t i = next; i < gens.size(); ++i) {
      const Monomial l = monomial_lcm(lcm, gens[i]);
      add(monomial_degree(l), -sign);
      self(self, i + 1, l, -sign);
    }
  };
  walk(walk, 0, Monomial(static_cast<std::size_t>(ideal.n), 0), 1);
  while (out.numerator.size() > 1 && out.numerator.back() == 0) out.numerator.pop_back();
  return out;
}

TruncatedSeries expand(const RationalSeries& series, int precision) {
  IntPolynomial denominator{1};
  for (int i = 0; i < series.n; ++i) {
    IntPolynomial next(denominator.size() + 1);
    for (std::size_t k = 0; k < denominator.size(); ++k) {
      next[k] += denominator[k];
      next[k + 1] -= denominator[k];
    }
    denominator = std::move(next);
  }
  return expand_rational(series.numerator, denominator, precision);
}

TruncatedSeries monomial_quotient_series(const MonomialIdeal& ideal, int precision) {
  return expand(monomial_rational_series(ideal), precision);
}

SeriesComparison compare_exact(const RationalSeries& a, const RationalSeries& b) {
  if (a.n != b.n) throw std::invalid_argument("series over different numbers of variables");
  IntPolynomial d(std::max(a.numerator.size(), b.numerator.size()));
  for (std::size_t i = 0; i < a.numerator.size(); ++i) d[i] += a.numerator[i];
  for (std::size_t i = 0; i < b.numerator.size(); ++i) d[i] -= b.numerator[i];
  const SignPattern signs = difference_signs(d, a.n);
  SeriesComparison out;
  bool below = false;
  bool above = false;
  for (std::size_t t = 0; t < signs.head.size(); ++t) {
    if (signs.head[t] == 0) continue;
    if (!out.first_divergence) {
      out.first_divergence = static_cast<int>(t);
      out.lexicographic = signs.head[t] < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    (signs.head[t] < 0 ? below : above) = true;
  }
  if (signs.tail != 0) {
    if (!out.first_divergence) {
      out.first_divergence = static_cast<int>(signs.head.size());
      out.lexicographic = signs.tail < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    (signs.tail < 0 ? below : above) = true;
  }
  out.coefficientwise = below && above ? CoefficientOrder::incomparable
                        : below        ? CoefficientOrder::less
                        : above        ? CoefficientOrder::greater
                                       : CoefficientOrder::equal;
  return out;
}

MonomialIdeal max_ideal_two_vars(const DegreeSequence& degrees) {
  const int r = degrees.size();
  if (r < 1) throw std::invalid_argument("at least one degree is required");
  if (degrees[r - 1] < r) throw std::invalid_argument("the construction needs d_r >= r");
  MonomialIdeal ideal;
  ideal.n = 2;
  for (int i = 0; i < r; ++i) ideal.generators.push_back({degrees[i] - i, i});
  sort_generators(ideal.generators);
  return ideal;
}

std::vector<MonomialIdeal> enumerate_monomial_ideals(int n, const DegreeSequence& degrees,
                                                     const EnumerationOptions& options) {
  if (n != 2 && n != 3) throw std::invalid_argument("enumeration supports 2 or 3 variables");
  // Distinct degrees with multiplicities, largest first.
  std::vector<std::pair<int, int>> groups;
  for (int d : degrees) {
    if (!groups.empty() && groups.back().first == d) {
      ++groups.back().second;
    } else {
      groups.emplace_back(d, 1);
    }
  }
  std::vector<std::vector<Monomial>> pools;
  Integer total = 1;
  for (const auto& [d, k] : groups) {
    pools.push_back(monomials_of_degree(n, d));
    total *= binomial(pools.back().size(), static_cast<std::size_t>(k));
  }
  if (total > Integer(static_cast<unsigned long>(options.cap))) {
    throw ResourceError("enumeration would examine " + total.get_str() + " generator sets, above the cap of " +
                        std::to_string(options.cap));
  }

  std::vector<MonomialIdeal> out;
  std::set<std::vector<Monomial>> seen;
  std::vector<Monomial> chosen;
  auto accept = [&]() {
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      for (std::size_t j = 0; j < chosen.size(); ++j) {
        if (i != j && divides(chosen[i], chosen[j])) return;
      }
    }
    std::vector<Monomial> gens = options.canonicalize ? canonical_form(n, chosen) : chosen;
    if (!options.canonicalize) sort_generators(gens);
    if (!seen.insert(gens).second) return;
    if (n == 2) {
      const Monomial& least = gens.back();
      if (static_cast<int>(gens.size()) > least[0] + least[1] + 1) {
        throw InvariantViolation("minimal ideal " + format_ideal({2, gens}) + " has more than a + b + 1 generators");
      }
    }
    out.push_back({n, std::move(gens)});
  };
  auto choose = [&](auto&& self, std::size_t group, std::size_t start, int left) -> void {
    if (group == groups.size()) {
      accept();
      return;
    }
    if (left == 0) {
      const std::size_t next = group + 1;
      self(self, next, 0, next < groups.size() ? groups[next].second : 0);
      return;
    }
    const auto& pool = pools[group];
    for (std::size_t i = start; i + static_cast<std::size_t>(left) <= pool.size(); ++i) {
      chosen.push_back(pool[i]);
      self(self, group, i + 1, left - 1);
      chosen.pop_back();
    }
  };
  choose(choose, 0, 0, groups.empty() ? 0 : groups[0].second);
  return out;
}

ExtremalReport search_extremal_series(int n, const DegreeSequence& degrees, const EnumerationOptions& options,
                                      std::optional<int> precision) {
  ExtremalReport report;
  report.n = n;
  report.degrees = degrees;
  report.precision = precision.value_or((degrees.empty() ? 0 : degrees.max()) + 10);
  std::vector<ExtremalCandidate> all;
  for (auto& ideal : enumerate_monomial_ideals(n, degrees, options)) {
    ExtremalCandidate c;
    c.rational = monomial_rational_series(ideal);
    c.series = expand(c.rational, report.precision);
    c.ideal = std::move(ideal);
    all.push_back(std::move(c));
  }
  report.examined = all.size();
  if (all.empty()) return report;

  std::size_t lex_best = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool dominated = false;
    bool dominates_all = true;
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (i == j) continue;
      const auto cmp = compare_exact(all[i].rational, all[j].rational);
      if (cmp.coefficientwise == CoefficientOrder::less) dominated = true;
      if (cmp.coefficientwise == CoefficientOrder::less || cmp.coefficientwise == CoefficientOrder::incomparable) {
        dominates_all = false;
      }
    }
    if (!dominated) report.maximal.push_back(all[i]);
    if (dominates_all) report.unique_maximum = true;
    if (i > 0 && compare_exact(all[i].rational, all[lex_best].rational).lexicographic > 0) lex_best = i;
  }
  report.lex_maximum = all[lex_best];

  if (n == 2 && !degrees.empty()) {
    const int r = degrees.size();
    const RationalSeries bound = as_rational(max_series_two_vars_numerator(degrees), 2);
    bool attained = false;
    for (const auto& c : all) {
      const auto cmp = compare_exact(c.rational, bound);
      if (cmp.coefficientwise == CoefficientOrder::equal) attained = true;
      if (cmp.coefficientwise == CoefficientOrder::greater || cmp.coefficientwise == CoefficientOrder::incomparable) {
        throw InvariantViolation("series of " + format_ideal(c.ideal) + " exceeds the two-variable bound");
      }
    }
    if (degrees[r - 1] >= r && !attained) {
      throw InvariantViolation("no enumerated ideal attains the two-variable bound");
    }
    report.agrees_with_two_variable_bound = true;
  }
  return report;
}

void to_json(nlohmann::json& j, const MonomialIdeal& ideal) {
  j = nlohmann::json{{"n", ideal.n}, {"generators", ideal.generators}, {"text", format_ideal(ideal)}};
}

void to_json(nlohmann::json& j, const ExtremalReport& report) {
  auto candidate = [](const ExtremalCandidate& c) {
    nlohmann::json numerator = nlohmann::json::array();
    for (const auto& v : c.rational.numerator) numerator.push_back(integer_to_json(v));
    return nlohmann::json{{"ideal", c.ideal}, {"series", c.series}, {"numerator", numerator}};
  };
  j = nlohmann::json{{"n", report.n},
                     {"degrees", std::vector<int>(report.degrees.begin(), report.degrees.end())},
                     {"precision", report.precision},
                     {"examined", report.examined},
                     {"unique_maximum", report.unique_maximum}};
  j["maximal"] = nlohmann::json::array();
  for (const auto& c : report.maximal) j["maximal"].push_back(candidate(c));
  if (report.examined > 0) j["lex_maximum"] = candidate(report.lex_maximum);
  if (report.agrees_with_two_variable_bound) j["agrees_with_two_variable_bound"] = *report.agrees_with_two_variable_bound;
}

}  // namespace hilbert
