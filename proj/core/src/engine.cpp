#include "hilbert/engine.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "hilbert/echelon.hpp"
#include "hilbert/errors.hpp"

namespace hilbert {

namespace {

void require_columns(std::size_t columns, std::size_t cap) {
  if (columns > cap) {
    throw ResourceError("Macaulay matrix with " + std::to_string(columns) + " columns exceeds the cap of " +
                        std::to_string(cap));
  }
}

bool fits_below(const Grade& small, const Grade& big) {
  for (std::size_t i = 0; i < small.size(); ++i) {
    if (small[i] > big[i]) return false;
  }
  return true;
}

Grade difference(const Grade& big, const Grade& small) {
  Grade g = big;
  for (std::size_t i = 0; i < g.size(); ++i) g[i] -= small[i];
  return g;
}

// Rows m*f for every generator f and monomial m of complementary grade.
template <class Sink>
void commutative_rows(const AlgebraKind& kind, std::span<const Form> generators, const Grade& grade,
                      const BasisIndex& columns, const PrimeField& field, Sink&& sink) {
  std::vector<MatrixEntry> row;
  for (const auto& f : generators) {
    if (f.is_zero() || !fits_below(f.grade, grade)) continue;
    const auto multipliers = monomial_basis(kind, difference(grade, f.grade));
    for (const auto& m : multipliers) {
      row.clear();
      for (const auto& [key, c] : f.terms) {
        auto prod = multiply_monomials(kind, m, key);
        if (!prod) continue;
        row.push_back({columns.index(prod->first), prod->second < 0 ? field.neg(c) : c});
      }
      if (!row.empty()) sink(std::span<const MatrixEntry>(row));
    }
  }
}

std::uint64_t word_index(std::span<const std::uint8_t> word, std::uint64_t n) {
  std::uint64_t idx = 0;
  for (auto a : word) idx = idx * n + a;
  return idx;
}

std::size_t tensor_macaulay_rank(const AlgebraKind& kind, std::span<const Form> generators, int t,
                                 const PrimeField& field, std::size_t cap) {
  const std::size_t columns = basis_size(kind, {t});
  require_columns(columns, cap);
  const auto n = static_cast<std::uint64_t>(kind.variables());
  RowEchelon echelon(field, columns, RowEchelon::Tail::keep);
  std::vector<MatrixEntry> row;
  for (const auto& f : generators) {
    const int d = f.grade[0];
    if (f.is_zero() || d > t) continue;
    for (int left = 0; left <= t - d; ++left) {
      const int right = t - d - left;
      const auto left_words = monomial_basis(kind, {left});
      const auto right_words = monomial_basis(kind, {right});
      std::uint64_t right_scale = 1;
      for (int i = 0; i < right; ++i) right_scale *= n;
      std::uint64_t middle_scale = 1;
      for (int i = 0; i < d + right; ++i) middle_scale *= n;
      for (const auto& w : left_words) {
        const std::uint64_t wi = word_index(w, n) * middle_scale;
        for (const auto& v : right_words) {
          const std::uint64_t vi = word_index(v, n);
          row.clear();
          for (const auto& [key, c] : f.terms) {
            row.push_back({static_cast<std::uint32_t>(wi + word_index(key, n) * right_scale + vi), c});
          }
          echelon.insert(row);
          if (echelon.rank() == columns) return columns;
        }
      }
    }
  }
  return echelon.rank();
}

std::vector<int> form_degrees(std::span<const Form> generators) {
  std::vector<int> degrees;
  for (const auto& f : generators) {
    if (!f.is_zero()) degrees.push_back(f.grade.at(0));
  }
  return degrees;
}

std::atomic<std::uint64_t> lower_bound_checks{0};
std::atomic<std::uint64_t> lower_bound_violations{0};

void check_lower_bound(const AlgebraKind& kind, std::span<const Form> generators, const TruncatedSeries& computed,
                       std::uint64_t seed) {
  const auto bound = lower_bound_series(kind, generators, computed.precision());
  if (!bound) return;
  lower_bound_checks.fetch_add(1, std::memory_order_relaxed);
  for (int t = 0; t <= computed.precision(); ++t) {
    if (computed[t] < (*bound)[t]) {
      lower_bound_violations.fetch_add(1, std::memory_order_relaxed);
      std::ostringstream msg;
      msg << "quotient of " << kind.name() << " (seed " << seed << ") has dimension " << computed[t].get_str()
          << " in degree " << t << ", below the proven lower bound " << (*bound)[t].get_str();
      throw InvariantViolation(msg.str());
    }
  }
}

}  // namespace

LowerBoundStats lower_bound_stats() {
  return {lower_bound_checks.load(std::memory_order_relaxed), lower_bound_violations.load(std::memory_order_relaxed)};
}

void to_json(nlohmann::json& j, const RankProfile& profile) {
  j = nlohmann::json::array();
  for (const auto& d : profile.degrees) {
    j.push_back({{"grade", d.grade},
                 {"ambient_dim", d.ambient_dim},
                 {"ideal_rank", d.ideal_rank},
                 {"quotient_dim", d.quotient_dim},
                 {"trials", d.trial_quotient_dims}});
  }
}

std::size_t macaulay_rank(const AlgebraKind& kind, std::span<const Form> generators, const Grade& grade,
                          const PrimeField& field, std::size_t column_cap) {
  if (kind.family() == AlgebraFamily::tensor) return tensor_macaulay_rank(kind, generators, grade.at(0), field, column_cap);
  const std::size_t columns = basis_size(kind, grade);
  require_columns(columns, column_cap);
  if (columns == 0) return 0;
  const BasisIndex index(kind, grade);
  RowEchelon echelon(field, columns, RowEchelon::Tail::keep);
  commutative_rows(kind, generators, grade, index, field, [&](std::span<const MatrixEntry> row) {
    if (echelon.rank() < columns) echelon.insert(row);
  });
  return echelon.rank();
}

std::vector<std::size_t> quotient_dimensions(const AlgebraKind& kind, std::span<const Form> generators,
                                             int max_degree, const PrimeField& field, std::size_t column_cap) {
  if (kind.grading_rank() != 1) throw std::invalid_argument("quotient_dimensions needs a singly graded algebra");
  if (kind.family() == AlgebraFamily::tensor) {
    return tensor_quotient_dimensions(kind.variables(), generators, max_degree, field, column_cap);
  }
  std::vector<std::size_t> dims;
  for (int t = 0; t <= max_degree; ++t) {
    // The algebra is generated in degree one, so a zero piece stays zero.
    if (t > 0 && dims.back() == 0) {
      dims.push_back(0);
      continue;
    }
    const std::size_t ambient = basis_size(kind, {t});
    dims.push_back(ambient - macaulay_rank(kind, generators, {t}, field, column_cap));
  }
  return dims;
}

std::vector<std::size_t> multigraded_quotient_dimensions(const AlgebraKind& kind, std::span<const Form> generators,
                                                         std::span<const int> precisions, const PrimeField& field,
                                                         std::size_t column_cap) {
  if (static_cast<int>(precisions.size()) != kind.grading_rank()) {
    throw std::invalid_argument("one precision per variable group is required");
  }
  TruncatedMultiSeries shape(std::vector<int>(precisions.begin(), precisions.end()));
  const std::size_t cells = shape.flat().size();
  std::vector<std::size_t> dims(cells, 0);
  for (std::size_t pos = 0; pos < cells; ++pos) {
    const auto grade = shape.unflatten(pos);
    // Zero below in any direction forces zero here.
    bool forced_zero = false;
    for (std::size_t g = 0; g < grade.size() && !forced_zero; ++g) {
      if (grade[g] == 0) continue;
      auto below = grade;
      --below[g];
      forced_zero = dims[shape.flat_index(below)] == 0;
    }
    if (forced_zero) continue;
    dims[pos] = basis_size(kind, grade) - macaulay_rank(kind, generators, grade, field, column_cap);
  }
  return dims;
}

std::optional<TruncatedSeries> lower_bound_series(const AlgebraKind& kind, std::span<const Form> generators,
                                                  int precision) {
  if (kind.grading_rank() != 1) return std::nullopt;
  const DegreeSequence degrees(form_degrees(generators));
  switch (kind.family()) {
    case AlgebraFamily::commutative:
      return froberg_series(kind.variables(), degrees, precision);
    case AlgebraFamily::exterior:
      return exterior_expected_series(kind.variables(), degrees, precision);
    case AlgebraFamily::tensor:
      return anick_series(kind.variables(), degrees, precision);
    case AlgebraFamily::multigraded:
      break;
  }
  return std::nullopt;
}

QuotientResult quotient_series(const AlgebraKind& kind, const std::vector<GeneratorSpec>& specs, int max_degree,
                               const EngineOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("at least one trial is required");
  if (max_degree < 0) throw std::invalid_argument("max degree must be non-negative");
  QuotientResult result;
  std::vector<std::size_t> best;
  std::vector<std::vector<std::size_t>> per_trial;
  for (int trial = 0; trial < options.trials; ++trial) {
    const std::uint64_t seed = derive_seed(options.seed, static_cast<std::uint64_t>(trial));
    result.trial_seeds.push_back(seed);
    const auto forms = realize_generators(kind, specs, options.field, seed);
    auto dims = quotient_dimensions(kind, forms, max_degree, options.field, options.column_cap);
    std::vector<Integer> coeffs;
    for (auto d : dims) coeffs.emplace_back(static_cast<unsigned long>(d));
    const TruncatedSeries trial_series(coeffs);
    check_lower_bound(kind, forms, trial_series, seed);
    if (best.empty()) {
      best = dims;
    } else {
      for (std::size_t t = 0; t < best.size(); ++t) best[t] = std::min(best[t], dims[t]);
    }
    per_trial.push_back(std::move(dims));
    if (options.stop_at_lower_bound) {
      const auto bound = lower_bound_series(kind, forms, max_degree);
      if (bound && *bound == trial_series) break;
    }
  }
  std::vector<Integer> coeffs;
  for (std::size_t t = 0; t < best.size(); ++t) {
    coeffs.emplace_back(static_cast<unsigned long>(best[t]));
    DegreeRank row;
    row.grade = {static_cast<int>(t)};
    row.ambient_dim = basis_size(kind, row.grade);
    row.quotient_dim = best[t];
    row.ideal_rank = row.ambient_dim - best[t];
    for (const auto& dims : per_trial) row.trial_quotient_dims.push_back(dims[t]);
    result.profile.degrees.push_back(std::move(row));
  }
  result.series = TruncatedSeries(std::move(coeffs));
  return result;
}

MultiQuotientResult multigraded_quotient_series(const AlgebraKind& kind, const std::vector<GeneratorSpec>& specs,
                                                std::span<const int> precisions, const EngineOptions& options) {
  if (options.trials < 1) throw std::invalid_argument("at least one trial is required");
  MultiQuotientResult result;
  std::vector<std::size_t> best;
  std::vector<std::vector<std::size_t>> per_trial;
  for (int trial = 0; trial < options.trials; ++trial) {
    const std::uint64_t seed = derive_seed(options.seed, static_cast<std::uint64_t>(trial));
    result.trial_seeds.push_back(seed);
    const auto forms = realize_generators(kind, specs, options.field, seed);
    auto dims = multigraded_quotient_dimensions(kind, forms, precisions, options.field, options.column_cap);
    if (best.empty()) {
      best = dims;
    } else {
      for (std::size_t i = 0; i < best.size(); ++i) best[i] = std::min(best[i], dims[i]);
    }
    per_trial.push_back(std::move(dims));
  }
  const std::vector<int> prec(precisions.begin(), precisions.end());
  TruncatedMultiSeries shape(prec);
  std::vector<Integer> coeffs;
  for (std::size_t i = 0; i < best.size(); ++i) {
    coeffs.emplace_back(static_cast<unsigned long>(best[i]));
    DegreeRank row;
    row.grade = shape.unflatten(i);
    row.ambient_dim = basis_size(kind, row.grade);
    row.quotient_dim = best[i];
    row.ideal_rank = row.ambient_dim - best[i];
    for (const auto& dims : per_trial) row.trial_quotient_dims.push_back(dims[i]);
    result.profile.degrees.push_back(std::move(row));
  }
  result.series = TruncatedMultiSeries(prec, std::move(coeffs));
  return result;
}

std::vector<std::vector<MonomialKey>> initial_ideal_leads(const AlgebraKind& kind, std::span<const Form> generators,
                                                          int max_degree, const PrimeField& field,
                                                          std::size_t column_cap) {
  if (kind.family() != AlgebraFamily::commutative) throw std::invalid_argument("initial ideals need a commutative ring");
  std::vector<std::vector<MonomialKey>> leads;
  for (int t = 0; t <= max_degree; ++t) {
    const BasisIndex index(kind, {t});
    require_columns(index.size(), column_cap);
    if (t > 0 && leads.back().size() == basis_size(kind, {t - 1})) {
      leads.push_back(index.monomials());
      continue;
    }
    RowEchelon echelon(field, index.size(), RowEchelon::Tail::keep);
    commutative_rows(kind, generators, {t}, index, field, [&](std::span<const MatrixEntry> row) {
      if (echelon.rank() < index.size()) echelon.insert(row);
    });
    std::vector<MonomialKey> degree_leads;
    for (auto c : echelon.pivot_columns()) degree_leads.push_back(index.monomials()[c]);
    leads.push_back(std::move(degree_leads));
  }
  return leads;
}

AlmostDegrevlexResult is_almost_degrevlex(const std::vector<std::vector<MonomialKey>>& leads, int n) {
  const auto kind = AlgebraKind::commutative(n);
  for (std::size_t t = 0; t < leads.size(); ++t) {
    if (leads[t].empty()) continue;
    const std::set<MonomialKey> members(leads[t].begin(), leads[t].end());
    const auto basis = monomial_basis(kind, {static_cast<int>(t)});
    std::optional<MonomialKey> first_missing;
    for (const auto& m : basis) {
      const bool in = members.count(m) > 0;
      if (!in && !first_missing) first_missing = m;
      if (in && first_missing) return {false, std::make_pair(m, *first_missing)};
    }
  }
  return {};
}

MultiplicationRank multiplication_rank(const AlgebraKind& kind, std::span<const Form> generators,
                                       const Form& multiplier, int i, const PrimeField& field,
                                       std::size_t column_cap) {
  if (kind.family() != AlgebraFamily::commutative && kind.family() != AlgebraFamily::exterior) {
    throw std::invalid_argument("multiplication ranks need a commutative or exterior algebra");
  }
  if (multiplier.grade.size() != 1) throw std::invalid_argument("multiplier needs a degree");
  const int d = multiplier.grade[0];
  MultiplicationRank out;
  out.source_dim = basis_size(kind, {i}) - macaulay_rank(kind, generators, {i}, field, column_cap);
  const Grade target{i + d};
  const std::size_t columns = basis_size(kind, target);
  require_columns(columns, column_cap);
  const BasisIndex index(kind, target);
  RowEchelon echelon(field, columns, RowEchelon::Tail::keep);
  commutative_rows(kind, generators, target, index, field, [&](std::span<const MatrixEntry> row) {
    if (echelon.rank() < columns) echelon.insert(row);
  });
  const std::size_t ideal_rank = echelon.rank();
  out.target_dim = columns - ideal_rank;
  const Form products[] = {multiplier};
  // Rows m * g for the degree-i monomials m span the image of the multiplication.
  commutative_rows(kind, std::span<const Form>(products), target, index, field, [&](std::span<const MatrixEntry> row) {
    if (echelon.rank() < columns) echelon.insert(row);
  });
  out.rank = echelon.rank() - ideal_rank;
  return out;
}

MultiplicationRank monomial_multiplication_rank(int n, const std::vector<std::vector<MonomialKey>>& ideal_by_degree,
                                                int variable, int i) {
  if (i < 0 || static_cast<std::size_t>(i + 1) >= ideal_by_degree.size()) {
    throw std::invalid_argument("ideal monomials are needed in degrees i and i+1");
  }
  const auto kind = AlgebraKind::commutative(n);
  const std::set<MonomialKey> source_ideal(ideal_by_degree[static_cast<std::size_t>(i)].begin(),
                                           ideal_by_degree[static_cast<std::size_t>(i)].end());
  const std::set<MonomialKey> target_ideal(ideal_by_degree[static_cast<std::size_t>(i + 1)].begin(),
                                           ideal_by_degree[static_cast<std::size_t>(i + 1)].end());
  MultiplicationRank out;
  for (const auto& m : monomial_basis(kind, {i})) {
    if (source_ideal.count(m)) continue;
    ++out.source_dim;
    MonomialKey image = m;
    ++image[static_cast<std::size_t>(variable)];
    if (!target_ideal.count(image)) ++out.rank;
  }
  for (const auto& m : monomial_basis(kind, {i + 1})) {
    if (!target_ideal.count(m)) ++out.target_dim;
  }
  return out;
}

}  // namespace hilbert
