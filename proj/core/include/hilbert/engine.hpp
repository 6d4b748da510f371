#pragma once

// Hilbert series of quotient algebras computed from ranks of Macaulay
// matrices over a prime field.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hilbert/algebra.hpp"
#include "hilbert/field.hpp"
#include "hilbert/generators.hpp"
#include "hilbert/series.hpp"

namespace hilbert {

/// Largest Macaulay matrix (columns) the engine will build.
inline constexpr std::size_t kDefaultColumnCap = std::size_t{1} << 20;

struct DegreeRank {
  Grade grade;
  std::size_t ambient_dim = 0;
  std::size_t ideal_rank = 0;
  std::size_t quotient_dim = 0;
  /// Quotient dimension seen by each trial that ran.
  std::vector<std::size_t> trial_quotient_dims;
};

struct RankProfile {
  std::vector<DegreeRank> degrees;
};

void to_json(nlohmann::json& j, const RankProfile& profile);

struct EngineOptions {
  PrimeField field{};
  std::uint64_t seed = 0;
  int trials = 3;
  /// Stop early once a trial attains the proven lower bound, which no later
  /// trial can undercut.
  bool stop_at_lower_bound = true;
  std::size_t column_cap = kDefaultColumnCap;
};

struct QuotientResult {
  TruncatedSeries series;
  RankProfile profile;
  std::vector<std::uint64_t> trial_seeds;
};

struct MultiQuotientResult {
  TruncatedMultiSeries series;
  RankProfile profile;
  std::vector<std::uint64_t> trial_seeds;
};

/// Dimension of the ideal generated by `generators` in one graded piece.
/// Tensor ideals are two-sided and the matrix lists every w f w'. Throws
/// ResourceError above `column_cap` columns.
std::size_t macaulay_rank(const AlgebraKind& kind, std::span<const Form> generators, const Grade& grade,
                          const PrimeField& field, std::size_t column_cap = kDefaultColumnCap);

/// Quotient dimensions in degrees 0..max_degree for one concrete generator
/// set (singly graded families). Tensor quotients are built degree by degree
/// as cokernels, without enumerating two-sided multiples.
std::vector<std::size_t> quotient_dimensions(const AlgebraKind& kind, std::span<const Form> generators,
                                             int max_degree, const PrimeField& field,
                                             std::size_t column_cap = kDefaultColumnCap);

/// Same for the tensor algebra in n variables; exposed for testing.
std::vector<std::size_t> tensor_quotient_dimensions(int n, std::span<const Form> generators, int max_degree,
                                                    const PrimeField& field, std::size_t column_cap = kDefaultColumnCap);

/// Quotient dimensions on the box 0 <= grade <= precisions of a multigraded
/// algebra, row-major.
std::vector<std::size_t> multigraded_quotient_dimensions(const AlgebraKind& kind, std::span<const Form> generators,
                                                         std::span<const int> precisions, const PrimeField& field,
                                                         std::size_t column_cap = kDefaultColumnCap);

/// The proven lower bound for the family (Froberg, exterior or Anick
/// expected series) for the given generators; nothing for multigraded kinds.
std::optional<TruncatedSeries> lower_bound_series(const AlgebraKind& kind, std::span<const Form> generators,
                                                  int precision);

struct LowerBoundStats {
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
};

/// Lower-bound checks made by quotient_series since process start.
LowerBoundStats lower_bound_stats();

/// Coefficientwise minimum over independent trials. Each trial is checked
/// against lower_bound_series; a violation throws InvariantViolation.
QuotientResult quotient_series(const AlgebraKind& kind, const std::vector<GeneratorSpec>& specs, int max_degree,
                               const EngineOptions& options = {});

MultiQuotientResult multigraded_quotient_series(const AlgebraKind& kind, const std::vector<GeneratorSpec>& specs,
                                                std::span<const int> precisions, const EngineOptions& options = {});

/// Lead monomials of the ideal in each degree 0..max_degree (commutative
/// only), in descending degrevlex order: the pivots of the Macaulay matrix
/// whose columns run from the largest monomial down.
std::vector<std::vector<MonomialKey>> initial_ideal_leads(const AlgebraKind& kind, std::span<const Form> generators,
                                                          int max_degree, const PrimeField& field,
                                                          std::size_t column_cap = kDefaultColumnCap);

struct AlmostDegrevlexResult {
  bool holds = true;
  /// (m, m'): m is in the ideal, m' is larger of the same degree and is not.
  std::optional<std::pair<MonomialKey, MonomialKey>> witness;
};

/// Whether every degree's lead set is an initial segment in degrevlex order.
AlmostDegrevlexResult is_almost_degrevlex(const std::vector<std::vector<MonomialKey>>& leads, int n);

struct MultiplicationRank {
  std::size_t rank = 0;
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  bool maximal() const { return rank == std::min(source_dim, target_dim); }
};

/// Rank of multiplication by `multiplier` from A_i to A_{i+d} where A is the
/// quotient by `generators` (commutative or exterior).
MultiplicationRank multiplication_rank(const AlgebraKind& kind, std::span<const Form> generators,
                                       const Form& multiplier, int i, const PrimeField& field,
                                       std::size_t column_cap = kDefaultColumnCap);

/// Rank of multiplication by the variable `variable` on the quotient of the
/// polynomial ring by a monomial ideal given through its monomials per degree.
MultiplicationRank monomial_multiplication_rank(int n, const std::vector<std::vector<MonomialKey>>& ideal_by_degree,
                                                int variable, int i);

}  // namespace hilbert
