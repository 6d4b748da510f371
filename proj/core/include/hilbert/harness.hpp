#pragma once

// Checks of expected-series claims against engine computations, single
// cells and parameter grids.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hilbert/series.hpp"

namespace hilbert {

enum class CheckId {
  froberg,
  stanley_subst,
  powers,
  products,
  linpower_products,
  ideal_power,
  hl_degree,
  linpowers_iarrobino,
  mixed_linpowers,
  odd_sums,
  signed_sums,
  wlp,
  slp,
  mrp,
  almost_revlex,
  pa_ranks,
  tensor_generic,
  tensor_fl_family,
  lie_quadratic,
  lie_commutator_example,
  exterior_generic,
  exterior_paths,
  exterior_vs_squares,
  bigraded,
  multi_p1,
  poschar,
};

/// Every check, in declaration order.
const std::vector<CheckId>& all_checks();
/// "froberg", "stanley-subst", ...
std::string_view to_string(CheckId id);
/// Accepts the dashed names, underscores and any letter case.
std::optional<CheckId> parse_check_id(std::string_view name);

enum class Expectation { must_match, must_differ, report };
std::string_view to_string(Expectation e);
std::optional<Expectation> parse_expectation(std::string_view text);

enum class Verdict { match, mismatch, incomparable };
std::string_view to_string(Verdict v);

/// Parameters of one check. Which fields a check reads:
///
///   froberg, hl-degree, almost-revlex, pa-ranks,
///   tensor-generic, exterior-generic     n, degrees
///   stanley-subst     n, degrees (x_i^{d_i} for the first n, generic after)
///   powers            n, degrees (of the g_i), k (exponent)
///   products          n, r, degrees (factor degrees of each product)
///   linpower-products n, r, degrees (exponents of the linear factors)
///   ideal-power       n, degrees (of the inner generic forms), s
///   linpowers-iarrobino  n, d, r
///   mixed-linpowers   n, linear_degrees (powers of linear forms), degrees
///   odd-sums          n, d
///   signed-sums       d (in four variables)
///   wlp, slp, mrp     n, degrees or gens (the quotient), k (largest
///                     multiplier degree for slp and mrp, 0 = all)
///   tensor-fl-family  q (absent = no q term)
///   lie-quadratic     n, r
///   lie-commutator-example, exterior-paths   n
///   exterior-vs-squares  n, k (number of linear forms)
///   bigraded          m, n, multidegrees (pairs)
///   multi-p1          n (factors), multidegrees
///   poschar           n, d, prime
struct CheckSpec {
  CheckId check = CheckId::froberg;
  int n = 3;
  int m = 1;
  std::vector<int> degrees;
  std::vector<int> linear_degrees;
  std::vector<std::vector<int>> multidegrees;
  int d = 2;
  int r = 0;
  int k = 2;
  int s = 2;
  std::optional<int> q;
  std::string gens;
  std::uint32_t prime = 32003;
  std::uint64_t seed = 0;
  int trials = 3;
  std::optional<int> precision;
  bool strict = true;
  /// Expectation asked for by the caller. Recorded; the knowledge-state
  /// default decides pass/fail.
  std::optional<Expectation> requested;
};

/// Proved results must match, known counterexamples must differ, open
/// questions are reported only.
Expectation default_expectation(const CheckSpec& spec);

/// The parameters the check reads, as JSON.
nlohmann::json params_to_json(const CheckSpec& spec);
/// Inverse of params_to_json (missing keys keep their defaults).
CheckSpec spec_from_json(const nlohmann::json& j);
/// "n=3 degrees=2,2,2"
std::string params_text(const CheckSpec& spec);

struct VerificationReport {
  CheckSpec spec;
  Expectation expectation = Expectation::report;
  /// Coefficient arrays of equal shape, row-major.
  std::vector<int> shape;
  std::vector<Integer> computed;
  std::vector<Integer> reference;
  Verdict verdict = Verdict::match;
  CoefficientOrder order = CoefficientOrder::equal;
  std::optional<std::vector<int>> first_divergence;
  std::optional<bool> expectation_met;
  std::vector<std::uint32_t> primes;
  std::vector<std::uint64_t> trial_seeds;
  nlohmann::json details = nlohmann::json::object();
  double wall_time_s = 0;
};

/// Runs one check. Engine exceptions propagate.
VerificationReport check(const CheckSpec& spec);

/// schema 1 report object; `with_timing` adds wall_time_s.
nlohmann::json to_json(const VerificationReport& report, bool with_timing = true);

struct RecheckResult {
  bool consistent = false;
  std::string message;
};

/// Recomputes verdict, divergence and expectation from the embedded series.
RecheckResult recheck(const nlohmann::json& report);

/// Compares only the coefficient in degree min(d_i) + 1.
VerificationReport first_nontrivial_check(int n, const std::vector<int>& degrees, std::uint32_t prime,
                                          std::uint64_t seed);

// --- grids -------------------------------------------------------------------

struct GridCell {
  CheckSpec spec;
  std::optional<VerificationReport> report;
  /// Set when the check threw; kind is "resource", "invariant" or "invalid".
  std::optional<std::string> error;
  std::string error_kind;
};

struct GridSummary {
  std::size_t cells = 0;
  std::size_t matches = 0;
  std::size_t mismatches = 0;
  std::size_t incomparable = 0;
  std::size_t errors = 0;
  std::size_t expectations_met = 0;
  std::size_t expectations_violated = 0;
  std::size_t report_only = 0;
};

struct GridResult {
  std::vector<GridCell> cells;
  GridSummary summary;
};

/// Worker count: HF_THREADS if set, else the hardware concurrency.
unsigned worker_count();

/// Runs every cell (seeds must already be set), in parallel, results in cell
/// order. Errors are recorded per cell.
GridResult run_grid(const std::vector<CheckSpec>& cells, unsigned threads = 0);

/// Parses a grid description. Lines are `key = value`; `#` starts a comment;
/// `[name]` starts a new grid whose keys extend the ones given before the
/// first section. Values are comma-separated lists; integers accept ranges
/// `a..b`. Sequences (degrees, linear_degrees) are separated by `;` and may
/// use `DxR` for R copies of D. `degree_values` and `degree_sizes` together
/// generate every non-increasing degree sequence with entries in the first
/// set and length in the second. Multidegrees are `(a,b);(c,d)` lists whose
/// alternatives are separated by `|`. The grid is the product of all list
/// keys; cell i gets the seed derive_seed(seed, i).
std::vector<CheckSpec> parse_grid(std::string_view text);

/// "2,2,3x4" is 2,2,3,3,3,3; "()" is empty.
std::vector<int> parse_degree_list(std::string_view text);
/// "(2,1);(1,1)"
std::vector<std::vector<int>> parse_multidegree_list(std::string_view text);

nlohmann::json to_json(const GridSummary& summary);
std::string summary_table(const GridSummary& summary);
/// One line per cell: check, params, verdict, expectation.
std::string cells_table(const GridResult& result);

}  // namespace hilbert
