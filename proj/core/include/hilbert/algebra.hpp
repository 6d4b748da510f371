#pragma once

// Ambient graded algebras, their monomial bases and forms with F_p coefficients.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hilbert/field.hpp"

namespace hilbert {

enum class AlgebraFamily { commutative, exterior, tensor, multigraded };

/// A degree (length 1) or multidegree (one entry per variable group).
using Grade = std::vector<int>;

/// Exponent vector (commutative, exterior, multigraded) or word of variable
/// indices (tensor).
using MonomialKey = std::vector<std::uint8_t>;

struct MonomialKeyHash {
  std::size_t operator()(const MonomialKey& key) const noexcept;
};

class AlgebraKind {
 public:
  static AlgebraKind commutative(int n);
  static AlgebraKind exterior(int n);
  static AlgebraKind tensor(int n);
  /// Coordinate ring of P^m x P^n: groups of m+1 and n+1 variables.
  static AlgebraKind bigraded(int m, int n);
  static AlgebraKind multigraded(std::vector<int> group_sizes);

  AlgebraFamily family() const { return family_; }
  int variables() const { return variables_; }
  /// Variable group sizes; a single group for the singly graded families.
  std::span<const int> groups() const { return groups_; }
  int grading_rank() const { return static_cast<int>(groups_.size()); }
  /// Group index of each variable.
  int group_of(int variable) const;

  std::string name() const;

  bool operator==(const AlgebraKind&) const = default;

 private:
  AlgebraKind(AlgebraFamily family, std::vector<int> groups);

  AlgebraFamily family_;
  int variables_;
  std::vector<int> groups_;
};

/// m > m' in degree reverse lexicographic order for exponent vectors of equal
/// degree: the last nonzero entry of m - m' is negative.
bool degrevlex_greater(const MonomialKey& a, const MonomialKey& b);

Grade grade_of(const AlgebraKind& kind, const MonomialKey& key);

/// Number of basis monomials of the given grade.
std::size_t basis_size(const AlgebraKind& kind, const Grade& grade);

/// All basis monomials of the given grade. Commutative and exterior bases are
/// in descending degrevlex order, tensor words in lex order, multigraded
/// bases in lex order on the tuple of per-group descending degrevlex ranks.
std::vector<MonomialKey> monomial_basis(const AlgebraKind& kind, const Grade& grade);

/// Position lookup for one graded piece.
class BasisIndex {
 public:
  BasisIndex(const AlgebraKind& kind, const Grade& grade);
  const std::vector<MonomialKey>& monomials() const { return monomials_; }
  std::size_t size() const { return monomials_.size(); }
  std::uint32_t index(const MonomialKey& key) const;

 private:
  std::vector<MonomialKey> monomials_;
  std::unordered_map<MonomialKey, std::uint32_t, MonomialKeyHash> index_;
};

/// Product of two basis monomials with its sign (+1/-1), or nothing when the
/// product vanishes (repeated exterior variable).
std::optional<std::pair<MonomialKey, int>> multiply_monomials(const AlgebraKind& kind, const MonomialKey& a,
                                                              const MonomialKey& b);

/// A homogeneous element with nonzero coefficients in F_p.
struct Form {
  Grade grade;
  std::map<MonomialKey, std::uint32_t> terms;

  bool is_zero() const { return terms.empty(); }
  bool operator==(const Form&) const = default;
};

Form monomial_form(const AlgebraKind& kind, MonomialKey key, std::uint32_t coefficient = 1);
Form multiply(const AlgebraKind& kind, const PrimeField& field, const Form& a, const Form& b);
Form power(const AlgebraKind& kind, const PrimeField& field, const Form& a, int exponent);
/// a + c*b; both must have the same grade.
Form add_scaled(const PrimeField& field, const Form& a, const Form& b, std::uint32_t c);
/// Commutator ab - ba.
Form commutator(const AlgebraKind& kind, const PrimeField& field, const Form& a, const Form& b);

/// Variables print as x1..xN; tensor words as x1*x2.
std::string format_monomial(const AlgebraKind& kind, const MonomialKey& key);
std::string format_form(const AlgebraKind& kind, const PrimeField& field, const Form& form);

/// Parses a homogeneous polynomial such as "x1*x2 - x2*x1 + 3*x3^2". Factors
/// multiply in the ambient algebra, so order matters for tensor and exterior
/// input. Throws std::invalid_argument on syntax errors or inhomogeneous input.
Form parse_form(const AlgebraKind& kind, const PrimeField& field, std::string_view text);

}  // namespace hilbert
