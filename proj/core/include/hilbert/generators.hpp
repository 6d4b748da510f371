#pragma once

// Declarative ideal generators and their realization as concrete forms.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hilbert/algebra.hpp"
#include "hilbert/field.hpp"

namespace hilbert {

struct GeneratorSpec;

/// A form with uniformly random coefficients in the given (multi)degree.
struct Generic {
  Grade grade;
};
/// g^k for a generic form g of degree `degree`.
struct PowerOfGeneric {
  int degree;
  int exponent;
};
/// g_1 ... g_k with g_i generic of the listed degrees.
struct ProductOfGenerics {
  std::vector<int> degrees;
};
/// l_1^{e_1} ... l_k^{e_k} with generic linear forms l_i.
struct ProductOfLinearPowers {
  std::vector<int> exponents;
};
/// l^d for a generic linear form l.
struct PowerOfLinear {
  int degree;
};
/// x_i^d, variables numbered from 0.
struct VariablePower {
  int degree;
  int variable;
};
/// (sum of the variables in `subset`)^d; the subset has odd size.
struct SumOddVariables {
  int degree;
  std::vector<int> subset;
};
/// (x_1 + s_2 x_2 + ... + s_n x_n)^d with signs s_i = +-1.
struct SignedSumPower {
  int degree;
  std::vector<int> signs;
};
/// Random combination of the commutators [x_i, x_j], i < j.
struct LieQuadratic {};
/// [x_i, x_j], variables numbered from 0.
struct Commutator {
  int i;
  int j;
};
struct Explicit {
  Form form;
  /// The form as written, for descriptions.
  std::string text;
};
/// Every product of `power` of the forms realized from `inner`, with repetition.
struct IdealPower {
  int power;
  std::vector<GeneratorSpec> inner;
};

struct GeneratorSpec {
  std::variant<Generic, PowerOfGeneric, ProductOfGenerics, ProductOfLinearPowers, PowerOfLinear, VariablePower,
               SumOddVariables, SignedSumPower, LieQuadratic, Commutator, Explicit, IdealPower>
      value;
};

GeneratorSpec generic(int degree);
GeneratorSpec generic(Grade grade);

/// The spec as one term of the generator language, e.g. "genpow:2^3".
std::string describe(const GeneratorSpec& spec);

/// Comma-separated terms, runs of equal terms folded into "term x count".
std::string describe(const std::vector<GeneratorSpec>& specs);

/// Parses the generator language: comma-separated terms `kind:params`,
/// most of them with an optional repeat count `xR`.
///
///   generic:D  generic:D1/D2 (multidegree)   genpow:D^K   prodgen:D1+D2
///   prodlin:E1+E2   linpow:D   varpow:D (every variable)   varpow:D@I
///   oddsum:D (every odd subset)   oddsum:D@I+J+K   signedsum:D (every sign
///   pattern)   signedsum:D@+-+   lie:2   commutator:I-J
///   fl-family:q=Q | fl-family:q=inf   explicit:<polynomial>
///   idealpow:s=S(<terms>)
///
/// Variables are numbered from 1. Throws std::invalid_argument.
std::vector<GeneratorSpec> parse_generator_specs(std::string_view text, const AlgebraKind& kind,
                                                 const PrimeField& field);

/// Number of forms the spec expands to.
std::size_t form_count(const GeneratorSpec& spec);

/// Realizes the specs in order. The result only depends on (kind, specs,
/// field, seed). Random forms that come out zero are redrawn a bounded number
/// of times; std::runtime_error after that. std::invalid_argument when a spec
/// does not fit the algebra.
std::vector<Form> realize_generators(const AlgebraKind& kind, const std::vector<GeneratorSpec>& specs,
                                     const PrimeField& field, std::uint64_t seed);

/// Three quadratic relations in four tensor variables whose quotient has
/// series (1 - 4z + 3z^2 - z^{q+3})^{-1}: x1x2 - x1x3, x2x3 - x3x2 + x2^2/q,
/// x3x4. Without q the x2^2 term is dropped and the series is (1 - 4z + 3z^2)^{-1}.
/// In x1 x2^m x3 = (1 - m/q) x1 x2^{m+1} the coefficient vanishes at m = q,
/// which frees the word x1 x2^{q+1} x4.
std::vector<Form> froberg_lofwall_relations(const PrimeField& field, std::optional<int> q);

/// Seed of the `index`-th derived stream (splitmix64 of master and index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace hilbert
