#pragma once

#include <cstdint>

namespace hilbert {

inline constexpr std::uint32_t kDefaultPrime = 32003;

/// Arithmetic in F_p for a prime 2 <= p < 2^31. Elements are canonical
/// representatives in [0, p).
class PrimeField {
 public:
  /// Throws std::invalid_argument unless `p` is a prime below 2^31.
  explicit PrimeField(std::uint32_t p = kDefaultPrime);

  std::uint32_t prime() const { return p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    const std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  std::uint32_t reduce(std::uint64_t a) const { return static_cast<std::uint32_t>(a % p_); }
  std::uint32_t from_int(std::int64_t v) const;
  /// Throws std::domain_error for 0.
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

  /// Symmetric lift to (-p/2, p/2], used when printing.
  std::int64_t lift(std::uint32_t a) const { return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : a; }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

}  // namespace hilbert
