#pragma once

// Exact arithmetic in prime-power Galois fields GF(p^k), sized for the
// code constructions in this toolkit.  Elements are coefficient
// vectors of the residue polynomial modulo a canonical irreducible; all
// arithmetic is integer-exact.  Field orders are limited so that every
// intermediate product fits in a 64-bit signed range.

#include <cstdint>
#include <optional>
#include <vector>

namespace ssc::gf {

// Coefficient vector of a residue polynomial: c[i] multiplies x^i, each
// coefficient in [0, p-1], length equal to the field degree.
using FieldElement = std::vector<std::uint64_t>;

// Deterministic primality test by trial division.  u < 2 is not prime.
bool is_prime(std::uint64_t u) noexcept;

// Prime factorization in ascending order with multiplicity (trial
// division; intended for the small inputs used here).  Throws
// std::domain_error for u < 2.
std::vector<std::uint64_t> factorize(std::uint64_t u);

// Distinct prime divisors of u, ascending.  Throws for u < 2.
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t u);

// A validated prime-power decomposition q = p^n.
struct PrimePower {
  std::uint64_t p = 0;
  unsigned n = 0;
  std::uint64_t q = 0;
};

// Decomposes q as p^n.  Throws std::domain_error when q is not a prime
// power, q < 2, or q*q - 1 would leave the exact 64-bit signed range.
PrimePower prime_power(std::uint64_t q);

// Non-throwing variant; std::nullopt on any rejection.
std::optional<PrimePower> try_prime_power(std::uint64_t q) noexcept;

// Immutable context for GF(p^degree) arithmetic.  The modulus is the
// canonical monic irreducible of its degree: among all monic irreducible
// candidates, the one whose coefficient sequence read from the
// highest-degree term down to the constant term is smallest as a base-p
// integer.  Construction rejects field orders above sqrt(2^63) so that
// coefficient products and exponents stay exact.
class FieldCtx {
 public:
  // Builds GF(p^degree) with the canonical modulus.  Throws
  // std::domain_error when p is not prime, degree is 0, or p^degree is
  // out of range.
  FieldCtx(std::uint64_t p, unsigned degree);

  std::uint64_t p() const noexcept { return p_; }
  unsigned degree() const noexcept { return degree_; }
  // Field order p^degree.
  std::uint64_t order() const noexcept { return order_; }
  // Monic modulus coefficients, m[i] multiplying x^i, length degree+1.
  const std::vector<std::uint64_t>& modulus() const noexcept { return mod_; }

  FieldElement zero() const;
  FieldElement one() const;
  // Element of the prime subfield with constant term c % p.
  FieldElement scalar(std::uint64_t c) const;
  // Canonical enumeration: v in [0, order) read as base-p digits, the
  // constant term least significant.  value() is its inverse.
  FieldElement from_value(std::uint64_t v) const;
  std::uint64_t value(const FieldElement& a) const;

  bool is_zero(const FieldElement& a) const;

  // Ring operations; operands must belong to this context (length equal
  // to degree, coefficients below p) or std::domain_error is thrown.
  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement pow(const FieldElement& a, std::uint64_t e) const;

 private:
  void check(const FieldElement& a) const;

  std::uint64_t p_ = 0;
  unsigned degree_ = 0;
  std::uint64_t order_ = 0;
  std::vector<std::uint64_t> mod_;
};

// True when g generates the multiplicative group: g != 0 and
// g^((Q-1)/r) != 1 for every prime r dividing Q-1.  Throws for the zero
// element.
bool is_primitive(const FieldCtx& ctx, const FieldElement& g);

// First primitive element in the canonical enumeration order.
FieldElement find_primitive(const FieldCtx& ctx);

// Frobenius subfield test: x lies in the subfield of size q exactly when
// x^q == x.  Requires q = p^(degree/2) with even degree; other shapes
// throw std::domain_error.
bool in_subfield(const FieldCtx& ctx, const FieldElement& x, std::uint64_t q);

}  // namespace ssc::gf
