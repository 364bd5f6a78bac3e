#pragma once

// Exact integer kernel: factorization and the multiplicative functions
// built on it.

#include <cstdint>
#include <span>
#include <vector>

namespace lmoment::arith {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A positive integer together with its prime-power decomposition.
///
/// Primes are strictly increasing and the product of prime^exponent is n.
/// The factor list is empty exactly when n = 1.
class Factorization {
 public:
  Factorization() = default;

  std::uint64_t value() const { return n_; }
  std::span<const PrimePower> factors() const { return factors_; }

  bool is_one() const { return factors_.empty(); }

 private:
  friend Factorization factorize(std::uint64_t n);

  std::uint64_t n_ = 1;
  std::vector<PrimePower> factors_;
};

bool is_prime(std::uint64_t n);

/// Trial division, stopping as soon as the cofactor passes a deterministic
/// Miller-Rabin test. Throws std::domain_error for n = 0 or n >= 2^63.
Factorization factorize(std::uint64_t n);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
std::int64_t gcd_signed(std::int64_t a, std::int64_t b);

std::uint64_t euler_phi(const Factorization& f);
int moebius(const Factorization& f);
unsigned omega(const Factorization& f);
std::uint64_t divisor_count(const Factorization& f);

/// Number of primitive characters, sum_{d | q} mu(d) phi(q/d).
std::uint64_t phi_star(const Factorization& f);

/// All positive divisors in increasing order.
std::vector<std::uint64_t> divisors(const Factorization& f);

/// sum_{k | gcd(q, r)} phi(k) mu(q/k), with gcd(q, 0) = q.
std::int64_t orth_divisor_sum(const Factorization& q, std::int64_t r);

/// prod_{p | q} (1 - 1/p)^3 / (1 + 1/p), evaluated exactly and rounded once.
double euler_product_theorem1(const Factorization& q);

/// prod_{p | q} (1 - 1/p) / (1 + 1/p).
double euler_product_lemma6(const Factorization& q);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// omega(n) for 0 <= n <= limit via a linear sieve (entry 0 unused).
std::vector<std::uint8_t> omega_sieve(std::uint64_t limit);

}  // namespace lmoment::arith
