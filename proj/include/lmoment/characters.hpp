#pragma once

// Dirichlet characters mod q, represented by exponent vectors against a fixed
// set of generators of (Z/qZ)*.

#include "lmoment/arith.hpp"

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace lmoment {

using Complex = std::complex<double>;

/// exp(2 pi i k / n), exact at multiples of a quarter turn.
Complex unit_root(std::int64_t k, std::int64_t n);

namespace characters {

inline constexpr std::uint64_t kMaxModulus = 1'000'000;

/// One cyclic factor of the unit group. Odd prime powers, 2 and 4 give a
/// single component each; 2^e with e >= 3 gives two (generated by -1 and 5)
/// that share the same modulus.
struct Component {
  std::uint64_t prime = 1;
  unsigned exponent = 0;
  std::uint64_t modulus = 1;  // prime^exponent
  std::uint64_t order = 1;
  std::uint64_t generator = 1;
  /// dlog[u] for every residue u mod `modulus` that is a unit; 0 elsewhere.
  std::vector<std::uint32_t> dlog;
};

class CharGroup {
 public:
  /// Throws std::domain_error for q = 0 or q above kMaxModulus.
  explicit CharGroup(std::uint64_t q);

  std::uint64_t modulus() const { return q_; }
  const arith::Factorization& factorization() const { return fact_; }
  const std::vector<Component>& components() const { return components_; }
  std::uint64_t order() const;
  /// Least common multiple of the component orders.
  std::uint64_t exponent() const { return lcm_; }

 private:
  std::uint64_t q_;
  arith::Factorization fact_;
  std::vector<Component> components_;
  std::uint64_t lcm_ = 1;
};

std::shared_ptr<const CharGroup> build_group(std::uint64_t q);

class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const CharGroup> group,
                     std::vector<std::uint64_t> exponents);

  const CharGroup& group() const { return *group_; }
  const std::shared_ptr<const CharGroup>& group_ptr() const { return group_; }
  std::uint64_t modulus() const { return group_->modulus(); }
  const std::vector<std::uint64_t>& exponents() const { return exponents_; }

  int parity() const { return parity_; }
  std::uint64_t conductor() const { return conductor_; }
  bool primitive() const { return conductor_ == group_->modulus(); }
  bool is_principal() const;
  bool is_real() const;

  /// Numerator k of chi(n) = exp(2 pi i k / exponent()), or -1 when
  /// gcd(n, q) > 1.
  std::int64_t angle(std::int64_t n) const;
  Complex operator()(std::int64_t n) const;

  DirichletCharacter conj() const;

  /// Values chi(0), ..., chi(q - 1).
  std::vector<Complex> value_table() const;

  /// "q:e1,e2,..."
  std::string id() const;

  friend bool operator==(const DirichletCharacter& a,
                         const DirichletCharacter& b) {
    return a.modulus() == b.modulus() && a.exponents_ == b.exponents_;
  }

 private:
  std::shared_ptr<const CharGroup> group_;
  std::vector<std::uint64_t> exponents_;
  int parity_ = 0;
  std::uint64_t conductor_ = 1;
};

/// Characters in lexicographic exponent order (last component fastest).
std::vector<DirichletCharacter> enumerate_characters(
    const std::shared_ptr<const CharGroup>& group, bool primitive_only);

Complex char_eval(const DirichletCharacter& chi, std::int64_t n);
int parity(const DirichletCharacter& chi);
std::uint64_t conductor(const DirichletCharacter& chi);

/// sum_{a=1}^{q} chi(a) e(a/q) with compensated summation.
Complex gauss_sum(const DirichletCharacter& chi);

/// Parses "q:e1,e2,..." against `group` (or a freshly built group when null).
/// Throws std::invalid_argument on malformed ids.
DirichletCharacter parse_character(std::string_view id,
                                   std::shared_ptr<const CharGroup> group = {});

}  // namespace characters
}  // namespace lmoment
