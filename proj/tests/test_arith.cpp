#include "lmoment/arith.hpp"

#include <boost/rational.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace lmoment::arith;

namespace {

// Oracles by direct counting.
std::uint64_t phi_naive(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

int mu_naive(std::uint64_t n) {
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  return n > 1 ? -sign : sign;
}

std::uint64_t d_naive(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t k = 1; k <= n; ++k) c += n % k == 0;
  return c;
}

std::int64_t phi_star_naive(std::uint64_t q) {
  std::int64_t s = 0;
  for (std::uint64_t d = 1; d <= q; ++d) {
    if (q % d == 0) s += mu_naive(d) * static_cast<std::int64_t>(phi_naive(q / d));
  }
  return s;
}

std::int64_t ods_naive(std::uint64_t q, std::int64_t r) {
  const std::uint64_t g = std::gcd(q, static_cast<std::uint64_t>(std::llabs(r)));
  std::int64_t s = 0;
  for (std::uint64_t k = 1; k <= g; ++k) {
    if (g % k == 0) s += static_cast<std::int64_t>(phi_naive(k)) * mu_naive(q / k);
  }
  return s;
}

bool prime_naive(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

}  // namespace

TEST(Factorize, Examples) {
  EXPECT_TRUE(factorize(1).is_one());
  auto f12 = factorize(12);
  ASSERT_EQ(f12.factors().size(), 2u);
  EXPECT_EQ(f12.factors()[0], (PrimePower{2, 2}));
  EXPECT_EQ(f12.factors()[1], (PrimePower{3, 1}));
  auto f97 = factorize(97);
  ASSERT_EQ(f97.factors().size(), 1u);
  EXPECT_EQ(f97.factors()[0], (PrimePower{97, 1}));
}

TEST(Factorize, RejectsOutOfRange) {
  EXPECT_THROW(factorize(0), std::domain_error);
  EXPECT_THROW(factorize(std::uint64_t{1} << 63), std::domain_error);
}

TEST(Factorize, ProductRoundTrip) {
  std::mt19937_64 gen(7);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t n = gen() % 4000000000000ull + 1;
    const auto f = factorize(n);
    std::uint64_t prod = 1;
    std::uint64_t last = 1;
    for (const auto& pp : f.factors()) {
      EXPECT_GT(pp.prime, last);
      EXPECT_TRUE(is_prime(pp.prime));
      last = pp.prime;
      for (unsigned e = 0; e < pp.exponent; ++e) prod *= pp.prime;
    }
    EXPECT_EQ(prod, n);
  }
  // Large semiprime and a large prime near 2^63.
  const std::uint64_t p = 4294967291ull, q = 2147483647ull;
  const auto f = factorize(p * q);
  ASSERT_EQ(f.factors().size(), 2u);
  EXPECT_EQ(f.factors()[0].prime, q);
  EXPECT_TRUE(is_prime(9223372036854775783ull));
}

TEST(IsPrime, AgreesWithTrialDivision) {
  for (std::uint64_t n = 0; n < 20000; ++n) EXPECT_EQ(is_prime(n), prime_naive(n)) << n;
  // Strong pseudoprimes to several small bases.
  EXPECT_FALSE(is_prime(3215031751ull));
  EXPECT_FALSE(is_prime(3825123056546413051ull));
}

TEST(Multiplicative, Examples) {
  EXPECT_EQ(euler_phi(factorize(1)), 1u);
  EXPECT_EQ(euler_phi(factorize(97)), 96u);
  EXPECT_EQ(euler_phi(factorize(12)), 4u);
  EXPECT_EQ(moebius(factorize(1)), 1);
  EXPECT_EQ(moebius(factorize(12)), 0);
  EXPECT_EQ(moebius(factorize(6)), 1);
  EXPECT_EQ(omega(factorize(1)), 0u);
  EXPECT_EQ(omega(factorize(12)), 2u);
  EXPECT_EQ(omega(factorize(30)), 3u);
  EXPECT_EQ(divisor_count(factorize(1)), 1u);
  EXPECT_EQ(divisor_count(factorize(101)), 2u);
  EXPECT_EQ(divisor_count(factorize(12)), 6u);
  EXPECT_EQ(phi_star(factorize(1)), 1u);
  EXPECT_EQ(phi_star(factorize(2)), 0u);
  EXPECT_EQ(phi_star(factorize(8)), 2u);
}

TEST(Multiplicative, AgreesWithNaive) {
  for (std::uint64_t n = 1; n <= 600; ++n) {
    const auto f = factorize(n);
    EXPECT_EQ(euler_phi(f), phi_naive(n));
    EXPECT_EQ(moebius(f), mu_naive(n));
    EXPECT_EQ(divisor_count(f), d_naive(n));
    EXPECT_EQ(static_cast<std::int64_t>(phi_star(f)), phi_star_naive(n));
    const auto divs = divisors(f);
    EXPECT_EQ(divs.size(), d_naive(n));
    EXPECT_TRUE(std::is_sorted(divs.begin(), divs.end()));
  }
}

TEST(Multiplicative, CoprimeMultiplicativity) {
  for (std::uint64_t m = 1; m <= 200; ++m) {
    const auto fm = factorize(m);
    for (std::uint64_t n = 1; n <= 200; ++n) {
      if (std::gcd(m, n) != 1) continue;
      const auto fn = factorize(n);
      const auto fmn = factorize(m * n);
      EXPECT_EQ(euler_phi(fmn), euler_phi(fm) * euler_phi(fn));
      EXPECT_EQ(moebius(fmn), moebius(fm) * moebius(fn));
      EXPECT_EQ(divisor_count(fmn), divisor_count(fm) * divisor_count(fn));
      EXPECT_EQ(phi_star(fmn), phi_star(fm) * phi_star(fn));
      EXPECT_EQ(omega(fmn), omega(fm) + omega(fn));
    }
  }
}

TEST(Multiplicative, DivisorSumIdentities) {
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    std::uint64_t phi_sum = 0;
    int mu_sum = 0;
    for (auto d : divisors(factorize(n))) {
      const auto fd = factorize(d);
      phi_sum += euler_phi(fd);
      mu_sum += moebius(fd);
    }
    EXPECT_EQ(phi_sum, n);
    EXPECT_EQ(mu_sum, n == 1 ? 1 : 0);
  }
}

TEST(PhiStar, VanishesExactlyAtTwoModFour) {
  for (std::uint64_t q = 1; q <= 10000; ++q) {
    const auto f = factorize(q);
    std::int64_t conv = 0;
    for (auto d : divisors(f)) {
      conv += moebius(factorize(d)) * static_cast<std::int64_t>(euler_phi(factorize(q / d)));
    }
    EXPECT_EQ(static_cast<std::int64_t>(phi_star(f)), conv);
    EXPECT_EQ(phi_star(f) == 0, q % 4 == 2) << q;
  }
}

TEST(OrthDivisorSum, Examples) {
  EXPECT_EQ(orth_divisor_sum(factorize(5), 0), 3);
  EXPECT_EQ(orth_divisor_sum(factorize(5), 1), -1);
  EXPECT_EQ(orth_divisor_sum(factorize(12), 4), -1);
}

TEST(OrthDivisorSum, AgreesWithNaiveAndDependsOnlyOnGcd) {
  std::mt19937_64 gen(11);
  for (std::uint64_t q = 1; q <= 150; ++q) {
    const auto f = factorize(q);
    EXPECT_EQ(orth_divisor_sum(f, 0), static_cast<std::int64_t>(phi_star(f)));
    for (int i = 0; i < 30; ++i) {
      const auto r = static_cast<std::int64_t>(gen() % 2001) - 1000;
      const auto v = orth_divisor_sum(f, r);
      EXPECT_EQ(v, ods_naive(q, r)) << q << " " << r;
      const auto g = static_cast<std::int64_t>(std::gcd(q, static_cast<std::uint64_t>(std::llabs(r))));
      EXPECT_EQ(v, orth_divisor_sum(f, r == 0 ? 0 : g));
    }
  }
}

TEST(EulerProduct, Examples) {
  EXPECT_DOUBLE_EQ(euler_product_theorem1(factorize(1)), 1.0);
  EXPECT_DOUBLE_EQ(euler_product_theorem1(factorize(3)), 2.0 / 9.0);
  EXPECT_DOUBLE_EQ(euler_product_theorem1(factorize(6)), 1.0 / 54.0);
  EXPECT_DOUBLE_EQ(euler_product_lemma6(factorize(1)), 1.0);
  EXPECT_DOUBLE_EQ(euler_product_lemma6(factorize(6)), (1.0 / 3.0) * (2.0 / 4.0));
}

TEST(EulerProduct, MatchesRationalOracle) {
  using R = boost::rational<long long>;
  for (std::uint64_t q : {30ull, 210ull, 2310ull, 30030ull, 97ull * 89ull}) {
    const auto f = factorize(q);
    R prod(1);
    for (const auto& pp : f.factors()) {
      const auto p = static_cast<long long>(pp.prime);
      prod *= R((p - 1) * (p - 1) * (p - 1), p * p * p) / R(p + 1, p);
    }
    EXPECT_DOUBLE_EQ(euler_product_theorem1(f), boost::rational_cast<double>(prod)) << q;
  }
}

TEST(Modular, PowmodAndSieve) {
  EXPECT_EQ(powmod(2, 10, 1000), 24u);
  EXPECT_EQ(mulmod(1ull << 62, 6, (1ull << 62) + 1), ((1ull << 62) + 1) - 6);
  const auto om = omega_sieve(5000);
  for (std::uint64_t n = 1; n <= 5000; ++n) EXPECT_EQ(om[n], omega(factorize(n))) << n;
}
