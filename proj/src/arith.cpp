#include "lmoment/arith.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <stdexcept>

namespace lmoment::arith {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are deterministic for every n < 3.3e24.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw std::domain_error("factorize: n must be positive");
  if (n > static_cast<std::uint64_t>(INT64_MAX)) {
    throw std::domain_error("factorize: n exceeds 2^63 - 1");
  }
  Factorization f;
  f.n_ = n;
  auto strip = [&](std::uint64_t p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) f.factors_.push_back({p, e});
  };
  strip(2);
  strip(3);
  // 6k +- 1 wheel; re-test the cofactor for primality after each hit.
  bool cofactor_checked = false;
  for (std::uint64_t p = 5; p * p <= n; p += 6) {
    if (!cofactor_checked) {
      if (is_prime(n)) break;
      cofactor_checked = true;
    }
    for (std::uint64_t c : {p, p + 2}) {
      if (n % c == 0) {
        strip(c);
        cofactor_checked = false;
      }
    }
  }
  if (n > 1) f.factors_.push_back({n, 1});
  return f;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t gcd_signed(std::int64_t a, std::int64_t b) {
  auto ua = static_cast<std::uint64_t>(a < 0 ? -a : a);
  auto ub = static_cast<std::uint64_t>(b < 0 ? -b : b);
  return static_cast<std::int64_t>(gcd(ua, ub));
}

std::uint64_t euler_phi(const Factorization& f) {
  std::uint64_t result = 1;
  for (const auto& [p, e] : f.factors()) {
    result *= p - 1;
    for (unsigned i = 1; i < e; ++i) result *= p;
  }
  return result;
}

int moebius(const Factorization& f) {
  int sign = 1;
  for (const auto& pp : f.factors()) {
    if (pp.exponent >= 2) return 0;
    sign = -sign;
  }
  return sign;
}

unsigned omega(const Factorization& f) {
  return static_cast<unsigned>(f.factors().size());
}

std::uint64_t divisor_count(const Factorization& f) {
  std::uint64_t d = 1;
  for (const auto& pp : f.factors()) d *= pp.exponent + 1;
  return d;
}

std::uint64_t phi_star(const Factorization& f) {
  // Multiplicative: p -> p - 2, p^e -> p^(e-2) (p - 1)^2 for e >= 2.
  std::uint64_t result = 1;
  for (const auto& [p, e] : f.factors()) {
    if (e == 1) {
      result *= p - 2;
    } else {
      result *= (p - 1) * (p - 1);
      for (unsigned i = 2; i < e; ++i) result *= p;
    }
  }
  return result;
}

std::vector<std::uint64_t> divisors(const Factorization& f) {
  std::vector<std::uint64_t> divs{1};
  for (const auto& [p, e] : f.factors()) {
    const std::size_t base = divs.size();
    std::uint64_t pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::int64_t orth_divisor_sum(const Factorization& q, std::int64_t r) {
  // Multiplicative in q for fixed r: the p^e factor is
  //   sum_{j <= min(e, v_p(r))} phi(p^j) mu(p^(e-j)).
  std::int64_t result = 1;
  for (const auto& [p, e] : q.factors()) {
    unsigned v = 0;
    if (r == 0) {
      v = e;
    } else {
      auto rr = static_cast<std::uint64_t>(r < 0 ? -r : r);
      while (v < e && rr % p == 0) {
        rr /= p;
        ++v;
      }
    }
    const auto ip = static_cast<std::int64_t>(p);
    std::int64_t local = 0;
    // Only j = e (mu(1) = 1) and j = e - 1 (mu(p) = -1) survive.
    if (v >= e) {
      std::int64_t phi_pe = ip - 1;
      for (unsigned i = 1; i < e; ++i) phi_pe *= ip;
      local += phi_pe;
    }
    if (v + 1 >= e) {
      std::int64_t phi_pe1 = 1;
      if (e >= 2) {
        phi_pe1 = ip - 1;
        for (unsigned i = 2; i < e; ++i) phi_pe1 *= ip;
      }
      local -= phi_pe1;
    }
    result *= local;
    if (result == 0) return 0;
  }
  return result;
}

double euler_product_theorem1(const Factorization& q) {
  using boost::multiprecision::cpp_rational;
  cpp_rational prod = 1;
  for (const auto& pp : q.factors()) {
    cpp_rational p_inv(1, pp.prime);
    cpp_rational one_minus = 1 - p_inv;
    prod *= one_minus * one_minus * one_minus / (1 + p_inv);
  }
  return prod.convert_to<double>();
}

double euler_product_lemma6(const Factorization& q) {
  using boost::multiprecision::cpp_rational;
  cpp_rational prod = 1;
  for (const auto& pp : q.factors()) {
    cpp_rational p_inv(1, pp.prime);
    prod *= (1 - p_inv) / (1 + p_inv);
  }
  return prod.convert_to<double>();
}

std::vector<std::uint8_t> omega_sieve(std::uint64_t limit) {
  std::vector<std::uint8_t> w(limit + 1, 0);
  std::vector<std::uint32_t> least(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (least[i] == 0) {
      least[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
      w[i] = 1;
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t m = static_cast<std::uint64_t>(p) * i;
      if (p > least[i] || m > limit) break;
      least[m] = p;
      // p is new to m exactly when it does not already divide i.
      w[m] = static_cast<std::uint8_t>(w[i] + (p == least[i] ? 0 : 1));
    }
  }
  return w;
}

}  // namespace lmoment::arith
