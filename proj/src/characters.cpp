#include "lmoment/characters.hpp"

#include "lmoment/summation.hpp"

#include <charconv>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace lmoment {

Complex unit_root(std::int64_t k, std::int64_t n) {
  k %= n;
  if (k < 0) k += n;
  if (k == 0) return {1.0, 0.0};
  if (2 * k == n) return {-1.0, 0.0};
  if (4 * k == n) return {0.0, 1.0};
  if (4 * k == 3 * n) return {0.0, -1.0};
  // Reduce to (-n/2, n/2] so the angle stays small.
  if (2 * k > n) k -= n;
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) /
                       static_cast<double>(n);
  return {std::cos(theta), std::sin(theta)};
}

namespace characters {
namespace {

std::uint64_t pow_u64(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

// Smallest primitive root mod p^e (p odd), by direct search.
std::uint64_t smallest_primitive_root(std::uint64_t p, std::uint64_t pe) {
  const std::uint64_t phi = (p - 1) * (pe / p);
  const auto phi_fact = arith::factorize(phi);
  for (std::uint64_t g = 2; g < pe; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (const auto& pp : phi_fact.factors()) {
      if (arith::powmod(g, phi / pp.prime, pe) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root found");
}

void fill_cyclic_dlog(Component& c) {
  c.dlog.assign(c.modulus, 0);
  std::uint64_t x = 1 % c.modulus;
  for (std::uint64_t k = 0; k < c.order; ++k) {
    c.dlog[x] = static_cast<std::uint32_t>(k);
    x = x * c.generator % c.modulus;
  }
}

unsigned valuation(std::uint64_t x, std::uint64_t p) {
  unsigned v = 0;
  while (x != 0 && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace

CharGroup::CharGroup(std::uint64_t q) : q_(q) {
  if (q == 0) throw std::domain_error("CharGroup: modulus must be positive");
  if (q > kMaxModulus) {
    throw std::domain_error("CharGroup: modulus exceeds table limit");
  }
  fact_ = arith::factorize(q);
  for (const auto& [p, e] : fact_.factors()) {
    const std::uint64_t pe = pow_u64(p, e);
    if (p != 2) {
      Component c{p, e, pe, (p - 1) * (pe / p), 0, {}};
      c.generator = smallest_primitive_root(p, pe);
      fill_cyclic_dlog(c);
      components_.push_back(std::move(c));
    } else if (e <= 2) {
      Component c{2, e, pe, pe / 2, pe - 1, {}};
      fill_cyclic_dlog(c);
      components_.push_back(std::move(c));
    } else {
      // u = (-1)^a 5^b with a mod 2, b mod 2^(e-2).
      Component sign{2, e, pe, 2, pe - 1, std::vector<std::uint32_t>(pe, 0)};
      Component five{2, e, pe, pe / 4, 5, std::vector<std::uint32_t>(pe, 0)};
      std::uint64_t x = 1;
      for (std::uint64_t b = 0; b < five.order; ++b) {
        five.dlog[x] = static_cast<std::uint32_t>(b);
        five.dlog[pe - x] = static_cast<std::uint32_t>(b);
        sign.dlog[pe - x] = 1;
        x = x * 5 % pe;
      }
      components_.push_back(std::move(sign));
      components_.push_back(std::move(five));
    }
  }
  for (const auto& c : components_) lcm_ = std::lcm(lcm_, c.order);
}

std::uint64_t CharGroup::order() const {
  std::uint64_t n = 1;
  for (const auto& c : components_) n *= c.order;
  return n;
}

std::shared_ptr<const CharGroup> build_group(std::uint64_t q) {
  return std::make_shared<const CharGroup>(q);
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const CharGroup> group,
                                       std::vector<std::uint64_t> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
  const auto& comps = group_->components();
  if (exponents_.size() != comps.size()) {
    throw std::invalid_argument("character: exponent vector has wrong length");
  }
  for (std::size_t j = 0; j < comps.size(); ++j) {
    exponents_[j] %= comps[j].order;
  }

  const std::int64_t k = angle(static_cast<std::int64_t>(group_->modulus()) - 1);
  parity_ = (k == 0) ? 0 : 1;

  // Conductor, one prime at a time. Components of the same prime are adjacent.
  conductor_ = 1;
  for (std::size_t j = 0; j < comps.size(); ++j) {
    const auto& c = comps[j];
    const std::uint64_t x = exponents_[j];
    if (c.prime != 2) {
      if (x != 0) {
        const unsigned v = std::min(valuation(x, c.prime), c.exponent - 1);
        conductor_ *= pow_u64(c.prime, c.exponent - v);
      }
    } else if (c.exponent <= 2) {
      if (x != 0) conductor_ *= c.modulus;
    } else {
      // Sign component at j, five component at j + 1.
      const std::uint64_t a = x;
      const std::uint64_t b = exponents_[j + 1];
      if (b != 0) {
        conductor_ *= pow_u64(2, c.exponent - valuation(b, 2));
      } else if (a != 0) {
        conductor_ *= 4;
      }
      ++j;
    }
  }
}

bool DirichletCharacter::is_principal() const {
  for (auto e : exponents_) {
    if (e != 0) return false;
  }
  return true;
}

bool DirichletCharacter::is_real() const {
  const auto& comps = group_->components();
  for (std::size_t j = 0; j < comps.size(); ++j) {
    if ((2 * exponents_[j]) % comps[j].order != 0) return false;
  }
  return true;
}

std::int64_t DirichletCharacter::angle(std::int64_t n) const {
  const auto q = static_cast<std::int64_t>(group_->modulus());
  std::int64_t r = n % q;
  if (r < 0) r += q;
  if (arith::gcd(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(q)) != 1) {
    return -1;
  }
  const std::uint64_t lcm = group_->exponent();
  const auto& comps = group_->components();
  std::uint64_t k = 0;
  for (std::size_t j = 0; j < comps.size(); ++j) {
    const auto& c = comps[j];
    if (exponents_[j] == 0) continue;
    const std::uint64_t u = static_cast<std::uint64_t>(r) % c.modulus;
    const std::uint64_t scale = lcm / c.order;
    k = (k + arith::mulmod(exponents_[j] * scale % lcm, c.dlog[u], lcm)) % lcm;
  }
  return static_cast<std::int64_t>(k);
}

Complex DirichletCharacter::operator()(std::int64_t n) const {
  const std::int64_t k = angle(n);
  if (k < 0) return {0.0, 0.0};
  return unit_root(k, static_cast<std::int64_t>(group_->exponent()));
}

DirichletCharacter DirichletCharacter::conj() const {
  std::vector<std::uint64_t> e(exponents_.size());
  const auto& comps = group_->components();
  for (std::size_t j = 0; j < e.size(); ++j) {
    e[j] = (comps[j].order - exponents_[j]) % comps[j].order;
  }
  return DirichletCharacter(group_, std::move(e));
}

std::vector<Complex> DirichletCharacter::value_table() const {
  const auto q = static_cast<std::int64_t>(group_->modulus());
  std::vector<Complex> v(static_cast<std::size_t>(q));
  for (std::int64_t n = 0; n < q; ++n) v[static_cast<std::size_t>(n)] = (*this)(n);
  return v;
}

std::string DirichletCharacter::id() const {
  std::string s = std::to_string(group_->modulus()) + ":";
  for (std::size_t j = 0; j < exponents_.size(); ++j) {
    if (j > 0) s += ',';
    s += std::to_string(exponents_[j]);
  }
  return s;
}

std::vector<DirichletCharacter> enumerate_characters(
    const std::shared_ptr<const CharGroup>& group, bool primitive_only) {
  const auto& comps = group->components();
  std::vector<DirichletCharacter> out;
  std::vector<std::uint64_t> e(comps.size(), 0);
  while (true) {
    DirichletCharacter chi(group, e);
    if (!primitive_only || chi.primitive()) out.push_back(std::move(chi));
    std::size_t j = comps.size();
    while (j > 0) {
      --j;
      if (++e[j] < comps[j].order) break;
      e[j] = 0;
      if (j == 0) return out;
    }
    if (comps.empty()) return out;
  }
}

Complex char_eval(const DirichletCharacter& chi, std::int64_t n) { return chi(n); }

int parity(const DirichletCharacter& chi) { return chi.parity(); }

std::uint64_t conductor(const DirichletCharacter& chi) { return chi.conductor(); }

Complex gauss_sum(const DirichletCharacter& chi) {
  const auto q = static_cast<std::int64_t>(chi.modulus());
  CompensatedComplexSum sum;
  for (std::int64_t a = 1; a <= q; ++a) {
    const Complex c = chi(a);
    if (c == Complex{}) continue;
    sum += c * unit_root(a, q);
  }
  return sum.value();
}

DirichletCharacter parse_character(std::string_view id,
                                   std::shared_ptr<const CharGroup> group) {
  const auto colon = id.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("character id must look like q:e1,e2,...");
  }
  std::uint64_t q = 0;
  auto head = id.substr(0, colon);
  auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), q);
  if (ec != std::errc{} || ptr != head.data() + head.size() || q == 0) {
    throw std::invalid_argument("character id: bad modulus");
  }
  if (!group) {
    group = build_group(q);
  } else if (group->modulus() != q) {
    throw std::invalid_argument("character id: modulus does not match group");
  }
  std::vector<std::uint64_t> e;
  auto rest = id.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    auto tok = rest.substr(0, comma);
    std::uint64_t v = 0;
    auto [p2, ec2] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec2 != std::errc{} || p2 != tok.data() + tok.size() || tok.empty()) {
      throw std::invalid_argument("character id: bad exponent");
    }
    e.push_back(v);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (e.size() != group->components().size()) {
    throw std::invalid_argument("character id: wrong number of exponents");
  }
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j] >= group->components()[j].order) {
      throw std::invalid_argument("character id: exponent out of range");
    }
  }
  return DirichletCharacter(group, std::move(e));
}

}  // namespace characters
}  // namespace lmoment
