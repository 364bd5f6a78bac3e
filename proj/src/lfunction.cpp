#include "lmoment/analytic.hpp"

#include "em_detail.hpp"
#include "lmoment/summation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace lmoment::analytic {
namespace {

struct LSum {
  Complex value;
  double bound = 0.0;
  double magnitude = 0.0;
};

// sum_{n <= Mq} chi(n) n^{-s} + q^{-s} sum_a chi(a) EM-tail(s, M + a/q)
LSum l_sum(Complex s, std::span<const Complex> table, std::uint64_t shift) {
  const std::uint64_t q = table.size();
  const bool at_one = (s == Complex{1.0, 0.0});
  CompensatedComplexSum sum;
  double magnitude = 0.0;
  const std::uint64_t last = shift * q;
  for (std::uint64_t n = 1; n <= last; ++n) {
    const Complex c = table[n % q];
    if (c.real() == 0.0 && c.imag() == 0.0) continue;
    const Complex term = c * std::exp(-s * std::log(static_cast<double>(n)));
    sum += term;
    magnitude += std::abs(term);
  }
  const Complex q_pow = std::exp(-s * std::log(static_cast<double>(q)));
  double bound = 0.0;
  for (std::uint64_t a = 1; a <= q; ++a) {
    const Complex c = table[a % q];
    if (c.real() == 0.0 && c.imag() == 0.0) continue;
    const double n = static_cast<double>(shift) + static_cast<double>(a) / static_cast<double>(q);
    double b = 0.0;
    const Complex corr = detail::em_corrections(s, n, b);
    // At s = 1 the pole terms sum to -sum_a chi(a) log n because sum chi(a) = 0.
    const Complex pole = at_one ? Complex{-std::log(n), 0.0}
                                : std::exp((1.0 - s) * std::log(n)) / (s - 1.0);
    sum += c * q_pow * (pole + corr);
    bound += std::abs(q_pow) * b;
  }
  return {sum.value(), bound, magnitude};
}

void require_primitive(const characters::DirichletCharacter& chi, const char* what) {
  if (!chi.primitive()) {
    throw std::invalid_argument(std::string(what) + ": character must be primitive");
  }
}

}  // namespace

Complex l_value(Complex s, std::span<const Complex> chi_table, std::uint64_t shift) {
  return l_sum(s, chi_table, shift).value;
}

LValueResult l_oracle(Complex s, const characters::DirichletCharacter& chi) {
  if (s.real() <= -1.0) throw std::domain_error("l_oracle: requires Re s > -1");
  if (s == Complex{1.0, 0.0} && chi.is_principal()) {
    throw std::domain_error("l_oracle: pole at s = 1 for the principal character");
  }
  const auto table = chi.value_table();
  const std::uint64_t m = default_em_shift(s);
  const LSum coarse = l_sum(s, table, m);
  const LSum fine = l_sum(s, table, 2 * m);
  LValueResult r;
  r.s = s;
  r.character_id = chi.id();
  r.value = fine.value;
  r.method = LMethod::oracle;
  r.error_estimate = std::abs(fine.value - coarse.value) + coarse.bound + fine.bound +
                     8.0 * std::numeric_limits<double>::epsilon() * coarse.magnitude;
  return r;
}

Complex completed_lambda(Complex s, const characters::DirichletCharacter& chi) {
  require_primitive(chi, "completed_lambda");
  const double q = static_cast<double>(chi.modulus());
  const double a = chi.parity();
  const Complex log_factor =
      0.5 * s * std::log(q / std::numbers::pi) + log_gamma(0.25 + 0.5 * s + 0.5 * a);
  return std::exp(log_factor) * l_oracle(0.5 + s, chi).value;
}

double functional_equation_residual(Complex s,
                                    const characters::DirichletCharacter& chi) {
  require_primitive(chi, "functional_equation_residual");
  const Complex lhs = completed_lambda(s, chi);
  const Complex i_pow = chi.parity() == 0 ? Complex{1.0, 0.0} : Complex{0.0, 1.0};
  const Complex root =
      characters::gauss_sum(chi) / (i_pow * std::sqrt(static_cast<double>(chi.modulus())));
  const Complex rhs = root * completed_lambda(-s, chi.conj());
  return std::abs(lhs - rhs) / std::abs(lhs);
}

// ---------------------------------------------------------------------------

WeightTable::WeightTable(double t, int a, std::uint64_t q)
    : kernel_(t, a), q_(q), values_(1, 0.0) {
  if (q == 0) throw std::domain_error("WeightTable: modulus must be positive");
}

void WeightTable::extend(std::uint64_t n) {
  if (n <= size()) return;
  const std::uint64_t from = values_.size();
  values_.resize(n + 1);
  const double scale = std::numbers::pi / static_cast<double>(q_);
  for (std::uint64_t k = from; k <= n; ++k) {
    values_[k] = kernel_.value(scale * static_cast<double>(k));
  }
}

SmoothedSeries smoothed_series(double t, const characters::DirichletCharacter& chi,
                               double eps, std::optional<double> split,
                               WeightTable* weights) {
  require_primitive(chi, "smoothed_series");
  if (!(eps >= 1e-9)) throw std::domain_error("smoothed_series: eps must be >= 1e-9");
  const std::uint64_t q = chi.modulus();
  const int a = chi.parity();
  std::optional<WeightTable> own;
  if (weights == nullptr) {
    own.emplace(t, a, q);
    weights = &*own;
  } else if (weights->t() != t || weights->parity() != a || weights->modulus() != q) {
    throw std::invalid_argument("smoothed_series: weight table does not match");
  }

  const double tau = std::abs(t) + 2.0;
  const double start =
      (static_cast<double>(q) * tau / std::numbers::pi) * std::max(4.0, 1.0 / (std::sqrt(eps) * tau));
  std::uint64_t hi = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::ceil(start)));

  const auto table = chi.value_table();
  // u_a = chi(a) a^{-1/2 - it}
  std::vector<Complex> u(1, Complex{});
  auto extend_u = [&](std::uint64_t n) {
    const std::uint64_t from = u.size();
    u.resize(n + 1);
    for (std::uint64_t k = from; k <= n; ++k) {
      const Complex c = table[k % q];
      if (c.real() == 0.0 && c.imag() == 0.0) {
        u[k] = Complex{};
        continue;
      }
      const double lk = std::log(static_cast<double>(k));
      u[k] = c * std::polar(std::exp(-0.5 * lk), -t * lk);
    }
  };

  const double split_at = split.value_or(-1.0);
  CompensatedComplexSum total;
  CompensatedComplexSum head;
  std::vector<Complex> block;
  std::uint64_t lo = 0;
  double last_block = 0.0;
  while (true) {
    extend_u(hi);
    weights->extend(hi);
    block.assign(hi - lo, Complex{});
    for (std::uint64_t x = 1; x <= hi; ++x) {
      const Complex ux = u[x];
      if (ux.real() == 0.0 && ux.imag() == 0.0) continue;
      const std::uint64_t y_lo = lo / x + 1;
      const std::uint64_t y_hi = hi / x;
      for (std::uint64_t y = y_lo; y <= y_hi; ++y) {
        block[x * y - lo - 1] += ux * std::conj(u[y]);
      }
    }
    // The last dyadic block is (hi/2, hi]; on later rounds that is all of (lo, hi].
    const std::uint64_t block_start = hi / 2;
    double block_abs = 0.0;
    for (std::uint64_t n = lo + 1; n <= hi; ++n) {
      const Complex term = block[n - lo - 1] * (*weights)[n];
      total += term;
      if (static_cast<double>(n) <= split_at) head += term;
      if (n > block_start) block_abs += std::abs(term);
    }
    last_block = 2.0 * block_abs;
    if (last_block < eps / 4.0) break;
    lo = hi;
    hi *= 2;
  }

  SmoothedSeries r;
  r.full = 2.0 * total.value().real();
  r.head = head.value();
  r.terms = hi;
  r.last_block = last_block;
  return r;
}

double abs_L_sq_smoothed(double t, const characters::DirichletCharacter& chi, double eps) {
  return smoothed_series(t, chi, eps).full;
}

}  // namespace lmoment::analytic
