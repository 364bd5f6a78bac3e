#include "lmoment/analytic.hpp"

#include "em_detail.hpp"
#include "lmoment/summation.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace lmoment::analytic {
namespace {

// B_2, ..., B_24
constexpr std::array<double, 12> kBernoulli = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
};

}  // namespace

std::uint64_t default_em_shift(Complex s) {
  return std::max<std::uint64_t>(20, static_cast<std::uint64_t>(std::ceil(2.0 * std::abs(s.imag()))));
}

namespace detail {

// Euler-Maclaurin tail of zeta(s, alpha) beyond the first M terms, where
// n = M + alpha, without the pole term. Returns the correction sum
//   n^{-s}/2 + sum_j B_2j/(2j)! (s)_{2j-1} n^{-s-2j+1}
// and writes the remainder bound 4|(s)_{2J}| / (2 pi)^{2J} n^{1-sigma-2J} /
// (sigma + 2J - 1) into `bound`.
Complex em_corrections(Complex s, double n, double& bound) {
  const Complex n_pow = std::exp(-s * std::log(n));
  Complex sum = 0.5 * n_pow;
  // poch = (s)_{2j-1} / (2j)! * n^{-(2j-1)}
  Complex poch = s / (2.0 * n);
  Complex rising = s;  // (s)_{2j-1}
  const double inv_n2 = 1.0 / (n * n);
  for (std::size_t j = 1; j <= kBernoulli.size(); ++j) {
    sum += kBernoulli[j - 1] * poch * n_pow;
    const double jj = static_cast<double>(j);
    const Complex f1 = s + (2.0 * jj - 1.0);
    const Complex f2 = s + 2.0 * jj;
    poch *= f1 * f2 * inv_n2 / ((2.0 * jj + 1.0) * (2.0 * jj + 2.0));
    if (j < kBernoulli.size()) {
      rising *= f1 * f2;
    } else {
      rising *= f1;  // (s)_{2J}
    }
  }
  const double J2 = 2.0 * static_cast<double>(kBernoulli.size());
  const double sigma = s.real();
  bound = 4.0 * std::abs(rising) * std::pow(2.0 * std::numbers::pi, -J2) *
          std::pow(n, 1.0 - sigma - J2) / (sigma + J2 - 1.0);
  return sum;
}

}  // namespace detail

HurwitzResult hurwitz_zeta(Complex s, double alpha, std::uint64_t shift) {
  if (s == Complex{1.0, 0.0}) throw std::domain_error("hurwitz_zeta: pole at s = 1");
  if (s.real() <= -1.0) throw std::domain_error("hurwitz_zeta: requires Re s > -1");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::domain_error("hurwitz_zeta: alpha must lie in (0, 1]");
  }
  CompensatedComplexSum sum;
  double magnitude = 0.0;
  for (std::uint64_t k = 0; k < shift; ++k) {
    const double base = static_cast<double>(k) + alpha;
    const Complex term = std::exp(-s * std::log(base));
    sum += term;
    magnitude += std::abs(term);
  }
  const double n = static_cast<double>(shift) + alpha;
  double bound = 0.0;
  const Complex corr = detail::em_corrections(s, n, bound);
  sum += std::exp((1.0 - s) * std::log(n)) / (s - 1.0);
  sum += corr;
  HurwitzResult r;
  r.value = sum.value();
  r.error_estimate = bound + 8.0 * std::numeric_limits<double>::epsilon() * magnitude;
  return r;
}

HurwitzResult hurwitz_zeta(Complex s, double alpha) {
  return hurwitz_zeta(s, alpha, default_em_shift(s));
}

}  // namespace lmoment::analytic
