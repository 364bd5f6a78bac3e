#include "lmoment/analytic.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lmoment::analytic {
namespace {

// B_2, B_4, ..., B_20
constexpr std::array<double, 10> kBernoulliEven = {
    1.0 / 6.0,         -1.0 / 30.0,          1.0 / 42.0,
    -1.0 / 30.0,       5.0 / 66.0,           -691.0 / 2730.0,
    7.0 / 6.0,         -3617.0 / 510.0,      43867.0 / 798.0,
    -174611.0 / 330.0,
};

constexpr double kStirlingRadius = 12.0;

void check_pole(Complex w) {
  if (w.imag() == 0.0 && w.real() <= 0.0 && w.real() == std::floor(w.real())) {
    throw std::domain_error("log_gamma: pole at a nonpositive integer");
  }
}

}  // namespace

Complex log_gamma(Complex w) {
  check_pole(w);
  Complex shift_sum{0.0, 0.0};
  while (std::abs(w) < kStirlingRadius || w.real() < 0.5) {
    shift_sum += std::log(w);
    w += 1.0;
  }
  const Complex inv = 1.0 / w;
  const Complex inv2 = inv * inv;
  Complex series{0.0, 0.0};
  Complex power = inv;
  for (std::size_t k = 1; k <= kBernoulliEven.size(); ++k) {
    const double denom = static_cast<double>((2 * k) * (2 * k - 1));
    series += kBernoulliEven[k - 1] / denom * power;
    power *= inv2;
  }
  const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  return (w - 0.5) * std::log(w) - w + half_log_2pi + series - shift_sum;
}

Complex digamma(Complex w) {
  check_pole(w);
  Complex shift_sum{0.0, 0.0};
  while (std::abs(w) < kStirlingRadius || w.real() < 0.5) {
    shift_sum += 1.0 / w;
    w += 1.0;
  }
  const Complex inv = 1.0 / w;
  const Complex inv2 = inv * inv;
  Complex series{0.0, 0.0};
  Complex power = inv2;
  for (std::size_t k = 1; k <= kBernoulliEven.size(); ++k) {
    series += kBernoulliEven[k - 1] / static_cast<double>(2 * k) * power;
    power *= inv2;
  }
  return std::log(w) - 0.5 * inv - series - shift_sum;
}

}  // namespace lmoment::analytic
