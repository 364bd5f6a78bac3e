#include "lmoment/predict.hpp"

#include "lmoment/arith.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lmoment::predict {
namespace {

void check(std::uint64_t q, double T) {
  if (q == 0) throw std::domain_error("predict: q must be positive");
  if (!(T > 0.0) || !std::isfinite(T)) throw std::domain_error("predict: T must be positive");
}

}  // namespace

double theorem1_main(std::uint64_t q, double T) {
  check(q, T);
  const auto f = arith::factorize(q);
  const double star = static_cast<double>(arith::phi_star(f));
  const double l = std::log(static_cast<double>(q) * T);
  return star * T / (2.0 * std::numbers::pi * std::numbers::pi) *
         arith::euler_product_theorem1(f) * (l * l) * (l * l);
}

double eq7_main(std::uint64_t q, double T) { return theorem1_main(q, T) / 4.0; }

double motohashi_main(std::uint64_t q, double T) {
  check(q, T);
  const auto f = arith::factorize(q);
  double prime_sum = 0.0;
  for (const auto& pp : f.factors()) {
    const double p = static_cast<double>(pp.prime);
    prime_sum += std::log(p) / (p - 1.0);
  }
  const double qd = static_cast<double>(q);
  return static_cast<double>(arith::euler_phi(f)) * T / qd *
         (std::log(qd * T / (2.0 * std::numbers::pi)) + 2.0 * kEulerGamma + 2.0 * prime_sum);
}

double second_moment_main(std::uint64_t q, double T) {
  return static_cast<double>(arith::phi_star(arith::factorize(q))) * motohashi_main(q, T);
}

PredictionTable prediction_table(std::uint64_t q, double T) {
  check(q, T);
  const auto f = arith::factorize(q);
  const double phi = static_cast<double>(arith::euler_phi(f));
  const double l = std::log(static_cast<double>(q) * T);
  PredictionTable r;
  r.q = q;
  r.T = T;
  r.theorem1 = theorem1_main(q, T);
  r.eq7 = eq7_main(q, T);
  r.motohashi = motohashi_main(q, T);
  r.montgomery_scale = phi * T * (l * l) * (l * l);
  r.nonprim_ratio = std::pow(static_cast<double>(q) / phi, 5);
  r.in_hypothesis = q >= 2 && T >= 2.0;
  return r;
}

}  // namespace lmoment::predict
