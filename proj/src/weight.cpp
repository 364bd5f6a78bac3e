#include "lmoment/analytic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace lmoment::analytic {
namespace {

constexpr std::size_t kNodes =
    static_cast<std::size_t>(kContourHalfHeight / kContourStep + 0.5);

// Below this x / scale the right line loses more than ~4 digits to
// cancellation against the residue, so the shifted line is used instead.
constexpr double kLineSwitch = 0.1;

// Coefficients smaller than this fraction of the largest are dropped.
constexpr double kPruneRatio = 1e-17;

void check_args(double x, int a) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("weight: x must be positive and finite");
  }
  if (a != 0 && a != 1) throw std::domain_error("weight: parity must be 0 or 1");
}

Complex gamma_base(double t, int a) { return {0.25 + 0.5 * a, 0.5 * t}; }

struct NodeCoeff {
  Complex value;  // G(z) e^{z^2} / z
  Complex dt;     // value * d/dt log G(z)
};

// The integrand of W without the x^{-z} factor.
struct Integrand {
  Complex w;
  double log_norm;  // 2 Re log Gamma(w)
  Complex psi_diff; // psi(w) - psi(conj w)

  Integrand(double t, int a, bool with_derivative) : w(gamma_base(t, a)) {
    log_norm = 2.0 * log_gamma(w).real();
    if (with_derivative) psi_diff = digamma(w) - digamma(std::conj(w));
  }

  NodeCoeff at(Complex z, bool with_derivative) const {
    const Complex half = 0.5 * z;
    const Complex up = w + half;
    const Complex down = std::conj(w) + half;
    const Complex log_g = log_gamma(up) + log_gamma(down) - log_norm;
    NodeCoeff c;
    c.value = std::exp(log_g + z * z) / z;
    if (with_derivative) {
      const Complex d = Complex{0.0, 0.5} * (digamma(up) - digamma(down) - psi_diff);
      c.dt = c.value * d;
    }
    return c;
  }
};

double geometric_error(double fine, double mid, double coarse) {
  const double d1 = std::abs(fine - mid);
  const double d2 = std::abs(mid - coarse);
  if (d2 > d1 && d2 > 0.0) {
    const double r = d1 / d2;
    return d1 * r * r;
  }
  return d1;
}

// Trapezoid sums at steps h, 2h, 4h plus the sum of magnitudes, all already
// scaled by 1/(2 pi) (two-sided) or 1/pi (half line).
struct TrapezoidSums {
  double fine = 0.0;
  double mid = 0.0;
  double coarse = 0.0;
  double imag = 0.0;
  double magnitude = 0.0;

  double error(double tail) const {
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * magnitude;
    return tail + geometric_error(fine, mid, coarse) + floor;
  }
};

WeightEval integrate_line(double x, double t, int a, double line, bool derivative) {
  check_args(x, a);
  if (line == 0.0) throw std::domain_error("weight: contour through the pole");
  const Integrand f(t, a, derivative);
  const double h = kContourStep;
  const double log_x = std::log(x);

  // Two-sided sum, nodes y = j h for |j| <= kNodes.
  Complex fine{}, mid{}, coarse{};
  double magnitude = 0.0;
  double edge = 0.0;
  for (long j = -static_cast<long>(kNodes); j <= static_cast<long>(kNodes); ++j) {
    const Complex z{line, static_cast<double>(j) * h};
    const NodeCoeff c = f.at(z, derivative);
    const Complex term = (derivative ? c.dt : c.value) * std::exp(-z * log_x);
    fine += term;
    if (j % 2 == 0) mid += term;
    if (j % 4 == 0) coarse += term;
    magnitude += std::abs(term);
    if (std::abs(j) == static_cast<long>(kNodes)) edge = std::max(edge, std::abs(term));
  }
  const double scale = 1.0 / (2.0 * std::numbers::pi);
  TrapezoidSums s;
  s.fine = (fine * h * scale).real();
  s.mid = (mid * 2.0 * h * scale).real();
  s.coarse = (coarse * 4.0 * h * scale).real();
  s.imag = (fine * h * scale).imag();
  s.magnitude = magnitude * h * scale;
  // Gaussian tail beyond |y| = Y: integral of e^{-y^2} past Y is below
  // e^{-Y^2}/(2Y); the gamma ratio grows at most exponentially in |y|, so a
  // factor 4 covers it at Y = 8.
  const double tail = 4.0 * 2.0 * edge / (2.0 * kContourHalfHeight) * scale;

  WeightEval e;
  e.x = x;
  e.t = t;
  e.parity_a = a;
  e.tau = std::abs(t) + 2.0;
  e.value = s.fine;
  e.quad_error = s.error(tail);
  e.line = line;
  e.raw_imag = s.imag;
  return e;
}

double pick_line(double x, double t, int a) {
  return x / std::abs(gamma_base(t, a)) >= kLineSwitch ? kRightLine : kShiftedLine;
}

}  // namespace

WeightEval weight_on_line(double x, double t, int a, double line) {
  return integrate_line(x, t, a, line, false);
}

WeightEval weight_W(double x, double t, int a) {
  check_args(x, a);
  const double line = pick_line(x, t, a);
  WeightEval e = integrate_line(x, t, a, line, false);
  if (line < 0.0) e.value += 1.0;
  return e;
}

WeightEval weight_W_shifted(double x, double t, int a) {
  return integrate_line(x, t, a, kShiftedLine, false);
}

WeightEval weight_dt(double x, double t, int a) {
  check_args(x, a);
  // d/dt log G vanishes at z = 0, so there is no residue to account for.
  return integrate_line(x, t, a, pick_line(x, t, a), true);
}

// ---------------------------------------------------------------------------

WeightKernel::WeightKernel(double t, int a, bool with_derivative)
    : t_(t), a_(a), scale_(std::abs(gamma_base(t, a))) {
  if (a != 0 && a != 1) throw std::domain_error("weight: parity must be 0 or 1");
  right_ = build(t, a, kRightLine, with_derivative);
  shifted_ = build(t, a, kShiftedLine, with_derivative);
}

WeightKernel::Line WeightKernel::build(double t, int a, double c,
                                       bool with_derivative) {
  const Integrand f(t, a, with_derivative);
  Line line;
  line.c = c;
  line.coeff.resize(kNodes + 1);
  if (with_derivative) line.coeff_dt.resize(kNodes + 1);
  double max_abs = 0.0;
  for (std::size_t j = 0; j <= kNodes; ++j) {
    const NodeCoeff nc = f.at({c, static_cast<double>(j) * kContourStep}, with_derivative);
    line.coeff[j] = nc.value;
    if (with_derivative) line.coeff_dt[j] = nc.dt;
    max_abs = std::max(max_abs, std::abs(nc.value));
  }
  line.used = kNodes + 1;
  while (line.used > 1) {
    const std::size_t j = line.used - 1;
    const double mag = std::max(std::abs(line.coeff[j]),
                                with_derivative ? std::abs(line.coeff_dt[j]) : 0.0);
    if (mag >= kPruneRatio * max_abs) break;
    --line.used;
  }
  return line;
}

const WeightKernel::Line& WeightKernel::pick(double x) const {
  return x / scale_ >= kLineSwitch ? right_ : shifted_;
}

namespace {

// (h/pi) [ Re c_0 / 2 + sum_{j>=1} Re(c_j e^{-i j h log x}) ] x^{-c}
double half_line_sum(const std::vector<Complex>& coeff, std::size_t used,
                     double c, double x) {
  const double log_x = std::log(x);
  const Complex step = std::polar(1.0, -kContourStep * log_x);
  Complex rot{1.0, 0.0};
  double acc = 0.5 * coeff[0].real();
  for (std::size_t j = 1; j < used; ++j) {
    if ((j & 31) == 0) {
      rot = std::polar(1.0, -static_cast<double>(j) * kContourStep * log_x);
    } else {
      rot *= step;
    }
    const Complex& k = coeff[j];
    acc += k.real() * rot.real() - k.imag() * rot.imag();
  }
  return acc * (kContourStep / std::numbers::pi) * std::exp(-c * log_x);
}

}  // namespace

double WeightKernel::value(double x) const {
  const Line& line = pick(x);
  const double v = half_line_sum(line.coeff, line.used, line.c, x);
  return line.c < 0.0 ? v + 1.0 : v;
}

double WeightKernel::derivative(double x) const {
  const Line& line = pick(x);
  if (line.coeff_dt.empty()) {
    throw std::logic_error("WeightKernel: built without derivative nodes");
  }
  return half_line_sum(line.coeff_dt, line.used, line.c, x);
}

WeightEval WeightKernel::evaluate(double x) const {
  check_args(x, a_);
  const Line& line = pick(x);
  const double log_x = std::log(x);
  const double xc = std::exp(-line.c * log_x);
  double fine = 0.5 * line.coeff[0].real();
  double mid = fine;
  double coarse = fine;
  double magnitude = 0.5 * std::abs(line.coeff[0]);
  for (std::size_t j = 1; j < line.used; ++j) {
    const Complex term =
        line.coeff[j] * std::polar(1.0, -static_cast<double>(j) * kContourStep * log_x);
    fine += term.real();
    if (j % 2 == 0) mid += term.real();
    if (j % 4 == 0) coarse += term.real();
    magnitude += std::abs(term);
  }
  const double scale = xc / std::numbers::pi;
  TrapezoidSums s;
  s.fine = fine * kContourStep * scale;
  s.mid = mid * 2.0 * kContourStep * scale;
  s.coarse = coarse * 4.0 * kContourStep * scale;
  s.magnitude = magnitude * kContourStep * scale;
  double dropped = 0.0;
  for (std::size_t j = line.used; j < line.coeff.size(); ++j) {
    dropped += std::abs(line.coeff[j]) * kContourStep;
  }
  const double edge = std::abs(line.coeff.back());
  const double tail = (dropped + 4.0 * edge / (2.0 * kContourHalfHeight)) * scale;

  WeightEval e;
  e.x = x;
  e.t = t_;
  e.parity_a = a_;
  e.tau = std::abs(t_) + 2.0;
  e.value = s.fine + (line.c < 0.0 ? 1.0 : 0.0);
  e.quad_error = s.error(tail);
  e.line = line.c;
  return e;
}

}  // namespace lmoment::analytic
