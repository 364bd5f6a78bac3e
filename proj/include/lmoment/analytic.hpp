#pragma once

// Analytic kernels: complex log-gamma and digamma, the mollified weight
// W_a(x; t) by contour quadrature, a Hurwitz-zeta oracle for L(s, chi), the
// completed L-function and the smoothed double series for |L(1/2 + it, chi)|^2.

#include "lmoment/characters.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lmoment::analytic {

// ---------------------------------------------------------------------------
// Gamma function family

/// log Gamma(w), the branch continuous in Re w > 0 and real on the positive
/// axis. Small |w| is shifted upward by the recurrence before the Stirling
/// series is applied. Throws std::domain_error at the poles w = 0, -1, -2, ...
Complex log_gamma(Complex w);

/// Digamma psi(w) = Gamma'(w)/Gamma(w) for Re w > 0.
Complex digamma(Complex w);

// ---------------------------------------------------------------------------
// The weight W_a(x; t)

inline constexpr double kContourStep = 0.05;
inline constexpr double kContourHalfHeight = 8.0;
inline constexpr double kRightLine = 2.0;
inline constexpr double kShiftedLine = -0.25;

struct WeightEval {
  double x = 0.0;
  double t = 0.0;
  int parity_a = 0;
  double tau = 2.0;  // |t| + 2
  double value = 0.0;
  double quad_error = 0.0;
  double line = kRightLine;
  /// Imaginary part of the two-sided trapezoid sum; zero up to rounding.
  double raw_imag = 0.0;
};

/// W_a(x; t): the contour integral on Re z = 2 of
///   Gamma(1/4 + it/2 + z/2 + a/2) Gamma(1/4 - it/2 + z/2 + a/2)
///   / |Gamma(1/4 + it/2 + a/2)|^2 * e^{z^2} x^{-z} dz / z / (2 pi i).
/// When x is small against |t| the integral is taken on Re z = -1/4 instead and
/// the residue 1 at z = 0 is added back; `line` records which was used.
/// Throws std::domain_error for x <= 0 or a not in {0, 1}.
WeightEval weight_W(double x, double t, int a);

/// The same integral on Re z = -1/4, which equals W_a(x; t) - 1.
WeightEval weight_W_shifted(double x, double t, int a);

/// Raw contour integral on Re z = line (line != 0), with no residue added.
WeightEval weight_on_line(double x, double t, int a, double line);

/// dW_a(x; t)/dt, by differentiating the gamma ratio under the integral.
WeightEval weight_dt(double x, double t, int a);

/// Precomputed contour nodes for fixed (t, a): evaluating W at many x then
/// costs one complex rotation per node. Immutable after construction.
class WeightKernel {
 public:
  WeightKernel(double t, int a, bool with_derivative = false);

  double t() const { return t_; }
  int parity() const { return a_; }
  /// |1/4 + a/2 + it/2|: the scale where W switches from ~1 to ~0.
  double scale() const { return scale_; }

  /// W_a(x; t), fast path without error bookkeeping.
  double value(double x) const;
  /// dW/dt; requires construction with_derivative.
  double derivative(double x) const;
  /// W_a(x; t) with quadrature error estimate.
  WeightEval evaluate(double x) const;

 private:
  struct Line {
    double c = 0.0;
    std::vector<Complex> coeff;       // G(z) e^{z^2} / z at z = c + i j h
    std::vector<Complex> coeff_dt;    // same times d/dt log G
    std::size_t used = 0;             // nodes kept after pruning
  };

  const Line& pick(double x) const;
  static Line build(double t, int a, double c, bool with_derivative);

  double t_;
  int a_;
  double scale_;
  Line right_;
  Line shifted_;
};

// ---------------------------------------------------------------------------
// Hurwitz zeta and L-values

struct HurwitzResult {
  Complex value;
  double error_estimate = 0.0;
};

/// zeta(s, alpha) by Euler-Maclaurin with shift M = max(20, 2|Im s|) and
/// twelve Bernoulli corrections. Throws std::domain_error at s = 1, for
/// Re s <= -1, or for alpha outside (0, 1].
HurwitzResult hurwitz_zeta(Complex s, double alpha);
HurwitzResult hurwitz_zeta(Complex s, double alpha, std::uint64_t shift);

std::uint64_t default_em_shift(Complex s);

enum class LMethod { oracle, smoothed };

struct LValueResult {
  Complex s;
  std::string character_id;
  Complex value;
  LMethod method = LMethod::oracle;
  double error_estimate = 0.0;
};

/// L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q), evaluated at shifts M and
/// 2M; the 2M value is returned and error_estimate covers the difference.
/// Throws std::domain_error at s = 1 for principal chi.
LValueResult l_oracle(Complex s, const characters::DirichletCharacter& chi);

/// Single-depth Hurwitz evaluation from a precomputed value table; the inner
/// loop of moment integration.
Complex l_value(Complex s, std::span<const Complex> chi_table,
                std::uint64_t shift);

/// Lambda(1/2 + s, chi) = (q/pi)^{s/2} Gamma(1/4 + s/2 + a/2) L(1/2 + s, chi).
/// Throws std::invalid_argument for non-primitive chi.
Complex completed_lambda(Complex s, const characters::DirichletCharacter& chi);

/// |Lambda(1/2+s, chi) - tau(chi)/(i^a sqrt q) Lambda(1/2-s, conj chi)|
/// relative to |Lambda(1/2+s, chi)|.
double functional_equation_residual(Complex s,
                                    const characters::DirichletCharacter& chi);

// ---------------------------------------------------------------------------
// Smoothed series for |L(1/2 + it, chi)|^2

struct SmoothedSeries {
  /// 2 sum_{n <= N} c_n W_a(pi n / q; t); approximates |L(1/2+it, chi)|^2.
  double full = 0.0;
  /// sum_{n <= split} c_n W_a(pi n / q; t), kept as a complex pair.
  Complex head;
  /// Truncation point N.
  std::uint64_t terms = 0;
  /// 2 sum over the last dyadic block of |c_n W_n|.
  double last_block = 0.0;
};

/// W_a(pi n / q; t) for n = 1, 2, ..., extended on demand. Characters mod q
/// of equal parity can share one table at a given t.
class WeightTable {
 public:
  WeightTable(double t, int a, std::uint64_t q);

  double t() const { return kernel_.t(); }
  int parity() const { return kernel_.parity(); }
  std::uint64_t modulus() const { return q_; }

  /// Makes entries 1..n available.
  void extend(std::uint64_t n);
  /// Entry n (1-based); extend() must already cover it.
  double operator[](std::uint64_t n) const { return values_[n]; }
  std::uint64_t size() const { return values_.size() - 1; }

 private:
  WeightKernel kernel_;
  std::uint64_t q_;
  std::vector<double> values_;
};

/// c_n = sum_{ab = n} chi(a) conj(chi(b)) (ab)^{-1/2} (a/b)^{-it}.
/// Truncation starts at N = (q tau/pi) max(4, eps^{-1/2}/tau) and doubles
/// until the last dyadic block contributes less than eps/4.
/// Throws std::invalid_argument for non-primitive chi, std::domain_error for
/// eps < 1e-9.
SmoothedSeries smoothed_series(double t,
                               const characters::DirichletCharacter& chi,
                               double eps,
                               std::optional<double> split = std::nullopt,
                               WeightTable* weights = nullptr);

double abs_L_sq_smoothed(double t, const characters::DirichletCharacter& chi,
                         double eps);

}  // namespace lmoment::analytic
