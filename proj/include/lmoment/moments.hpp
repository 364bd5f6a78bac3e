#pragma once

// Moments of |L(1/2 + it, chi)| over t in [0, T], summed over primitive
// characters mod q, and the A/B split of the fourth moment.

#include "lmoment/characters.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lmoment::moments {

struct MomentSpec {
  std::uint64_t q = 3;
  double T = 10.0;
  int order = 4;
  double panel_width = 0.25;
  int points_per_panel = 8;
  double eps_series = 1e-6;
  std::optional<int> parity_filter;
};

/// Throws std::invalid_argument when a field is out of range.
void validate(const MomentSpec& spec);

struct SplitSpec {
  double Z = 0.0;   // qT / 2^omega(q)
  double Z0 = 0.0;  // Z / 9^omega(q)
};

SplitSpec split_spec(std::uint64_t q, double T);

struct Integral {
  double value = 0.0;
  double quad_error = 0.0;
};

/// int_{t0}^{t1} |L(1/2 + it, chi)|^order dt on Gauss-Legendre panels.
/// Throws std::invalid_argument for non-primitive chi.
Integral integrate_power(const characters::DirichletCharacter& chi, double t0,
                         double t1, int order, const MomentSpec& spec);

inline Integral integrate_power(const characters::DirichletCharacter& chi,
                                double T, int order, const MomentSpec& spec) {
  return integrate_power(chi, 0.0, T, order, spec);
}

struct CharacterMoment {
  std::string id;
  int parity = 0;
  double value = 0.0;
  double quad_error = 0.0;
  std::vector<double> panels;  // per-panel integrals in t order
};

struct MomentResult {
  MomentSpec spec;
  double empirical = 0.0;
  double predicted = 0.0;
  /// empirical / predicted; NaN when the prediction vanishes.
  double ratio = 0.0;
  std::uint64_t char_count = 0;
  double quadrature_error = 0.0;
  std::vector<CharacterMoment> per_character;
  /// Width of the equal panels actually used (T split into ceil(T / width)).
  double panel_width = 0.0;
};

/// Sums integrate_power over the primitive characters mod q, using up to
/// `workers` threads. The result does not depend on the worker count.
MomentResult moment(const MomentSpec& spec, unsigned workers = 1);

struct ABSplit {
  Complex A;
  Complex B;
};

/// A = the smoothed-series terms with ab <= Z, B = |L|^2 / 2 - A.
ABSplit ab_split(double t, const characters::DirichletCharacter& chi, double Z,
                 double eps);

struct DecomposedMoment {
  double A2 = 0.0;
  double AB = 0.0;
  double B2 = 0.0;
  /// 4 (A2 + 2 AB + B2)
  double total = 0.0;
  double quad_error = 0.0;
  double Z = 0.0;
  std::uint64_t char_count = 0;
};

/// Integrals of A^2, AB and B^2 over [0, T] summed over primitive characters,
/// with Z = qT / 2^omega(q). Only spec.q, spec.T, the panel fields and
/// spec.eps_series are used.
DecomposedMoment decomposed_fourth_moment(const MomentSpec& spec, unsigned workers = 1);

}  // namespace lmoment::moments
