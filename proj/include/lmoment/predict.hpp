#pragma once

// Closed-form main terms for the moments of L(1/2 + it, chi).

#include <cstdint>

namespace lmoment::predict {

inline constexpr double kEulerGamma = 0.57721566490153286;

/// phi*(q) T / (2 pi^2) prod_{p | q} (1 - 1/p)^3 / (1 + 1/p) (log qT)^4.
/// The fourth-moment main term summed over primitive characters.
double theorem1_main(std::uint64_t q, double T);

/// Rane's main term coincides with theorem1_main.
inline double rane_main(std::uint64_t q, double T) { return theorem1_main(q, T); }

/// The diagonal contribution of A^2; exactly theorem1_main / 4.
double eq7_main(std::uint64_t q, double T);

/// Per-character second-moment main term
///   (phi(q) T / q) (log(qT / 2 pi) + 2 gamma + 2 sum_{p | q} log p / (p - 1)).
double motohashi_main(std::uint64_t q, double T);

/// motohashi_main summed over the phi*(q) primitive characters.
double second_moment_main(std::uint64_t q, double T);

struct PredictionTable {
  std::uint64_t q = 1;
  double T = 0.0;
  double theorem1 = 0.0;
  double eq7 = 0.0;
  double motohashi = 0.0;
  double montgomery_scale = 0.0;  // phi(q) T (log qT)^4
  double nonprim_ratio = 1.0;     // (q / phi(q))^5
  bool in_hypothesis = false;     // q, T >= 2
};

/// Throws std::domain_error for q = 0 or T <= 0.
PredictionTable prediction_table(std::uint64_t q, double T);

}  // namespace lmoment::predict
