#pragma once

#include <cstdint>
#include <memory>

namespace lmoment {

/// 64-bit Mersenne Twister with platform-stable bounded draws, so a seed
/// reproduces the same sample everywhere.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed = 0);
  ~SeededRng();
  SeededRng(SeededRng&&) noexcept;
  SeededRng& operator=(SeededRng&&) noexcept;

  /// Uniform on [lo, hi].
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);
  /// Uniform on [lo, hi).
  double uniform_real(double lo, double hi);

 private:
  struct Engine;
  std::unique_ptr<Engine> engine_;
};

}  // namespace lmoment
