#include "lmoment/random.hpp"

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

namespace lmoment {

struct SeededRng::Engine {
  boost::random::mt19937_64 gen;
};

SeededRng::SeededRng(std::uint64_t seed) : engine_(std::make_unique<Engine>()) {
  engine_->gen.seed(seed);
}

SeededRng::~SeededRng() = default;
SeededRng::SeededRng(SeededRng&&) noexcept = default;
SeededRng& SeededRng::operator=(SeededRng&&) noexcept = default;

std::uint64_t SeededRng::uniform_int(std::uint64_t lo, std::uint64_t hi) {
  return boost::random::uniform_int_distribution<std::uint64_t>(lo, hi)(engine_->gen);
}

double SeededRng::uniform_real(double lo, double hi) {
  return boost::random::uniform_real_distribution<double>(lo, hi)(engine_->gen);
}

}  // namespace lmoment
