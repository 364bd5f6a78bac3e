#include "lmoment/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace lmoment {

unsigned default_worker_count() {
  const char* env = std::getenv("LMOMENT_WORKERS");
  if (env == nullptr) return 1;
  unsigned v = 0;
  const char* end = env + std::strlen(env);
  auto [ptr, ec] = std::from_chars(env, end, v);
  if (ec != std::errc{} || ptr != end || v == 0) return 1;
  return v;
}

}  // namespace lmoment
