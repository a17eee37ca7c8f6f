#include "densemg/parallel.hpp"

#include <cstdlib>
#include <string>

namespace densemg {

std::size_t worker_count() {
  if (const char* env = std::getenv("DENSEMG_WORKERS"); env != nullptr && *env != '\0') {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace densemg
