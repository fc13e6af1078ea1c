#include "closurelab/errors.hpp"

#include <cstdlib>
#include <string>

namespace closurelab {

std::size_t enumeration_cap() {
  if (const char* env = std::getenv("CLOSURELAB_CAP")) {
    try {
      const auto v = std::stoull(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return 1'000'000;
}

}  // namespace closurelab
