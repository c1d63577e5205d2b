#include "redcbc/space_params.hpp"

#include <string>

#include "redcbc/errors.hpp"
#include "redcbc/numeric.hpp"

namespace redcbc {

namespace {
// Table allocations are N doubles; keep desk-scale runs in memory.
constexpr std::uint64_t kMaxPoints = std::uint64_t{1} << 26;
}  // namespace

SpaceParams SpaceParams::make(std::uint64_t b, int m, double alpha) {
  if (!is_prime(b)) {
    throw ValidationError("SpaceParams: base b = " + std::to_string(b) + " is not prime");
  }
  if (m < 1) throw ValidationError("SpaceParams: exponent m must be >= 1");
  if (!(alpha > 1.0)) throw ValidationError("SpaceParams: smoothness alpha must exceed 1");

  std::uint64_t n = 1;
  for (int i = 0; i < m; ++i) {
    if (n > kMaxPoints / b) {
      throw CapacityError("SpaceParams: b^m exceeds the supported point count");
    }
    n *= b;
  }
  return SpaceParams{b, m, n, alpha};
}

}  // namespace redcbc
