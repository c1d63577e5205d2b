#pragma once

#include <cstdint>

namespace redcbc {

/// Point-count parameters: N = b^m points with b prime, plus the smoothness
/// exponent alpha > 1 of the function space.
struct SpaceParams {
  std::uint64_t b = 0;
  int m = 0;
  std::uint64_t n_points = 0;  // b^m, computed by repeated multiplication
  double alpha = 0.0;

  static SpaceParams make(std::uint64_t b, int m, double alpha);
};

}  // namespace redcbc
