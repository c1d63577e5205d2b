#pragma once

#include <vector>

#include "redcbc/space_params.hpp"

namespace redcbc {

/// Bernoulli numbers B_0..B_n (B_1 = -1/2 convention).
std::vector<double> bernoulli_numbers(int n);

/// Coefficients of the Bernoulli polynomial B_n(x), highest power first.
std::vector<double> bernoulli_poly_coeffs(int n);

double bernoulli_poly(int n, double x);

/// Scale factor s_alpha with sum_{h != 0} e^(2 pi i h x)/|h|^alpha = s_alpha * B_alpha(x)
/// for even alpha: s_alpha = (-1)^(alpha/2+1) (2 pi)^alpha / alpha!.
double kernel_scale(int alpha);

/// Tabulated kernel values over the node grid. For the Fourier kernel,
/// values[n] = phi_alpha(n/N); the Walsh-space analog is built in walsh.hpp.
struct KernelProfile {
  enum class Kind { korobov, walsh };
  Kind kind = Kind::korobov;
  double alpha = 0.0;
  std::uint64_t base = 0;
  std::vector<double> values;
  double mu = 0.0;  // Walsh kind only

  std::uint64_t size() const { return values.size(); }
};

/// phi_alpha at the N rational nodes n/N, alpha a positive even integer
/// (closed Bernoulli form); O(N).
KernelProfile phi_korobov_table(const SpaceParams& params);

}  // namespace redcbc
