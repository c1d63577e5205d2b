#include "redcbc/kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "redcbc/errors.hpp"

namespace redcbc {

std::vector<double> bernoulli_numbers(int n) {
  if (n < 0) throw ValidationError("bernoulli_numbers: negative order");
  std::vector<double> b(n + 1, 0.0);
  b[0] = 1.0;
  // sum_{k=0}^{m-1} C(m+1,k) B_k = 0
  for (int m = 1; m <= n; ++m) {
    double binom = 1.0;  // C(m+1, 0)
    double acc = 0.0;
    for (int k = 0; k < m; ++k) {
      acc += binom * b[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    b[m] = -acc / (m + 1);
  }
  return b;
}

std::vector<double> bernoulli_poly_coeffs(int n) {
  const std::vector<double> b = bernoulli_numbers(n);
  std::vector<double> coeffs(n + 1);
  double binom = 1.0;  // C(n, k)
  for (int k = 0; k <= n; ++k) {
    coeffs[k] = binom * b[k];  // coefficient of x^(n-k)
    binom = binom * (n - k) / (k + 1);
  }
  return coeffs;
}

double bernoulli_poly(int n, double x) {
  const std::vector<double> coeffs = bernoulli_poly_coeffs(n);
  double y = 0.0;
  for (double c : coeffs) y = y * x + c;
  return y;
}

double kernel_scale(int alpha) {
  if (alpha < 2 || alpha % 2 != 0) {
    throw UnsupportedSmoothnessError("kernel_scale: alpha must be a positive even integer");
  }
  double factorial = 1.0;
  for (int i = 2; i <= alpha; ++i) factorial *= i;
  const double sign = (alpha / 2 + 1) % 2 == 0 ? 1.0 : -1.0;
  return sign * std::pow(2.0 * std::numbers::pi, alpha) / factorial;
}

KernelProfile phi_korobov_table(const SpaceParams& params) {
  const double a = params.alpha;
  const int ai = static_cast<int>(std::lround(a));
  if (!(a > 1.0) || static_cast<double>(ai) != a || ai % 2 != 0) {
    throw UnsupportedSmoothnessError(
        "phi_korobov_table: closed form needs a positive even integer alpha, got " +
        std::to_string(a));
  }

  const std::vector<double> coeffs = bernoulli_poly_coeffs(ai);
  const double scale = kernel_scale(ai);
  const std::uint64_t n_points = params.n_points;

  KernelProfile profile;
  profile.kind = KernelProfile::Kind::korobov;
  profile.alpha = a;
  profile.base = params.b;
  profile.values.resize(n_points);
  for (std::uint64_t n = 0; n < n_points; ++n) {
    const double x = static_cast<double>(n) / static_cast<double>(n_points);
    double y = 0.0;
    for (double c : coeffs) y = y * x + c;
    profile.values[n] = scale * y;
  }
  return profile;
}

}  // namespace redcbc
