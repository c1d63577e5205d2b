#include "redcbc/zeta.hpp"

#include <cmath>

#include "redcbc/errors.hpp"
#include "redcbc/numeric.hpp"

namespace redcbc {

namespace {

// B_2, B_4, ..., B_18
constexpr double kEvenBernoulli[] = {
    1.0 / 6.0,       -1.0 / 30.0,     1.0 / 42.0,
    -1.0 / 30.0,     5.0 / 66.0,      -691.0 / 2730.0,
    7.0 / 6.0,       -3617.0 / 510.0, 43867.0 / 798.0,
};

}  // namespace

double riemann_zeta(double x) {
  if (!(x > 1.0)) throw DomainError("riemann_zeta: requires x > 1");

  constexpr int kCutoff = 64;
  NeumaierSum head;
  for (int n = 1; n < kCutoff; ++n) {
    head.add(std::pow(static_cast<double>(n), -x));
  }

  const double m = static_cast<double>(kCutoff);
  double tail = std::pow(m, 1.0 - x) / (x - 1.0) + 0.5 * std::pow(m, -x);

  // Euler-Maclaurin correction terms B_{2k}/(2k)! * x(x+1)...(x+2k-2) * m^{-x-2k+1}
  double rising = x;          // x(x+1)...(x+2k-2)
  double factorial = 2.0;     // (2k)!
  double mpow = std::pow(m, -x - 1.0);
  for (int k = 1; k <= 9; ++k) {
    tail += kEvenBernoulli[k - 1] / factorial * rising * mpow;
    rising *= (x + 2.0 * k - 1.0) * (x + 2.0 * k);
    factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    mpow /= m * m;
  }

  return head.value() + tail;
}

}  // namespace redcbc
