// Independent reference computations used by the tests. Everything here
// avoids the library's fast paths on purpose: direct summation, exhaustive
// enumeration, exact integer arithmetic.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracles {

// deterministic 64-bit generator (splitmix64)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ += 0x9E3779B97f4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

// zeta by brute partial sum plus a three-term integral tail
inline double zeta_partial_sum(double x, std::uint64_t terms) {
  double sum = 0.0;
  double comp = 0.0;
  for (std::uint64_t n = terms; n >= 1; --n) {  // ascending magnitudes
    const double v = std::pow(static_cast<double>(n), -x);
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  const double m = static_cast<double>(terms);
  const double tail = std::pow(m, 1.0 - x) / (x - 1.0) - 0.5 * std::pow(m, -x) +
                      x / 12.0 * std::pow(m, -x - 1.0);
  return sum + comp + tail;
}

// base-b digits of n, little-endian, padded to len
inline std::vector<int> digits_of(std::uint64_t n, std::uint64_t b, int len) {
  std::vector<int> d(len, 0);
  for (int i = 0; i < len && n > 0; ++i) {
    d[i] = static_cast<int>(n % b);
    n /= b;
  }
  return d;
}

// Walsh kernel phi_alpha at the node nu(n / x^m) by direct summation of
// sum_{h >= 1} b^(-alpha psi(h)) wal_h(x). Blocks b^t <= h < b^(t+1) with
// t >= m cancel exactly for nonzero nodes and reduce to a geometric series
// at the zero node, so the sum runs to b^(m+extra) and adds the closed tail.
inline double walsh_phi_direct(std::uint64_t node, double alpha, std::uint64_t b, int m,
                               int extra_blocks) {
  const int big = m + extra_blocks;
  std::uint64_t limit = 1;
  for (int i = 0; i < big; ++i) limit *= b;

  // digits of x = nu(node): reversed digits of the node polynomial
  std::vector<int> node_digits = digits_of(node, b, m);
  std::vector<int> x_digits(big, 0);
  for (int i = 0; i < m; ++i) x_digits[i] = node_digits[m - 1 - i];

  std::vector<std::complex<double>> omega(b);
  for (std::uint64_t i = 0; i < b; ++i) {
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(b);
    omega[i] = {std::cos(ang), std::sin(ang)};
  }

  std::complex<double> sum = 0.0;
  std::complex<double> comp = 0.0;
  int dot = 0;                       // digit dot product <h, x> mod b
  std::vector<int> h_digits(big, 0); // maintained incrementally
  double weight = 1.0;               // b^(-alpha psi(h)), updated at powers of b
  std::uint64_t next_power = b;
  int psi = 0;
  for (std::uint64_t h = 1; h < limit; ++h) {
    // increment h's digit counter and the running dot product
    int pos = 0;
    for (;;) {
      dot += x_digits[pos];
      if (++h_digits[pos] < static_cast<int>(b)) break;
      h_digits[pos] = 0;
      dot -= static_cast<int>(b) * x_digits[pos];
      ++pos;
    }
    if (h == next_power) {
      ++psi;
      weight = std::pow(static_cast<double>(b), -alpha * psi);
      next_power *= b;
    }
    const std::complex<double> term = weight * omega[((dot % static_cast<int>(b)) +
                                                      static_cast<int>(b)) %
                                                     static_cast<int>(b)];
    const std::complex<double> t = sum + term;
    comp += (sum - t) + term;
    sum = t;
  }
  // blocks beyond b^big: each full block of constant psi sums to zero at a
  // nonzero node and to (b-1) b^t at node 0, leaving an exact geometric mass
  if (node == 0) {
    const double r = std::pow(static_cast<double>(b), 1.0 - alpha);
    sum += static_cast<double>(b - 1) *
           std::pow(static_cast<double>(b), (1.0 - alpha) * big) / (1.0 - r);
  }
  return (sum + comp).real();
}

}  // namespace oracles
