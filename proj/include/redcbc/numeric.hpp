#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace redcbc {

/// Compensated (Neumaier) accumulator for long sums with mixed magnitudes.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

bool is_prime(std::uint64_t n);

/// Exact nonnegative rational. Used where a floating-point log could flip an
/// integer decision (reduction-schedule exponents, weight rules).
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d);

  /// Accepts "3", "1.5", "-2/3", "0.75". Decimal digits are converted
  /// exactly (base-10 scaling), no binary rounding.
  static Rational parse(const std::string& text);

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool negative() const { return num < 0; }
  bool is_zero() const { return num == 0; }
};

/// Minimal unsigned bignum, only what exact power comparisons need.
class BigUInt {
 public:
  BigUInt() : limbs_{0} {}
  explicit BigUInt(std::uint64_t v) : limbs_{v} {}

  static BigUInt pow(std::uint64_t base, std::uint64_t exp);

  BigUInt& mul(const BigUInt& other);

  // -1, 0, +1
  int compare(const BigUInt& other) const;

 private:
  std::vector<std::uint64_t> limbs_;  // little-endian, no leading zero limb
  void trim();
};

/// floor((p/q) * log_b(j)) for j >= 1, c = p/q >= 0, computed as the largest
/// w >= 0 with b^(w*q) <= j^p in exact integer arithmetic.
int floor_scaled_log(std::uint64_t b, std::uint64_t j, const Rational& c);

}  // namespace redcbc
