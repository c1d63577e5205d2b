#include "redcbc/numeric.hpp"

#include <numeric>
#include <stdexcept>

#include "redcbc/errors.hpp"

namespace redcbc {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rational Rational::parse(const std::string& text) {
  if (text.empty()) throw ValidationError("empty rational literal");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::string a = text.substr(0, slash);
    const std::string b = text.substr(slash + 1);
    try {
      return Rational(std::stoll(a), std::stoll(b));
    } catch (const std::exception&) {
      throw ValidationError("bad rational literal: " + text);
    }
  }
  const auto dot = text.find('.');
  try {
    if (dot == std::string::npos) {
      return Rational(std::stoll(text), 1);
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t frac_digits = text.size() - dot - 1;
    if (frac_digits > 15) throw ValidationError("too many decimal digits: " + text);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac_digits; ++i) den *= 10;
    if (digits.empty() || digits == "-" || digits == "+") {
      throw ValidationError("bad rational literal: " + text);
    }
    return Rational(std::stoll(digits), den);
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception&) {
    throw ValidationError("bad rational literal: " + text);
  }
}

void BigUInt::trim() {
  while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
}

BigUInt& BigUInt::mul(const BigUInt& other) {
  std::vector<std::uint64_t> out(limbs_.size() + other.limbs_.size(), 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    unsigned __int128 carry = 0;
    for (std::size_t j = 0; j < other.limbs_.size(); ++j) {
      unsigned __int128 cur = static_cast<unsigned __int128>(limbs_[i]) * other.limbs_[j] +
                              out[i + j] + carry;
      out[i + j] = static_cast<std::uint64_t>(cur);
      carry = cur >> 64;
    }
    std::size_t k = i + other.limbs_.size();
    while (carry != 0) {
      unsigned __int128 cur = static_cast<unsigned __int128>(out[k]) + carry;
      out[k] = static_cast<std::uint64_t>(cur);
      carry = cur >> 64;
      ++k;
    }
  }
  limbs_ = std::move(out);
  trim();
  return *this;
}

BigUInt BigUInt::pow(std::uint64_t base, std::uint64_t exp) {
  BigUInt result(1);
  BigUInt b(base);
  while (exp > 0) {
    if (exp & 1u) result.mul(b);
    exp >>= 1;
    if (exp > 0) {
      BigUInt b2 = b;
      b.mul(b2);
    }
  }
  return result;
}

int BigUInt::compare(const BigUInt& other) const {
  if (limbs_.size() != other.limbs_.size()) {
    return limbs_.size() < other.limbs_.size() ? -1 : 1;
  }
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    if (limbs_[i] != other.limbs_[i]) return limbs_[i] < other.limbs_[i] ? -1 : 1;
  }
  return 0;
}

int floor_scaled_log(std::uint64_t b, std::uint64_t j, const Rational& c) {
  if (b < 2) throw ValidationError("floor_scaled_log: base must be >= 2");
  if (j < 1) throw ValidationError("floor_scaled_log: j must be >= 1");
  if (c.negative()) throw ValidationError("floor_scaled_log: negative factor");
  if (c.is_zero() || j == 1) return 0;

  const std::uint64_t p = static_cast<std::uint64_t>(c.num);
  const std::uint64_t q = static_cast<std::uint64_t>(c.den);
  const BigUInt target = BigUInt::pow(j, p);
  const BigUInt step = BigUInt::pow(b, q);

  // largest w with b^(w q) <= j^p; the loop runs O(c log_b j) times
  int w = 0;
  BigUInt cur(1);
  for (;;) {
    BigUInt next = cur;
    next.mul(step);
    if (next.compare(target) > 0) break;
    cur = std::move(next);
    ++w;
    if (w > 4096) throw ValidationError("floor_scaled_log: exponent out of range");
  }
  return w;
}

}  // namespace redcbc
