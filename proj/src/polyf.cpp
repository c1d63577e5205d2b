#include "redcbc/polyf.hpp"

#include <string>

#include "redcbc/errors.hpp"
#include "redcbc/numeric.hpp"

namespace redcbc {

namespace {

std::uint64_t pow_u64(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

PolyF PolyF::from_encoding(std::uint64_t code, std::uint64_t base) {
  if (base < 2) throw ValidationError("PolyF: base must be >= 2");
  PolyF p;
  p.base = base;
  while (code > 0) {
    p.coeffs.push_back(static_cast<std::uint8_t>(code % base));
    code /= base;
  }
  return p;
}

std::uint64_t PolyF::encoding() const {
  std::uint64_t code = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) code = code * base + coeffs[i];
  return code;
}

int PolyF::degree() const {
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] != 0) return static_cast<int>(i);
  }
  return -1;
}

std::uint64_t poly_mul_mod_encoded(std::uint64_t a, std::uint64_t c, std::uint64_t b, int m) {
  const std::uint64_t modulus = pow_u64(b, m);
  if (b == 2) {
    // carry-less multiply, truncated to m bits
    a &= modulus - 1;
    c &= modulus - 1;
    std::uint64_t r = 0;
    while (a != 0) {
      if (a & 1u) r ^= c;
      a >>= 1;
      c = (c << 1) & (modulus - 1);
    }
    return r;
  }
  std::uint8_t da[64], dc[64];
  int acc[64] = {0};
  a %= modulus;
  c %= modulus;
  for (int i = 0; i < m; ++i) {
    da[i] = static_cast<std::uint8_t>(a % b);
    dc[i] = static_cast<std::uint8_t>(c % b);
    a /= b;
    c /= b;
  }
  for (int i = 0; i < m; ++i) {
    if (da[i] == 0) continue;
    for (int j = 0; j + i < m; ++j) acc[i + j] += da[i] * dc[j];
  }
  std::uint64_t code = 0;
  for (int i = m; i-- > 0;) code = code * b + static_cast<std::uint64_t>(acc[i] % b);
  return code;
}

PolyF poly_mul_mod(const PolyF& a, const PolyF& c, int m) {
  if (a.base != c.base) throw ValidationError("poly_mul_mod: base mismatch");
  if (!is_prime(a.base)) throw ValidationError("poly_mul_mod: base must be prime");
  if (m < 1 || m > 20) throw ValidationError("poly_mul_mod: modulus degree out of range");
  return PolyF::from_encoding(poly_mul_mod_encoded(a.encoding(), c.encoding(), a.base, m),
                              a.base);
}

double nu_map(std::uint64_t f_encoded, std::uint64_t b, int m) {
  // sum_i a_i / b^(m-i) = (encoded value of f mod x^m) / b^m
  const std::uint64_t modulus = pow_u64(b, m);
  return static_cast<double>(f_encoded % modulus) / static_cast<double>(modulus);
}

std::vector<std::uint32_t> poly_mul_table(std::uint64_t c, std::uint64_t b, int m) {
  const std::uint64_t modulus = pow_u64(b, m);
  if (modulus > (std::uint64_t{1} << 31)) throw CapacityError("poly_mul_table: b^m too large");
  std::vector<std::uint32_t> table(modulus);
  c %= modulus;
  if (b == 2) {
    const std::uint64_t mask = modulus - 1;
    table[0] = 0;
    for (std::uint64_t n = 1; n < modulus; ++n) {
      // n = (n >> 1) * x + (n & 1)
      const std::uint64_t shifted = (static_cast<std::uint64_t>(table[n >> 1]) << 1) & mask;
      table[n] = static_cast<std::uint32_t>((n & 1u) ? shifted ^ c : shifted);
    }
    return table;
  }
  // r * c for r = 0..b-1 (digitwise scalar multiples)
  std::vector<std::uint64_t> scalar(b, 0);
  for (std::uint64_t r = 1; r < b; ++r) {
    std::uint64_t cc = c;
    std::uint64_t code = 0;
    std::uint64_t place = 1;
    for (int i = 0; i < m; ++i) {
      code += (cc % b * r) % b * place;
      cc /= b;
      place *= b;
    }
    scalar[r] = code;
  }
  table[0] = 0;
  for (std::uint64_t n = 1; n < modulus; ++n) {
    const std::uint64_t head = scalar[n % b];
    std::uint64_t shifted = static_cast<std::uint64_t>(table[n / b]);
    // multiply by x: shift digits up, drop the top one
    shifted = shifted % (modulus / b) * b;
    // digitwise addition head + shifted (no carries across digits)
    std::uint64_t sum = 0;
    std::uint64_t place = 1;
    std::uint64_t u = head, v = shifted;
    for (int i = 0; i < m; ++i) {
      sum += (u % b + v % b) % b * place;
      u /= b;
      v /= b;
      place *= b;
    }
    table[n] = static_cast<std::uint32_t>(sum);
  }
  return table;
}

std::vector<std::vector<double>> plattice_points(const std::vector<std::uint64_t>& g_encoded,
                                                 std::uint64_t b, int m) {
  const std::uint64_t modulus = pow_u64(b, m);
  std::vector<std::vector<double>> points(modulus, std::vector<double>(g_encoded.size()));
  for (std::size_t j = 0; j < g_encoded.size(); ++j) {
    const std::vector<std::uint32_t> products = poly_mul_table(g_encoded[j], b, m);
    for (std::uint64_t n = 0; n < modulus; ++n) {
      points[n][j] = nu_map(products[n], b, m);
    }
  }
  return points;
}

}  // namespace redcbc
