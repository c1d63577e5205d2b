#pragma once

#include <cstdint>
#include <vector>

namespace redcbc {

/// Polynomial over F_b, little-endian coefficient digits. The digit string
/// read as a base-b integer is the canonical encoding; arithmetic helpers
/// below work on encodings directly (a polynomial of degree < m is encoded
/// in [0, b^m)). Reduction mod x^m is truncation to the low m digits, i.e.
/// encoding mod b^m.
struct PolyF {
  std::vector<std::uint8_t> coeffs;  // coeffs[i] multiplies x^i
  std::uint64_t base = 2;

  static PolyF from_encoding(std::uint64_t code, std::uint64_t base);
  std::uint64_t encoding() const;
  int degree() const;  // -1 for the zero polynomial
};

/// (a * c) mod x^m over F_b.
PolyF poly_mul_mod(const PolyF& a, const PolyF& c, int m);

/// Encoded variant; a and c need not be reduced.
std::uint64_t poly_mul_mod_encoded(std::uint64_t a, std::uint64_t c, std::uint64_t b, int m);

/// nu(f / x^m): digit-reversal map into [0, 1); f is reduced mod x^m first.
double nu_map(std::uint64_t f_encoded, std::uint64_t b, int m);

/// Encoded products n * c mod x^m for every n in [0, b^m); O(N) for b = 2,
/// O(N m) otherwise. The per-candidate workhorse of the polynomial CBC.
std::vector<std::uint32_t> poly_mul_table(std::uint64_t c, std::uint64_t b, int m);

/// Point set of the polynomial lattice rule with the given (effective)
/// generating components: x_n = (nu(n g_1 / x^m), ..., nu(n g_s / x^m)).
std::vector<std::vector<double>> plattice_points(const std::vector<std::uint64_t>& g_encoded,
                                                 std::uint64_t b, int m);

}  // namespace redcbc
