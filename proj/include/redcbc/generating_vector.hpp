#pragma once

#include <cstdint>
#include <vector>

namespace redcbc {

/// Output of a CBC construction. In integer mode components are the selected
/// z_j and effective[j] = Y_j z_j mod N; in polynomial mode both are digit
/// encodings of polynomials over F_b (little-endian base-b digits) and the
/// product is taken mod x^m. effective[j] == 0 exactly when w_j >= m.
struct GeneratingVector {
  enum class Kind { integer, polynomial };
  Kind kind = Kind::integer;
  std::vector<int> w;                    // reduction exponents used
  std::vector<std::uint64_t> components; // z_j (or encoded g_j)
  std::vector<std::uint64_t> effective;  // Y_j z_j mod N (or mod x^m)
  std::vector<double> trace;             // squared error after each dimension

  int dimension() const { return static_cast<int>(components.size()); }
};

/// Squared worst-case error together with the Theorem-style bound at lambda = 1.
struct ErrorReport {
  enum class Method { product_fast, general_subset, dual_oracle };
  double squared_error = 0.0;
  double log10_error = 0.0;     // log10(sqrt(squared_error))
  double bound_lambda1 = 0.0;   // 0 when no schedule context was available
  Method method = Method::product_fast;
};

}  // namespace redcbc
