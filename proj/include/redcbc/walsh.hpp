#pragma once

#include <cstdint>
#include <complex>
#include <vector>

#include "redcbc/cbc.hpp"
#include "redcbc/generating_vector.hpp"
#include "redcbc/reduction.hpp"
#include "redcbc/space_params.hpp"
#include "redcbc/weights.hpp"

namespace redcbc {

/// psi_b(h) = floor(log_b h) for h >= 1.
int walsh_log(std::uint64_t b, std::uint64_t h);

/// mu_b(alpha) = sum_{h >= 1} b^(-alpha psi_b(h)) = b^alpha (b-1) / (b^alpha - b),
/// finite for alpha > 1.
double walsh_mu(std::uint64_t b, double alpha);

/// Kernel values over the b^m nodes of a polynomial lattice with modulus x^m.
/// values[n] = phi_alpha(nu(n / x^m)) with n the encoded polynomial; built by
/// one base-b fast Walsh (Chrestenson) transform of the aggregated
/// coefficients r[h'] = b^(-alpha psi_b(h')) + b^(-alpha m) mu_b(alpha)
/// (r[0] drops the first term). Works for any real alpha > 1.
struct WalshKernelProfile {
  double alpha = 0.0;
  std::uint64_t b = 0;
  int m = 0;
  std::uint64_t n_points = 0;
  double mu = 0.0;
  std::vector<double> values;
  std::vector<double> r;
};

WalshKernelProfile walsh_kernel_table(double alpha, std::uint64_t b, int m);

/// In-place base-b Chrestenson transform of complex data (length b^m);
/// butterfly matrix W[i][j] = exp(2 pi i * ij / b).
void chrestenson_transform(std::vector<std::complex<double>>& data, std::uint64_t b);

/// e^2 = -1 + (1/N) sum_n prod_j [1 + gamma_j phi(nu(n g_j / x^m))] with the
/// index arithmetic done by polynomial multiplication mod x^m. The vector's
/// effective components are encoded polynomials.
ErrorReport wce_walsh_product(const SpaceParams& params, const Weights& gamma,
                              const GeneratingVector& vec, const WalshKernelProfile& profile,
                              const ReductionSchedule* schedule = nullptr);

/// Subset form for general weights (s <= 20).
ErrorReport wce_walsh_general(const SpaceParams& params, const Weights& gamma,
                              const GeneratingVector& vec, const WalshKernelProfile& profile,
                              const ReductionSchedule* schedule = nullptr);

/// Bound for CBC-constructed polynomial lattice rules, lambda in (1/alpha, 1]:
///   ( b/(b-1) sum_{u != 0} gamma_u^lambda mu_b(alpha lambda)^|u|
///       / b^(max(0, m - max_{j in u} w_j)) )^(1/lambda).
double theorem_bound_walsh(const SpaceParams& params, const Weights& gamma,
                           const ReductionSchedule& schedule, int d, double lambda);

/// Tractability constant with e <= c * N^(-alpha/2 + delta) for constructed
/// polynomial lattice rules (same lambda substitution as the integer case).
double corollary_constant_walsh(const SpaceParams& params, const Weights& gamma,
                                const ReductionSchedule& schedule, double delta, int s);

/// Greedy construction over polynomial candidates (deg h < m - w_d, h(0) != 0),
/// reusing the running eta vector; each candidate criterion value is a direct
/// O(N) dot product. No FFT path: desk-scale m only.
CbcResult reduced_cbc_poly(const SpaceParams& params, const Weights& weights,
                           const ReductionSchedule& schedule, int s,
                           const WalshKernelProfile& profile,
                           const CbcObserver& observer = nullptr);

/// Order and invariant-factor count of the unit group of F_b[x]/(x^k),
/// computed by exhaustive element-order statistics (k <= 12).
struct UnitGroupSummary {
  std::uint64_t order = 0;
  int factor_count = 0;
};
UnitGroupSummary check_unit_group_lemma(std::uint64_t b, int k);

}  // namespace redcbc
