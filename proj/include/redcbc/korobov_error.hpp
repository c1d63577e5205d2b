#pragma once

#include <cstdint>

#include "redcbc/generating_vector.hpp"
#include "redcbc/kernel.hpp"
#include "redcbc/reduction.hpp"
#include "redcbc/space_params.hpp"
#include "redcbc/weights.hpp"

namespace redcbc {

/// Exact squared worst-case error for product weights,
/// e^2 = -1 + (1/N) sum_n prod_j [1 + gamma_j phi_alpha({n zbar_j / N})],
/// with index arithmetic n * zbar_j mod N done in integers. O(sN).
/// When a schedule is supplied the lambda = 1 bound is filled in.
ErrorReport wce_product(const SpaceParams& params, const Weights& gamma,
                        const GeneratingVector& vec, const KernelProfile& profile,
                        const ReductionSchedule* schedule = nullptr);

/// Squared worst-case error for general subset weights by subset enumeration,
/// e^2 = sum_u gamma_u (1/N) sum_n prod_{j in u} phi_alpha({n zbar_j / N}).
/// Capacity-guarded to s <= 20.
ErrorReport wce_general(const SpaceParams& params, const Weights& gamma,
                        const GeneratingVector& vec, const KernelProfile& profile,
                        const ReductionSchedule* schedule = nullptr);

/// Truncated dual-lattice sum over the box |h_j| <= H plus a rigorous bound on
/// the neglected mass. Test oracle only; s <= 4.
struct DualSumResult {
  double value = 0.0;
  double tail_bound = 0.0;
};
DualSumResult wce_dual_oracle(const SpaceParams& params, const Weights& gamma,
                              const GeneratingVector& vec, std::uint64_t box_bound);

/// Worst-case error bound for CBC-constructed vectors at quality parameter
/// lambda in (1/alpha, 1]:
///   ( sum_{u != 0} gamma_u^lambda 2 (2 zeta(alpha lambda))^|u|
///       / b^(max(0, m - max_{j in u} w_j)) )^(1/lambda).
/// Product weights use an O(d) factored form; general weights enumerate
/// subsets (d <= 20). Returns +inf when the zeta argument is at or below 1.
double theorem_bound(const SpaceParams& params, const Weights& gamma,
                     const ReductionSchedule& schedule, int d, double lambda);

/// Tractability constants derived from the bound at 1/lambda = alpha - 2 delta.
struct CorollaryConstants {
  double c_sadw = 0.0;        // e_{N,s} <= c_sadw * N^(-alpha/2 + delta)
  double c_delta_q = 0.0;     // max over s' <= s of the normalized weight sum
  double product_bound = 0.0; // product-weight upper bound for c_sadw (0 if general)
};
CorollaryConstants corollary_constants(const SpaceParams& params, const Weights& gamma,
                                       const ReductionSchedule& schedule, double delta,
                                       double q, int s);

}  // namespace redcbc
