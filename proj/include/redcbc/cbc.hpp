#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "redcbc/generating_vector.hpp"
#include "redcbc/kernel.hpp"
#include "redcbc/korobov_error.hpp"
#include "redcbc/reduction.hpp"
#include "redcbc/space_params.hpp"
#include "redcbc/weights.hpp"

namespace redcbc {

struct CbcCounters {
  std::uint64_t candidate_evals = 0;
  std::uint64_t multiply_adds = 0;
};

/// Snapshot handed to the per-step observer (testing hook).
struct CbcState {
  int d = 0;                          // dimension just completed
  std::span<const double> eta;        // eta_d over the N nodes
  std::span<const double> t_values;   // criterion values over the step's candidates
  double squared_error = 0.0;         // -1 + mean(eta_d)
  const CbcCounters* counters = nullptr;
};

using CbcObserver = std::function<void(const CbcState&)>;

struct CbcResult {
  GeneratingVector vector;
  CbcCounters counters;
  ErrorReport error;  // for the full dimension s
};

/// Candidates within 1e-13 * max|score| of the minimum count as tied;
/// the smallest candidate wins. Keeps reruns and the two engines aligned.
constexpr double kTieRelativeBand = 1e-13;

/// Greedy construction evaluating every candidate's squared error from
/// scratch (product weights via the factored product, general weights via
/// subset enumeration, s <= 20). The reference engine.
CbcResult reduced_cbc_naive(const SpaceParams& params, const Weights& weights,
                            const ReductionSchedule& schedule, int s,
                            const KernelProfile& profile,
                            const CbcObserver& observer = nullptr);

/// Reduced fast construction (product weights, even alpha): per step folds
/// eta into b^(m - w_d) entries and applies the structured kernel matrix by
/// FFT. Selects the same vectors as the naive engine under the shared
/// tie rule.
CbcResult reduced_cbc_fast(const SpaceParams& params, const Weights& weights,
                           const ReductionSchedule& schedule, int s,
                           const KernelProfile& profile,
                           const CbcObserver& observer = nullptr);

/// Three-term operation-count model of the fast construction:
///   b^m  +  min(s, s*) b^m  +  sum_{d <= min(s, s*)} (m - w_d) b^(m - w_d),
/// s* counting the coordinates with w_d < m.
struct CostModel {
  std::uint64_t precompute = 0;
  std::uint64_t per_step = 0;
  std::uint64_t transforms = 0;
  std::uint64_t total() const { return precompute + per_step + transforms; }
};

CostModel cost_model(const ReductionSchedule& schedule, int s, int m, std::uint64_t b);

}  // namespace redcbc
