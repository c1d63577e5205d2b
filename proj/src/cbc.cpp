#include "redcbc/cbc.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "redcbc/errors.hpp"
#include "redcbc/numeric.hpp"
#include "redcbc/omega.hpp"

namespace redcbc {

namespace {

void check_cbc_inputs(const SpaceParams& params, const Weights& weights,
                      const ReductionSchedule& schedule, int s,
                      const KernelProfile& profile) {
  if (s < 1) throw ValidationError("cbc: dimension must be >= 1");
  if (schedule.dimension() < s) throw ValidationError("cbc: schedule shorter than s");
  if (weights.dimension() < s) throw ValidationError("cbc: weights shorter than s");
  if (profile.kind != KernelProfile::Kind::korobov || profile.size() != params.n_points) {
    throw ValidationError("cbc: kernel profile does not match the parameters");
  }
}

// index of the smallest candidate whose score ties the minimum
std::size_t argmin_with_ties(std::span<const double> scores) {
  double min_score = scores[0];
  double max_abs = std::abs(scores[0]);
  for (double v : scores) {
    min_score = std::min(min_score, v);
    max_abs = std::max(max_abs, std::abs(v));
  }
  const double band = kTieRelativeBand * max_abs;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] <= min_score + band) return i;
  }
  return 0;
}

double mean_neumaier(std::span<const double> values) {
  NeumaierSum sum;
  for (double v : values) sum.add(v);
  return sum.value() / static_cast<double>(values.size());
}

}  // namespace

CbcResult reduced_cbc_naive(const SpaceParams& params, const Weights& weights,
                            const ReductionSchedule& schedule, int s,
                            const KernelProfile& profile, const CbcObserver& observer) {
  check_cbc_inputs(params, weights, schedule, s, profile);
  if (!weights.is_product() && s > 20) {
    throw CapacityError("reduced_cbc_naive: general weights limited to s <= 20");
  }

  const std::uint64_t n_points = params.n_points;
  CbcResult result;
  GeneratingVector& vec = result.vector;
  vec.kind = GeneratingVector::Kind::integer;

  for (int d = 1; d <= s; ++d) {
    const std::vector<std::uint64_t> candidates = candidate_set(schedule, d, params);
    const std::uint64_t y = schedule.y[d - 1];
    const int w = schedule.w[d - 1];

    GeneratingVector trial = vec;
    trial.w.push_back(w);
    trial.components.push_back(0);
    trial.effective.push_back(0);

    std::vector<double> scores(candidates.size());
    std::vector<double> errors(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      trial.components.back() = candidates[i];
      trial.effective.back() = w >= params.m ? 0 : y * candidates[i] % n_points;
      const ErrorReport report = weights.is_product()
                                     ? wce_product(params, weights, trial, profile)
                                     : wce_general(params, weights, trial, profile);
      errors[i] = report.squared_error;
      // compare at the uncancelled scale 1 + e^2 = mean(eta)
      scores[i] = 1.0 + report.squared_error;
      result.counters.candidate_evals += 1;
    }

    const std::size_t pick = argmin_with_ties(scores);
    vec.w.push_back(w);
    vec.components.push_back(candidates[pick]);
    vec.effective.push_back(w >= params.m ? 0 : y * candidates[pick] % n_points);
    vec.trace.push_back(errors[pick]);

    if (observer) {
      CbcState state;
      state.d = d;
      state.t_values = scores;
      state.squared_error = errors[pick];
      state.counters = &result.counters;
      observer(state);
    }
  }

  result.error = weights.is_product() ? wce_product(params, weights, vec, profile, &schedule)
                                      : wce_general(params, weights, vec, profile, &schedule);
  return result;
}

CbcResult reduced_cbc_fast(const SpaceParams& params, const Weights& weights,
                           const ReductionSchedule& schedule, int s,
                           const KernelProfile& profile, const CbcObserver& observer) {
  check_cbc_inputs(params, weights, schedule, s, profile);
  if (!weights.is_product()) {
    throw ValidationError("reduced_cbc_fast: product weights required");
  }

  const std::uint64_t n_points = params.n_points;
  const int m = params.m;
  CbcResult result;
  CbcCounters& counters = result.counters;
  GeneratingVector& vec = result.vector;
  vec.kind = GeneratingVector::Kind::integer;

  std::vector<double> eta(n_points, 1.0);
  counters.multiply_adds += n_points;  // kernel table precomputation

  // operators keyed by level k = m - w_d; spectra shared across equal levels
  std::vector<std::unique_ptr<OmegaOperator>> operators(m + 1);
  const auto operator_for = [&](int k) -> const OmegaOperator& {
    if (!operators[k]) {
      operators[k] = std::make_unique<OmegaOperator>(profile, params.b, k);
      counters.multiply_adds += operators[k]->setup_flops();
    }
    return *operators[k];
  };

  const auto update_eta = [&](int d, std::uint64_t effective) {
    const double g = weights.gamma(d);
    std::uint64_t idx = 0;
    for (std::uint64_t n = 0; n < n_points; ++n) {
      eta[n] *= 1.0 + g * profile.values[idx];
      idx += effective;
      if (idx >= n_points) idx -= n_points;
    }
    counters.multiply_adds += 3 * n_points;
  };

  for (int d = 1; d <= s; ++d) {
    const int w = schedule.w[d - 1];
    std::vector<double> t_values;

    if (w >= m) {
      // collapsed search set {1}: effective component 0, kernel factor at node 0
      counters.candidate_evals += 1;
      vec.w.push_back(w);
      vec.components.push_back(1);
      vec.effective.push_back(0);
      update_eta(d, 0);
    } else {
      const int k = m - w;
      std::uint64_t parts = 1;
      for (int i = 0; i < w; ++i) parts *= params.b;

      const std::vector<double> folded = fold_vector(eta, parts);
      counters.multiply_adds += n_points - folded.size();

      const OmegaOperator& omega = operator_for(k);
      t_values = omega.apply_fast(folded);
      counters.multiply_adds += omega.flops_per_apply();
      counters.candidate_evals += t_values.size();

      const std::vector<std::uint64_t> candidates = candidate_set(schedule, d, params);
      const std::size_t pick = argmin_with_ties(t_values);
      const std::uint64_t z = candidates[pick];
      vec.w.push_back(w);
      vec.components.push_back(z);
      vec.effective.push_back(schedule.y[d - 1] * z % n_points);
      update_eta(d, vec.effective.back());
    }

    const double e2 = mean_neumaier(eta) - 1.0;
    counters.multiply_adds += n_points;
    vec.trace.push_back(e2);

    if (observer) {
      CbcState state;
      state.d = d;
      state.eta = eta;
      state.t_values = t_values;
      state.squared_error = e2;
      state.counters = &counters;
      observer(state);
    }
  }

  ErrorReport report;
  report.squared_error = vec.trace.back();
  report.log10_error = 0.5 * std::log10(std::max(vec.trace.back(), 0.0));
  report.method = ErrorReport::Method::product_fast;
  report.bound_lambda1 = theorem_bound(params, weights, schedule, s, 1.0);
  result.error = report;
  return result;
}

CostModel cost_model(const ReductionSchedule& schedule, int s, int m, std::uint64_t b) {
  if (s < 1 || schedule.dimension() < s) throw ValidationError("cost_model: bad dimension");
  std::uint64_t n_points = 1;
  for (int i = 0; i < m; ++i) n_points *= b;

  int active = 0;
  for (int d = 0; d < s; ++d) {
    if (schedule.w[d] < m) ++active;
  }

  CostModel model;
  model.precompute = n_points;
  model.per_step = static_cast<std::uint64_t>(active) * n_points;
  for (int d = 0; d < active; ++d) {
    const int k = m - schedule.w[d];
    std::uint64_t bk = 1;
    for (int i = 0; i < k; ++i) bk *= b;
    model.transforms += static_cast<std::uint64_t>(k) * bk;
  }
  return model;
}

}  // namespace redcbc
