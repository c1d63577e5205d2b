#include "redcbc/walsh.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "redcbc/errors.hpp"
#include "redcbc/numeric.hpp"
#include "redcbc/polyf.hpp"
#include "redcbc/zeta.hpp"

namespace redcbc {

namespace {

std::uint64_t pow_u64(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::uint64_t reverse_digits(std::uint64_t code, std::uint64_t b, int m) {
  std::uint64_t out = 0;
  for (int i = 0; i < m; ++i) {
    out = out * b + code % b;
    code /= b;
  }
  return out;
}

}  // namespace

int walsh_log(std::uint64_t b, std::uint64_t h) {
  if (h < 1) throw ValidationError("walsh_log: h must be >= 1");
  int t = 0;
  while (h >= b) {
    h /= b;
    ++t;
  }
  return t;
}

double walsh_mu(std::uint64_t b, double alpha) {
  if (!(alpha > 1.0)) throw DomainError("walsh_mu: alpha must exceed 1");
  const double ba = std::pow(static_cast<double>(b), alpha);
  return ba * static_cast<double>(b - 1) / (ba - static_cast<double>(b));
}

void chrestenson_transform(std::vector<std::complex<double>>& data, std::uint64_t b) {
  const std::size_t n = data.size();
  if (b == 2) {
    for (std::size_t len = 1; len < n; len <<= 1) {
      for (std::size_t start = 0; start < n; start += len << 1) {
        for (std::size_t i = start; i < start + len; ++i) {
          const std::complex<double> u = data[i];
          const std::complex<double> v = data[i + len];
          data[i] = u + v;
          data[i + len] = u - v;
        }
      }
    }
    return;
  }
  std::vector<std::complex<double>> omega(b);
  for (std::uint64_t i = 0; i < b; ++i) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(b);
    omega[i] = {std::cos(angle), std::sin(angle)};
  }
  std::vector<std::complex<double>> scratch(b);
  for (std::size_t len = 1; len < n; len *= b) {
    for (std::size_t start = 0; start < n; start += len * b) {
      for (std::size_t i = start; i < start + len; ++i) {
        for (std::uint64_t row = 0; row < b; ++row) {
          std::complex<double> acc = 0.0;
          for (std::uint64_t col = 0; col < b; ++col) {
            acc += omega[row * col % b] * data[i + col * len];
          }
          scratch[row] = acc;
        }
        for (std::uint64_t row = 0; row < b; ++row) data[i + row * len] = scratch[row];
      }
    }
  }
}

WalshKernelProfile walsh_kernel_table(double alpha, std::uint64_t b, int m) {
  if (!is_prime(b)) throw ValidationError("walsh_kernel_table: base must be prime");
  if (m < 1 || m > 26) throw ValidationError("walsh_kernel_table: m out of range");
  if (!(alpha > 1.0)) throw DomainError("walsh_kernel_table: alpha must exceed 1");

  WalshKernelProfile profile;
  profile.alpha = alpha;
  profile.b = b;
  profile.m = m;
  profile.n_points = pow_u64(b, m);
  profile.mu = walsh_mu(b, alpha);

  // aggregated Walsh coefficients: indices congruent mod b^m share the node
  // values, and psi_b(q b^m + h') = m + psi_b(q) folds the far tail into a
  // closed geometric mass
  const double tail = std::pow(static_cast<double>(b), -alpha * m) * profile.mu;
  profile.r.resize(profile.n_points);
  profile.r[0] = tail;
  for (std::uint64_t h = 1; h < profile.n_points; ++h) {
    profile.r[h] = std::pow(static_cast<double>(b), -alpha * walsh_log(b, h)) + tail;
  }

  // values[n] = sum_h r[h] w^(<h, digits of nu-image of n>) = transform of the
  // digit-reversed coefficients
  std::vector<std::complex<double>> data(profile.n_points);
  for (std::uint64_t h = 0; h < profile.n_points; ++h) {
    data[reverse_digits(h, b, m)] = profile.r[h];
  }
  chrestenson_transform(data, b);

  profile.values.resize(profile.n_points);
  double max_imag = 0.0;
  for (std::uint64_t n = 0; n < profile.n_points; ++n) {
    max_imag = std::max(max_imag, std::abs(data[n].imag()));
    profile.values[n] = data[n].real();
  }
  if (max_imag > 1e-12 * (1.0 + profile.mu)) {
    throw DomainError("walsh_kernel_table: transform produced a non-real kernel");
  }
  return profile;
}

namespace {

void check_walsh_inputs(const SpaceParams& params, const Weights& gamma,
                        const GeneratingVector& vec, const WalshKernelProfile& profile) {
  if (profile.n_points != params.n_points || profile.b != params.b) {
    throw ValidationError("walsh error: profile does not match the parameters");
  }
  if (vec.dimension() < 1) throw ValidationError("walsh error: empty vector");
  if (vec.dimension() > gamma.dimension()) {
    throw ValidationError("walsh error: vector dimension exceeds weight dimension");
  }
}

ErrorReport finish_walsh_report(double e2, ErrorReport::Method method,
                                const SpaceParams& params, const Weights& gamma,
                                const GeneratingVector& vec,
                                const ReductionSchedule* schedule) {
  ErrorReport report;
  report.squared_error = e2;
  report.log10_error = 0.5 * std::log10(std::max(e2, 0.0));
  report.method = method;
  if (schedule != nullptr) {
    report.bound_lambda1 = theorem_bound_walsh(params, gamma, *schedule, vec.dimension(), 1.0);
  }
  return report;
}

}  // namespace

ErrorReport wce_walsh_product(const SpaceParams& params, const Weights& gamma,
                              const GeneratingVector& vec, const WalshKernelProfile& profile,
                              const ReductionSchedule* schedule) {
  check_walsh_inputs(params, gamma, vec, profile);
  if (!gamma.is_product()) throw ValidationError("wce_walsh_product: product weights required");

  const std::uint64_t n_points = params.n_points;
  std::vector<double> eta(n_points, 1.0);
  for (int j = 1; j <= vec.dimension(); ++j) {
    const double g = gamma.gamma(j);
    const std::vector<std::uint32_t> products =
        poly_mul_table(vec.effective[j - 1], params.b, params.m);
    for (std::uint64_t n = 0; n < n_points; ++n) {
      eta[n] *= 1.0 + g * profile.values[products[n]];
    }
  }
  NeumaierSum sum;
  for (double v : eta) sum.add(v);
  const double e2 = sum.value() / static_cast<double>(n_points) - 1.0;
  return finish_walsh_report(e2, ErrorReport::Method::product_fast, params, gamma, vec,
                             schedule);
}

ErrorReport wce_walsh_general(const SpaceParams& params, const Weights& gamma,
                              const GeneratingVector& vec, const WalshKernelProfile& profile,
                              const ReductionSchedule* schedule) {
  check_walsh_inputs(params, gamma, vec, profile);
  const int s = vec.dimension();
  if (s > 20) throw CapacityError("wce_walsh_general: subset enumeration limited to s <= 20");

  const std::uint64_t n_points = params.n_points;
  std::vector<std::vector<std::uint32_t>> products(s);
  for (int j = 0; j < s; ++j) {
    products[j] = poly_mul_table(vec.effective[j], params.b, params.m);
  }
  const std::uint32_t n_masks = 1u << s;
  std::vector<NeumaierSum> mask_sums(n_masks);
  std::vector<double> prods(n_masks);
  prods[0] = 1.0;
  for (std::uint64_t n = 0; n < n_points; ++n) {
    for (std::uint32_t mask = 1; mask < n_masks; ++mask) {
      const int j = std::countr_zero(mask);
      prods[mask] = prods[mask & (mask - 1)] * profile.values[products[j][n]];
      mask_sums[mask].add(prods[mask]);
    }
  }
  NeumaierSum e2;
  for (std::uint32_t mask = 1; mask < n_masks; ++mask) {
    const double g = gamma.gamma_subset(mask);
    if (g != 0.0) e2.add(g * mask_sums[mask].value() / static_cast<double>(n_points));
  }
  return finish_walsh_report(e2.value(), ErrorReport::Method::general_subset, params, gamma,
                             vec, schedule);
}

namespace {

template <typename TermFn>
double walsh_subset_sum(const Weights& gamma, const ReductionSchedule& schedule, int d,
                        double lambda, double mu_term, TermFn&& weight_of_w) {
  if (gamma.is_product()) {
    NeumaierSum total;
    double prefix = 1.0;
    for (int t = 1; t <= d; ++t) {
      const double gl = std::pow(gamma.gamma(t), lambda);
      total.add(weight_of_w(schedule.w[t - 1]) * mu_term * gl * prefix);
      prefix *= 1.0 + mu_term * gl;
    }
    return total.value();
  }
  if (d > 20) throw CapacityError("walsh bound: general weights limited to d <= 20");
  NeumaierSum total;
  for (std::uint32_t mask = 1; mask < (1u << d); ++mask) {
    const double g = gamma.gamma_subset(mask);
    if (g == 0.0) continue;
    int w_max = 0;
    for (int j = 0; j < d; ++j) {
      if (mask & (1u << j)) w_max = std::max(w_max, schedule.w[j]);
    }
    total.add(std::pow(g, lambda) * std::pow(mu_term, std::popcount(mask)) *
              weight_of_w(w_max));
  }
  return total.value();
}

}  // namespace

double theorem_bound_walsh(const SpaceParams& params, const Weights& gamma,
                           const ReductionSchedule& schedule, int d, double lambda) {
  if (d < 1 || d > schedule.dimension() || d > gamma.dimension()) {
    throw ValidationError("theorem_bound_walsh: dimension out of range");
  }
  if (!(lambda > 1.0 / params.alpha) || !(lambda <= 1.0)) {
    throw DomainError("theorem_bound_walsh: lambda must lie in (1/alpha, 1]");
  }
  const double arg = params.alpha * lambda;
  if (!(arg > 1.0)) return std::numeric_limits<double>::infinity();
  const double mu_term = walsh_mu(params.b, arg);

  const int m = params.m;
  const double b = static_cast<double>(params.b);
  const auto weight_of_w = [m, b](int w) {
    return std::pow(b, -static_cast<double>(std::max(0, m - w)));
  };
  const double sum = walsh_subset_sum(gamma, schedule, d, lambda, mu_term, weight_of_w);
  return std::pow(b / (b - 1.0) * sum, 1.0 / lambda);
}

double corollary_constant_walsh(const SpaceParams& params, const Weights& gamma,
                                const ReductionSchedule& schedule, double delta, int s) {
  const double alpha = params.alpha;
  if (!(delta > 0.0) || !(delta <= (alpha - 1.0) / 2.0)) {
    throw DomainError("corollary_constant_walsh: delta must lie in (0, (alpha-1)/2]");
  }
  if (s < 1 || s > schedule.dimension() || s > gamma.dimension()) {
    throw ValidationError("corollary_constant_walsh: dimension out of range");
  }
  const double lambda = 1.0 / (alpha - 2.0 * delta);
  const double mu_term = walsh_mu(params.b, alpha * lambda);
  const double b = static_cast<double>(params.b);
  const auto weight_of_w = [b](int w) { return std::pow(b, static_cast<double>(w)); };
  const double sum = walsh_subset_sum(gamma, schedule, s, lambda, mu_term, weight_of_w);
  return std::pow(b / (b - 1.0) * sum, alpha / 2.0 - delta);
}

CbcResult reduced_cbc_poly(const SpaceParams& params, const Weights& weights,
                           const ReductionSchedule& schedule, int s,
                           const WalshKernelProfile& profile, const CbcObserver& observer) {
  if (s < 1) throw ValidationError("reduced_cbc_poly: dimension must be >= 1");
  if (schedule.dimension() < s) throw ValidationError("reduced_cbc_poly: schedule shorter than s");
  if (weights.dimension() < s) throw ValidationError("reduced_cbc_poly: weights shorter than s");
  if (profile.n_points != params.n_points || profile.b != params.b) {
    throw ValidationError("reduced_cbc_poly: profile does not match the parameters");
  }
  if (!weights.is_product()) {
    throw ValidationError("reduced_cbc_poly: product weights required");
  }

  const std::uint64_t n_points = params.n_points;
  const int m = params.m;
  CbcResult result;
  CbcCounters& counters = result.counters;
  GeneratingVector& vec = result.vector;
  vec.kind = GeneratingVector::Kind::polynomial;

  std::vector<double> eta(n_points, 1.0);
  counters.multiply_adds += n_points;

  const auto update_eta = [&](int d, std::uint64_t effective) {
    const double g = weights.gamma(d);
    const std::vector<std::uint32_t> products = poly_mul_table(effective, params.b, m);
    for (std::uint64_t n = 0; n < n_points; ++n) {
      eta[n] *= 1.0 + g * profile.values[products[n]];
    }
    counters.multiply_adds += 3 * n_points;
  };

  for (int d = 1; d <= s; ++d) {
    const int w = schedule.w[d - 1];
    std::vector<double> t_values;

    if (w >= m) {
      counters.candidate_evals += 1;
      vec.w.push_back(w);
      vec.components.push_back(1);
      vec.effective.push_back(0);  // x^w mod x^m
      update_eta(d, 0);
    } else {
      // candidates: encoded h with deg(h) < m - w and h(0) != 0; the encoding
      // is ascending, which doubles as the tie order
      const std::vector<std::uint64_t> candidates = candidate_set(schedule, d, params);
      const std::uint64_t y_code = pow_u64(params.b, w);  // x^w encoded
      t_values.resize(candidates.size());
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        const std::uint64_t eff =
            poly_mul_mod_encoded(y_code, candidates[i], params.b, m);
        const std::vector<std::uint32_t> products = poly_mul_table(eff, params.b, m);
        NeumaierSum t;
        for (std::uint64_t n = 0; n < n_points; ++n) {
          t.add(profile.values[products[n]] * eta[n]);
        }
        t_values[i] = t.value();
        counters.candidate_evals += 1;
        counters.multiply_adds += 2 * n_points;
      }
      double min_score = t_values[0];
      double max_abs = std::abs(t_values[0]);
      for (double v : t_values) {
        min_score = std::min(min_score, v);
        max_abs = std::max(max_abs, std::abs(v));
      }
      std::size_t pick = 0;
      const double band = kTieRelativeBand * max_abs;
      for (std::size_t i = 0; i < t_values.size(); ++i) {
        if (t_values[i] <= min_score + band) {
          pick = i;
          break;
        }
      }
      vec.w.push_back(w);
      vec.components.push_back(candidates[pick]);
      vec.effective.push_back(poly_mul_mod_encoded(y_code, candidates[pick], params.b, m));
      update_eta(d, vec.effective.back());
    }

    NeumaierSum sum;
    for (double v : eta) sum.add(v);
    const double e2 = sum.value() / static_cast<double>(n_points) - 1.0;
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
  report.bound_lambda1 = theorem_bound_walsh(params, weights, schedule, s, 1.0);
  result.error = report;
  return result;
}

UnitGroupSummary check_unit_group_lemma(std::uint64_t b, int k) {
  if (!is_prime(b)) throw ValidationError("check_unit_group_lemma: base must be prime");
  if (k < 1 || k > 12) throw CapacityError("check_unit_group_lemma: exhaustive check needs k <= 12");

  const std::uint64_t modulus = pow_u64(b, k);
  std::vector<std::uint64_t> units;
  units.reserve((modulus / b) * (b - 1));
  for (std::uint64_t g = 1; g < modulus; ++g) {
    if (g % b != 0) units.push_back(g);  // g(0) != 0
  }

  UnitGroupSummary out;
  out.order = units.size();

  // invariant-factor count = max over primes p | |G| of the p-rank,
  // p^rank = #{g : g^p = 1}
  std::vector<std::uint64_t> primes;
  std::uint64_t rest = out.order;
  for (std::uint64_t p = 2; p * p <= rest; ++p) {
    if (rest % p == 0) {
      primes.push_back(p);
      while (rest % p == 0) rest /= p;
    }
  }
  if (rest > 1) primes.push_back(rest);

  int factor_count = 0;
  for (std::uint64_t p : primes) {
    std::uint64_t killed = 0;
    for (std::uint64_t g : units) {
      std::uint64_t acc = 1;  // encoded constant polynomial 1
      for (std::uint64_t i = 0; i < p; ++i) acc = poly_mul_mod_encoded(acc, g, b, k);
      if (acc == 1) ++killed;
    }
    int rank = 0;
    while (killed > 1) {
      killed /= p;
      ++rank;
    }
    factor_count = std::max(factor_count, rank);
  }
  out.factor_count = factor_count;
  return out;
}

}  // namespace redcbc
