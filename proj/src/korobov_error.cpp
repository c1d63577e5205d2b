#include "redcbc/korobov_error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "redcbc/errors.hpp"
#include "redcbc/numeric.hpp"
#include "redcbc/zeta.hpp"

namespace redcbc {

namespace {

void check_inputs(const SpaceParams& params, const Weights& gamma,
                  const GeneratingVector& vec, const KernelProfile& profile) {
  if (profile.kind != KernelProfile::Kind::korobov) {
    throw ValidationError("worst-case error: profile is not a Korobov table");
  }
  if (profile.size() != params.n_points) {
    throw ValidationError("worst-case error: profile size does not match N");
  }
  if (vec.dimension() < 1) throw ValidationError("worst-case error: empty vector");
  if (vec.dimension() > gamma.dimension()) {
    throw ValidationError("worst-case error: vector dimension exceeds weight dimension");
  }
  if (vec.kind != GeneratingVector::Kind::integer) {
    throw ValidationError("worst-case error: expected integer lattice components");
  }
}

ErrorReport finish_report(double e2, ErrorReport::Method method, const SpaceParams& params,
                          const Weights& gamma, const GeneratingVector& vec,
                          const ReductionSchedule* schedule) {
  ErrorReport report;
  report.squared_error = e2;
  report.log10_error = 0.5 * std::log10(std::max(e2, 0.0));
  report.method = method;
  if (schedule != nullptr) {
    report.bound_lambda1 = theorem_bound(params, gamma, *schedule, vec.dimension(), 1.0);
  }
  return report;
}

}  // namespace

ErrorReport wce_product(const SpaceParams& params, const Weights& gamma,
                        const GeneratingVector& vec, const KernelProfile& profile,
                        const ReductionSchedule* schedule) {
  check_inputs(params, gamma, vec, profile);
  if (!gamma.is_product()) throw ValidationError("wce_product: product weights required");

  const std::uint64_t n_points = params.n_points;
  std::vector<double> eta(n_points, 1.0);
  for (int j = 1; j <= vec.dimension(); ++j) {
    const double g = gamma.gamma(j);
    const std::uint64_t step = vec.effective[j - 1] % n_points;
    std::uint64_t idx = 0;
    for (std::uint64_t n = 0; n < n_points; ++n) {
      eta[n] *= 1.0 + g * profile.values[idx];
      idx += step;
      if (idx >= n_points) idx -= n_points;
    }
  }
  NeumaierSum sum;
  for (double v : eta) sum.add(v);
  const double e2 = sum.value() / static_cast<double>(n_points) - 1.0;
  return finish_report(e2, ErrorReport::Method::product_fast, params, gamma, vec, schedule);
}

ErrorReport wce_general(const SpaceParams& params, const Weights& gamma,
                        const GeneratingVector& vec, const KernelProfile& profile,
                        const ReductionSchedule* schedule) {
  check_inputs(params, gamma, vec, profile);
  const int s = vec.dimension();
  if (s > 20) throw CapacityError("wce_general: subset enumeration limited to s <= 20");

  const std::uint64_t n_points = params.n_points;
  const std::uint32_t n_masks = 1u << s;
  std::vector<NeumaierSum> mask_sums(n_masks);
  std::vector<double> prods(n_masks);
  std::vector<std::uint64_t> idx(s, 0);
  prods[0] = 1.0;
  for (std::uint64_t n = 0; n < n_points; ++n) {
    for (std::uint32_t mask = 1; mask < n_masks; ++mask) {
      const int j = std::countr_zero(mask);
      prods[mask] = prods[mask & (mask - 1)] * profile.values[idx[j]];
      mask_sums[mask].add(prods[mask]);
    }
    for (int j = 0; j < s; ++j) {
      idx[j] += vec.effective[j] % n_points;
      if (idx[j] >= n_points) idx[j] -= n_points;
    }
  }

  NeumaierSum e2;
  for (std::uint32_t mask = 1; mask < n_masks; ++mask) {
    const double g = gamma.gamma_subset(mask);
    if (g != 0.0) e2.add(g * mask_sums[mask].value() / static_cast<double>(n_points));
  }
  return finish_report(e2.value(), ErrorReport::Method::general_subset, params, gamma, vec,
                       schedule);
}

namespace {

// sum_{h != 0, |h| <= H, h = r (mod M)} |h|^(-alpha), for every r in [0, M)
std::vector<double> residue_power_sums(std::uint64_t modulus, std::uint64_t box, double alpha) {
  std::vector<NeumaierSum> acc(modulus);
  for (std::uint64_t h = 1; h <= box; ++h) {
    const double rho = std::pow(static_cast<double>(h), -alpha);
    acc[h % modulus].add(rho);
    acc[(modulus - h % modulus) % modulus].add(rho);  // h and -h
  }
  std::vector<double> out(modulus);
  for (std::uint64_t r = 0; r < modulus; ++r) out[r] = acc[r].value();
  return out;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  // extended euclid; a and m coprime
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const std::int64_t qq = r / new_r;
    t -= qq * new_t;
    std::swap(t, new_t);
    r -= qq * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

}  // namespace

DualSumResult wce_dual_oracle(const SpaceParams& params, const Weights& gamma,
                              const GeneratingVector& vec, std::uint64_t box_bound) {
  const int s = vec.dimension();
  if (s < 1 || s > 4) throw CapacityError("wce_dual_oracle: oracle supports 1 <= s <= 4");
  if (s > gamma.dimension()) throw ValidationError("wce_dual_oracle: weight dimension");
  const double alpha = params.alpha;
  const std::uint64_t n_points = params.n_points;
  const double box = static_cast<double>(box_bound);

  // enumeration over all but one coordinate of each subset
  double enumerated = 1.0;
  for (int i = 0; i < s - 1; ++i) enumerated *= 2.0 * box;
  if (enumerated > 5e8) {
    throw CapacityError("wce_dual_oracle: box too large for subset enumeration");
  }

  NeumaierSum value;
  for (std::uint32_t mask = 1; mask < (1u << s); ++mask) {
    const double g = gamma.gamma_subset(mask);
    if (g == 0.0) continue;
    std::vector<int> members;
    for (int j = 0; j < s; ++j) {
      if (mask & (1u << j)) members.push_back(j);
    }
    const int last = members.back();
    const std::uint64_t z_last = vec.effective[last] % n_points;
    const std::uint64_t gcd_last = std::gcd(z_last, n_points);  // gcd(0, N) = N
    const std::uint64_t res_mod = n_points / gcd_last;
    const std::vector<double> sums = residue_power_sums(res_mod, box_bound, alpha);
    const std::uint64_t z_red = (z_last / gcd_last) % res_mod;
    const std::uint64_t z_inv = res_mod == 1 ? 0 : mod_inverse(z_red, res_mod);

    // recursively enumerate h over the leading members, then close the
    // congruence sum_{j} h_j zbar_j = 0 (mod N) with a residue-class lookup
    NeumaierSum subset_sum;
    const int depth = static_cast<int>(members.size()) - 1;
    std::vector<std::int64_t> h(depth, 0);
    std::vector<double> rho(depth + 1, 1.0);
    std::vector<std::uint64_t> partial(depth + 1, 0);  // sum h_j zbar_j mod N

    const auto close = [&](double rho_prod, std::uint64_t partial_mod) {
      const std::uint64_t need = (n_points - partial_mod) % n_points;  // h_last z_last = need
      if (need % gcd_last != 0) return;
      const std::uint64_t cls = res_mod == 1 ? 0 : ((need / gcd_last) % res_mod * z_inv) % res_mod;
      subset_sum.add(rho_prod * sums[cls]);
    };

    if (depth == 0) {
      close(1.0, 0);
    } else {
      // odometer over h_i in [-H, H] \ {0} for the first `depth` members
      std::vector<std::int64_t> cur(depth, -static_cast<std::int64_t>(box_bound));
      int level = 0;
      while (level >= 0) {
        if (level == depth) {
          close(rho[depth], partial[depth]);
          --level;
          continue;
        }
        std::int64_t& hv = cur[level];
        if (hv > static_cast<std::int64_t>(box_bound)) {
          hv = -static_cast<std::int64_t>(box_bound);
          --level;
          continue;
        }
        if (hv == 0) {
          ++hv;
          continue;
        }
        const int j = members[level];
        const std::uint64_t zj = vec.effective[j] % n_points;
        const std::uint64_t habs = static_cast<std::uint64_t>(hv < 0 ? -hv : hv);
        std::uint64_t contrib = (habs % n_points) * zj % n_points;
        if (hv < 0) contrib = (n_points - contrib) % n_points;
        partial[level + 1] = (partial[level] + contrib) % n_points;
        rho[level + 1] = rho[level] * std::pow(static_cast<double>(habs), -alpha);
        ++hv;
        ++level;
      }
    }
    value.add(g * subset_sum.value());
  }

  // union bound on the neglected mass: some coordinate exceeds H
  const double tau = 2.0 * std::pow(box, 1.0 - alpha) / (alpha - 1.0);
  const double two_zeta = 2.0 * riemann_zeta(alpha);
  NeumaierSum tail;
  for (std::uint32_t mask = 1; mask < (1u << s); ++mask) {
    const double g = gamma.gamma_subset(mask);
    if (g == 0.0) continue;
    const int card = std::popcount(mask);
    tail.add(g * card * tau * std::pow(two_zeta, card - 1));
  }

  DualSumResult result;
  result.value = value.value();
  result.tail_bound = tail.value();
  return result;
}

namespace {

struct BoundContext {
  double lambda = 0.0;
  double two_zeta = 0.0;  // 2 zeta(alpha lambda)
};

BoundContext make_bound_context(const SpaceParams& params, double lambda) {
  if (!(lambda > 1.0 / params.alpha) || !(lambda <= 1.0)) {
    throw DomainError("theorem bound: lambda must lie in (1/alpha, 1]");
  }
  BoundContext ctx;
  ctx.lambda = lambda;
  const double arg = params.alpha * lambda;
  ctx.two_zeta = arg > 1.0 ? 2.0 * riemann_zeta(arg)
                           : std::numeric_limits<double>::infinity();
  return ctx;
}

// sum_{0 != u <= [d]} gamma_u^lambda (2 zeta)^|u| * weight(max_{j in u} w_j),
// grouped by the largest index in u (w nondecreasing makes that the argmax)
template <typename WeightFn>
double weighted_subset_sum(const Weights& gamma, const ReductionSchedule& schedule, int d,
                           double lambda, double two_zeta, WeightFn&& weight_of_w) {
  if (gamma.is_product()) {
    NeumaierSum total;
    double prefix = 1.0;  // prod_{j < t} (1 + 2 zeta gamma_j^lambda)
    for (int t = 1; t <= d; ++t) {
      const double gl = std::pow(gamma.gamma(t), lambda);
      total.add(weight_of_w(schedule.w[t - 1]) * two_zeta * gl * prefix);
      prefix *= 1.0 + two_zeta * gl;
    }
    return total.value();
  }
  if (d > 20) throw CapacityError("theorem bound: general weights limited to d <= 20");
  NeumaierSum total;
  for (std::uint32_t mask = 1; mask < (1u << d); ++mask) {
    const double g = gamma.gamma_subset(mask);
    if (g == 0.0) continue;
    int w_max = 0;
    for (int j = 0; j < d; ++j) {
      if (mask & (1u << j)) w_max = std::max(w_max, schedule.w[j]);
    }
    total.add(std::pow(g, lambda) * std::pow(two_zeta, std::popcount(mask)) *
              weight_of_w(w_max));
  }
  return total.value();
}

}  // namespace

double theorem_bound(const SpaceParams& params, const Weights& gamma,
                     const ReductionSchedule& schedule, int d, double lambda) {
  if (d < 1 || d > schedule.dimension() || d > gamma.dimension()) {
    throw ValidationError("theorem_bound: dimension out of range");
  }
  const BoundContext ctx = make_bound_context(params, lambda);
  if (std::isinf(ctx.two_zeta)) return std::numeric_limits<double>::infinity();

  const int m = params.m;
  const double b = static_cast<double>(params.b);
  const auto weight_of_w = [m, b](int w) {
    return std::pow(b, -static_cast<double>(std::max(0, m - w)));
  };
  const double sum = weighted_subset_sum(gamma, schedule, d, lambda, ctx.two_zeta, weight_of_w);
  return std::pow(2.0 * sum, 1.0 / lambda);
}

CorollaryConstants corollary_constants(const SpaceParams& params, const Weights& gamma,
                                       const ReductionSchedule& schedule, double delta,
                                       double q, int s) {
  const double alpha = params.alpha;
  if (!(delta > 0.0) || !(delta <= (alpha - 1.0) / 2.0)) {
    throw DomainError("corollary_constants: delta must lie in (0, (alpha-1)/2]");
  }
  if (q < 0.0) throw ValidationError("corollary_constants: q must be >= 0");
  if (s < 1 || s > schedule.dimension() || s > gamma.dimension()) {
    throw ValidationError("corollary_constants: dimension out of range");
  }

  const double lambda = 1.0 / (alpha - 2.0 * delta);
  const double two_zeta = 2.0 * riemann_zeta(alpha * lambda);
  const double exponent = alpha / 2.0 - delta;
  const double b = static_cast<double>(params.b);
  const auto weight_of_w = [b](int w) { return std::pow(b, static_cast<double>(w)); };

  CorollaryConstants out;
  if (gamma.is_product()) {
    // one pass produces the sums for every prefix dimension s' <= s
    NeumaierSum total;
    double prefix = 1.0;
    double best = 0.0;
    double product_bound = 1.0;
    for (int t = 1; t <= s; ++t) {
      const double gl = std::pow(gamma.gamma(t), lambda);
      const double bw = weight_of_w(schedule.w[t - 1]);
      total.add(bw * two_zeta * gl * prefix);
      prefix *= 1.0 + two_zeta * gl;
      product_bound *= 1.0 + gl * two_zeta * bw;
      best = std::max(best, total.value() / std::pow(static_cast<double>(t), q));
    }
    out.c_sadw = std::pow(2.0 * total.value(), exponent);
    out.c_delta_q = best;
    out.product_bound = std::pow(2.0 * product_bound, exponent);
    return out;
  }

  if (s > 20) throw CapacityError("corollary_constants: general weights limited to s <= 20");
  // terms grouped by the largest index of u give every prefix sum in one pass
  std::vector<double> by_max(s + 1, 0.0);
  for (std::uint32_t mask = 1; mask < (1u << s); ++mask) {
    const double g = gamma.gamma_subset(mask);
    if (g == 0.0) continue;
    int w_max = 0;
    int t_max = 0;
    for (int j = 0; j < s; ++j) {
      if (mask & (1u << j)) {
        w_max = std::max(w_max, schedule.w[j]);
        t_max = j + 1;
      }
    }
    by_max[t_max] += std::pow(g, lambda) * std::pow(two_zeta, std::popcount(mask)) *
                     weight_of_w(w_max);
  }
  double running = 0.0;
  double best = 0.0;
  for (int t = 1; t <= s; ++t) {
    running += by_max[t];
    best = std::max(best, running / std::pow(static_cast<double>(t), q));
  }
  out.c_sadw = std::pow(2.0 * running, exponent);
  out.c_delta_q = best;
  out.product_bound = 0.0;
  return out;
}

}  // namespace redcbc
