#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "redcbc/errors.hpp"
#include "redcbc/kernel.hpp"
#include "redcbc/numeric.hpp"
#include "redcbc/reduction.hpp"
#include "redcbc/space_params.hpp"
#include "redcbc/weights.hpp"
#include "redcbc/zeta.hpp"

using namespace redcbc;

namespace {
constexpr double kPi = std::numbers::pi;

// exact Sum_{n=0}^{N-1} n^p
__int128 power_sum(std::uint64_t n_points, int p) {
  __int128 s = 0;
  for (std::uint64_t n = 0; n < n_points; ++n) {
    __int128 t = 1;
    for (int i = 0; i < p; ++i) t *= n;
    s += t;
  }
  return s;
}
}  // namespace

TEST_CASE("riemann_zeta closed forms and oracle") {
  CHECK(riemann_zeta(2.0) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-13));
  CHECK(riemann_zeta(4.0) == doctest::Approx(std::pow(kPi, 4) / 90.0).epsilon(1e-13));

  // partial sum to 1e7 terms plus integral tail
  const double oracle = oracles::zeta_partial_sum(1.5, 10'000'000);
  CHECK(std::abs(riemann_zeta(1.5) - oracle) <= 2e-12);
  CHECK(riemann_zeta(1.5) == doctest::Approx(2.612375348685488).epsilon(1e-12));

  CHECK_THROWS_AS(riemann_zeta(1.0), DomainError);
  CHECK_THROWS_AS(riemann_zeta(0.5), DomainError);
}

TEST_CASE("space params") {
  const SpaceParams p = SpaceParams::make(2, 10, 2.0);
  CHECK(p.n_points == 1024);
  CHECK_THROWS_AS(SpaceParams::make(4, 3, 2.0), ValidationError);  // composite base
  CHECK_THROWS_AS(SpaceParams::make(2, 0, 2.0), ValidationError);
  CHECK_THROWS_AS(SpaceParams::make(2, 3, 1.0), ValidationError);
  CHECK_THROWS_AS(SpaceParams::make(2, 60, 2.0), CapacityError);
}

TEST_CASE("reduction schedule from the log rule") {
  const SpaceParams p = SpaceParams::make(2, 10, 2.0);
  const ReductionSchedule sched =
      make_reduction_schedule(ReductionSpec::log_rule(Rational(3, 2)), 4, p);
  CHECK(sched.w == std::vector<int>{0, 1, 2, 3});
  CHECK(sched.y == std::vector<std::uint64_t>{1, 2, 4, 8});

  // direct loop oracle: smallest j with floor(1.5 log2 j) >= 10
  int expected = -1;
  for (int j = 1; j <= 4096; ++j) {
    if (static_cast<int>(std::floor(1.5 * std::log2(static_cast<double>(j)))) >= 10) {
      expected = j;
      break;
    }
  }
  CHECK(expected == 102);
  const ReductionSchedule big =
      make_reduction_schedule(ReductionSpec::log_rule(Rational(3, 2)), 200, p);
  CHECK(big.s_star == 102);
  for (int j = 1; j < big.s_star; ++j) CHECK(big.w[j - 1] < p.m);
  for (int j = big.s_star; j <= 200; ++j) CHECK(big.w[j - 1] >= p.m);
}

TEST_CASE("reduction schedule explicit lists") {
  const SpaceParams p = SpaceParams::make(2, 10, 2.0);
  const ReductionSchedule sched =
      make_reduction_schedule(ReductionSpec::explicit_list({0, 0, 0}), 3, p);
  CHECK(sched.s_star == 4);  // none reaches m
  CHECK_THROWS_AS(
      make_reduction_schedule(ReductionSpec::explicit_list({2, 1, 0}), 3, p),
      ValidationError);
  CHECK_THROWS_AS(
      make_reduction_schedule(ReductionSpec::explicit_list({0, -1, 0}), 3, p),
      ValidationError);
}

TEST_CASE("reduction rule parsing") {
  const ReductionSpec a = ReductionSpec::parse("floor(1.5*log2(j))", 2);
  CHECK(a.c.num == 3);
  CHECK(a.c.den == 2);
  const ReductionSpec b = ReductionSpec::parse("floor(3/2*logb(j))", 3);
  CHECK(b.c.num == 3);
  CHECK_THROWS_AS(ReductionSpec::parse("floor(1.5*log2(j))", 3), ValidationError);
  CHECK_THROWS_AS(ReductionSpec::parse("banana", 2), ValidationError);
  const ReductionSpec zero = ReductionSpec::parse("w=0", 2);
  CHECK(zero.c.is_zero());
}

TEST_CASE("floor_scaled_log matches long-double evaluation away from boundaries") {
  for (std::uint64_t b : {2ull, 3ull, 5ull}) {
    for (std::uint64_t j = 1; j <= 2000; ++j) {
      const int exact = floor_scaled_log(b, j, Rational(3, 2));
      const long double t =
          1.5L * std::log2(static_cast<long double>(j)) / std::log2(static_cast<long double>(b));
      const int lo = static_cast<int>(std::floor(t - 1e-9L));
      const int hi = static_cast<int>(std::floor(t + 1e-9L));
      CHECK(exact >= lo);
      CHECK(exact <= hi);
    }
  }
  // exact boundary: j = 4^r gives 1.5 log2(j) = 3r exactly
  CHECK(floor_scaled_log(2, 16, Rational(3, 2)) == 6);
  CHECK(floor_scaled_log(2, 64, Rational(3, 2)) == 9);
}

TEST_CASE("candidate sets") {
  const SpaceParams p23 = SpaceParams::make(2, 3, 2.0);
  const ReductionSchedule sched =
      make_reduction_schedule(ReductionSpec::explicit_list({0, 1, 3}), 3, p23);
  CHECK(candidate_set(sched, 2, p23) == std::vector<std::uint64_t>{1, 3});
  CHECK(candidate_count(sched, 2, p23) == 2);
  CHECK(candidate_set(sched, 3, p23) == std::vector<std::uint64_t>{1});

  const SpaceParams p32 = SpaceParams::make(3, 2, 2.0);
  const ReductionSchedule sched3 =
      make_reduction_schedule(ReductionSpec::explicit_list({0}), 1, p32);
  CHECK(candidate_set(sched3, 1, p32) == std::vector<std::uint64_t>{1, 2, 4, 5, 7, 8});

  // cardinality formula across schedules
  for (std::uint64_t b : {2ull, 3ull, 5ull}) {
    for (int m = 1; m <= 5; ++m) {
      const SpaceParams p = SpaceParams::make(b, m, 2.0);
      for (int w = 0; w <= m + 2; ++w) {
        const ReductionSchedule s =
            make_reduction_schedule(ReductionSpec::explicit_list({w}), 1, p);
        const auto set = candidate_set(s, 1, p);
        std::uint64_t expected = 1;
        if (w < m) {
          expected = b - 1;
          for (int i = 0; i < m - w - 1; ++i) expected *= b;
        }
        CHECK(set.size() == expected);
        CHECK(candidate_count(s, 1, p) == expected);
      }
    }
  }
}

TEST_CASE("korobov kernel point values") {
  const SpaceParams p = SpaceParams::make(2, 2, 2.0);
  const KernelProfile profile = phi_korobov_table(p);
  CHECK(profile.values[0] == doctest::Approx(kPi * kPi / 3.0).epsilon(1e-14));
  CHECK(profile.values[2] == doctest::Approx(-kPi * kPi / 6.0).epsilon(1e-14));  // x = 1/2

  // alpha = 2, N = 4: mean equals the dual sum 2 sum_k (kN)^(-2) = 2 zeta(2)/N^2
  double dual = 0.0;
  for (int k = 4000; k >= 1; --k) dual += 2.0 * std::pow(4.0 * k, -2.0);
  dual += 2.0 * std::pow(4.0, -2.0) / 4000.0;  // integral tail at 1/(k N)^2
  NeumaierSum mean;
  for (double v : profile.values) mean.add(v);
  CHECK(mean.value() / 4.0 == doctest::Approx(dual).epsilon(1e-6));
  CHECK(mean.value() / 4.0 == doctest::Approx(kPi * kPi / 48.0).epsilon(1e-13));

  const SpaceParams bad = SpaceParams::make(2, 2, 2.5);
  CHECK_THROWS_AS(phi_korobov_table(bad), UnsupportedSmoothnessError);
  const SpaceParams odd = SpaceParams::make(2, 2, 3.0);
  CHECK_THROWS_AS(phi_korobov_table(odd), UnsupportedSmoothnessError);
}

TEST_CASE("korobov kernel values match the closed Bernoulli form") {
  for (std::uint64_t b : {2ull, 3ull}) {
    for (int alpha : {2, 4, 6}) {
      const SpaceParams p = SpaceParams::make(b, 3, static_cast<double>(alpha));
      const KernelProfile profile = phi_korobov_table(p);
      const double scale = kernel_scale(alpha);
      for (std::uint64_t n = 0; n < p.n_points; ++n) {
        const double x = static_cast<double>(n) / static_cast<double>(p.n_points);
        CHECK(profile.values[n] ==
              doctest::Approx(scale * bernoulli_poly(alpha, x)).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("kernel mean identity") {
  // (a) the identity constant: 2 zeta(alpha) = scale * B_alpha, checked to
  //     1e-12 relative
  for (int alpha : {2, 4, 6}) {
    const double lhs = 2.0 * riemann_zeta(static_cast<double>(alpha));
    const double rhs = kernel_scale(alpha) * bernoulli_numbers(alpha)[alpha];
    CHECK(std::abs(lhs - rhs) <= 1e-12 * lhs);
  }

  // (b) exact-rational grid sum at small N: sum_n B_alpha(n/N) = N^(1-alpha) B_alpha
  struct Frac {
    __int128 num;
    __int128 den;
  };
  const auto bern = [](int k) -> Frac {
    switch (k) {
      case 0: return {1, 1};
      case 1: return {-1, 2};
      case 2: return {1, 6};
      case 4: return {-1, 30};
      case 6: return {1, 42};
      default: return {0, 1};
    }
  };
  const auto binom = [](int n, int k) -> __int128 {
    __int128 r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
  };
  for (std::uint64_t b : {2ull, 3ull, 5ull}) {
    for (int alpha : {2, 4, 6}) {
      for (int m = 1; m <= 3; ++m) {
        std::uint64_t n_points = 1;
        for (int i = 0; i < m; ++i) n_points *= b;
        if (n_points > 256) continue;
        const __int128 d_alpha = 2 * 6 * 30 * 42;  // common coefficient denominator
        __int128 lhs = 0;  // sum_n B_alpha(n/N) * N^alpha * d_alpha
        for (int k = 0; k <= alpha; ++k) {
          const Frac bk = bern(k);
          if (bk.num == 0) continue;
          const __int128 coeff = binom(alpha, k) * bk.num * (d_alpha / bk.den);
          __int128 n_pow = 1;  // N^k
          for (int i = 0; i < k; ++i) n_pow *= n_points;
          lhs += coeff * n_pow * power_sum(n_points, alpha - k);
        }
        const Frac ba = bern(alpha);
        const __int128 rhs = static_cast<__int128>(n_points) * ba.num * (d_alpha / ba.den);
        CHECK(lhs == rhs);
      }
    }
  }

  // (c) stored doubles: Kahan mean vs 2 zeta(alpha)/N^alpha at the summation
  //     scale (1/N) sum |values|
  for (std::uint64_t b : {2ull, 3ull, 5ull}) {
    for (int alpha : {2, 4, 6}) {
      const int m_max = b == 2 ? 12 : (b == 3 ? 7 : 5);
      for (int m = 1; m <= m_max; m += 2) {
        const SpaceParams p = SpaceParams::make(b, m, static_cast<double>(alpha));
        const KernelProfile profile = phi_korobov_table(p);
        NeumaierSum sum;
        NeumaierSum abs_sum;
        for (double v : profile.values) {
          sum.add(v);
          abs_sum.add(std::abs(v));
        }
        const double n = static_cast<double>(p.n_points);
        const double target = 2.0 * riemann_zeta(p.alpha) / std::pow(n, p.alpha);
        CHECK(std::abs(sum.value() / n - target) <= 1e-12 * (abs_sum.value() / n));
      }
    }
  }
}

TEST_CASE("weight maps") {
  const Weights one = Weights::product({1.0});
  CHECK(map_weights_sobolev(one).gamma(1) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-15));

  const Weights two = Weights::product({1.0, 1.0});
  const Weights tent = map_weights_tent(two);
  CHECK(tent.gamma(1) == doctest::Approx(kPi * kPi).epsilon(1e-15));
  CHECK(tent.gamma(2) == doctest::Approx(kPi * kPi).epsilon(1e-15));

  const Weights general = Weights::general({{0b11u, 4.0}}, 2);
  const Weights mapped = map_weights_sobolev(general);
  CHECK(mapped.gamma_subset(0b11u) ==
        doctest::Approx(4.0 * std::pow(2.0 * kPi * kPi, 2)).epsilon(1e-15));

  // mapping commutes with product-to-subset expansion
  const Weights prod = Weights::product({0.5, 2.0, 1.25});
  const Weights lhs = map_weights_sobolev(prod).expanded();
  const Weights rhs = map_weights_sobolev(prod.expanded());
  for (std::uint32_t mask = 1; mask < 8; ++mask) {
    CHECK(lhs.gamma_subset(mask) == doctest::Approx(rhs.gamma_subset(mask)).epsilon(1e-13));
  }
}

TEST_CASE("weights validation and expansion") {
  CHECK_THROWS_AS(Weights::product({1.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(Weights::product({1.0, -2.0}), ValidationError);
  CHECK_THROWS_AS(Weights::general({{0u, 1.0}}, 2), ValidationError);
  CHECK_THROWS_AS(Weights::general({{1u, 1.0}}, 25), CapacityError);

  const Weights prod = Weights::product({1.0, 0.125, 2.0});
  const Weights expanded = prod.expanded();
  CHECK(expanded.gamma_subset(0b101u) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(expanded.gamma_subset(0b111u) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(prod.gamma_subset(0) == 1.0);
}

TEST_CASE("weight rules") {
  const WeightRule r1 = parse_weight_rule("j^-3");
  CHECK(r1.c == 1.0);
  CHECK(r1.a == 3.0);
  const WeightRule r2 = parse_weight_rule("0.1*j^-2");
  CHECK(r2.c == doctest::Approx(0.1));
  CHECK(r2.a == 2.0);
  const WeightRule r3 = parse_weight_rule("3/2*j^-1.5");
  CHECK(r3.c == 1.5);
  CHECK(r3.a == 1.5);
  const WeightRule r4 = parse_weight_rule("0.25");
  CHECK(r4.c == 0.25);
  CHECK(r4.a == 0.0);
  CHECK_THROWS_AS(parse_weight_rule("exp(j)"), ValidationError);
  CHECK_THROWS_AS(parse_weight_rule("-1*j^-2"), ValidationError);

  const Weights w = Weights::from_rule("j^-3", 4);
  CHECK(w.gamma(2) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(w.gamma(3) == doctest::Approx(1.0 / 27.0).epsilon(1e-15));
}

TEST_CASE("tent transform") {
  CHECK(tent_transform({0.0}) == std::vector<double>{0.0});
  CHECK(tent_transform({0.5}) == std::vector<double>{1.0});
  const std::vector<double> mapped = tent_transform({0.75, 0.25});
  CHECK(mapped[0] == doctest::Approx(0.5));
  CHECK(mapped[1] == doctest::Approx(0.5));
  CHECK_THROWS_AS(tent_transform({1.5}), ValidationError);
  CHECK_THROWS_AS(tent_transform({-0.1}), ValidationError);

  // endpoints land in range and a half-interval grid covers [0,1]
  for (int i = 0; i <= 64; ++i) {
    const double x = static_cast<double>(i) / 64.0;
    const double y = tent_transform({x})[0];
    CHECK(y >= 0.0);
    CHECK(y <= 1.0);
    const double from_half = tent_transform({x / 2.0})[0];
    CHECK(from_half == doctest::Approx(x).epsilon(1e-15));
  }
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("3").num == 3);
  CHECK(Rational::parse("1.5").num == 3);
  CHECK(Rational::parse("1.5").den == 2);
  CHECK(Rational::parse("3/2").num == 3);
  CHECK(Rational::parse("-2/4").num == -1);
  CHECK(Rational::parse("-2/4").den == 2);
  CHECK(Rational::parse("0.75").den == 4);
  CHECK_THROWS_AS(Rational::parse("x"), ValidationError);
  CHECK_THROWS_AS(Rational::parse("1/0"), ValidationError);
}
