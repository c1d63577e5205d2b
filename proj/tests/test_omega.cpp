#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "redcbc/errors.hpp"
#include "redcbc/kernel.hpp"
#include "redcbc/omega.hpp"
#include "redcbc/zeta.hpp"

using namespace redcbc;

namespace {

KernelProfile profile_for(std::uint64_t b, int m, double alpha = 2.0) {
  return phi_korobov_table(SpaceParams::make(b, m, alpha));
}

double rel_sup_deviation(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  return num / std::max(den, 1e-300);
}

}  // namespace

TEST_CASE("unit group structure") {
  {
    // b = 3, k = 2: cyclic of order 6, generated by 2 (or its lift)
    const UnitGroupStructure s = unit_group_structure(3, 2);
    CHECK(s.order == 6);
    CHECK(s.generators.size() == 1);
    std::vector<std::uint64_t> sorted = s.units_by_exponent;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<std::uint64_t>{1, 2, 4, 5, 7, 8});
  }
  {
    // b = 2, k = 3: <-1> x <3> covers {1,3,5,7}
    const UnitGroupStructure s = unit_group_structure(2, 3);
    CHECK(s.order == 4);
    CHECK(s.generators == std::vector<std::uint64_t>{7, 3});
    std::vector<std::uint64_t> sorted = s.units_by_exponent;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<std::uint64_t>{1, 3, 5, 7});
  }
  {
    const UnitGroupStructure s = unit_group_structure(2, 1);
    CHECK(s.order == 1);
    CHECK(s.units_by_exponent == std::vector<std::uint64_t>{1});
  }
  CHECK_THROWS_AS(unit_group_structure(4, 2), ValidationError);

  // enumeration from the generators is a bijection onto the units, k <= 12
  for (std::uint64_t b : {2ull, 3ull, 5ull}) {
    const int k_max = b == 2 ? 12 : (b == 3 ? 7 : 5);
    for (int k = 1; k <= k_max; ++k) {
      const UnitGroupStructure s = unit_group_structure(b, k);
      std::vector<std::uint64_t> sorted = s.units_by_exponent;
      std::sort(sorted.begin(), sorted.end());
      CHECK(sorted == unit_list(b, k));
      CHECK(s.generators.size() <= 2);
      std::uint64_t expected = std::accumulate(
          s.gen_orders.begin(), s.gen_orders.end(), std::uint64_t{1},
          [](std::uint64_t acc, std::uint64_t o) { return acc * o; });
      CHECK(std::max<std::uint64_t>(expected, 1) == s.order);
    }
  }
}

TEST_CASE("fold vector") {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
  CHECK(fold_vector(x, 1) == x);  // w = 0 is the identity
  CHECK(fold_vector(x, 2) == std::vector<double>{4.0, 6.0});
  CHECK(fold_vector(x, 4) == std::vector<double>{10.0});
  CHECK_THROWS_AS(fold_vector(x, 3), ValidationError);

  // integer conservation is exact
  oracles::Rng rng(5);
  std::vector<double> ints(243);
  for (double& v : ints) v = static_cast<double>(rng.below(1'000'000));
  for (std::uint64_t parts : {1ull, 3ull, 9ull, 27ull, 243ull}) {
    const std::vector<double> folded = fold_vector(ints, parts);
    CHECK(std::accumulate(folded.begin(), folded.end(), 0.0) ==
          std::accumulate(ints.begin(), ints.end(), 0.0));
  }
}

TEST_CASE("omega columns and trivial shapes") {
  // k = 1, b = 2: single row (phi(0), phi(1/2))
  const KernelProfile profile = profile_for(2, 1);
  OmegaOperator omega(profile, 2, 1);
  CHECK(omega.row_count() == 1);
  const std::vector<double> y = omega.apply_naive(std::vector<double>{2.0, 5.0});
  CHECK(y[0] == doctest::Approx(profile.values[0] * 2.0 + profile.values[1] * 5.0));
  const std::vector<double> yf = omega.apply_fast(std::vector<double>{2.0, 5.0});
  CHECK(yf[0] == doctest::Approx(y[0]).epsilon(1e-14));

  // x = e_0 reads off the first column: phi(0) in every row
  const KernelProfile p8 = profile_for(2, 3);
  OmegaOperator o8(p8, 2, 3);
  std::vector<double> e0(8, 0.0);
  e0[0] = 1.0;
  for (double v : o8.apply_fast(e0)) CHECK(v == doctest::Approx(p8.values[0]).epsilon(1e-13));

  // all-ones input gives b^k * mean = 2 zeta(2) / b^k in every row
  const double expected = 2.0 * riemann_zeta(2.0) / 8.0;
  for (double v : o8.apply_fast(std::vector<double>(8, 1.0))) {
    CHECK(v == doctest::Approx(expected).epsilon(1e-11));
  }

  CHECK_THROWS_AS(o8.apply_fast(std::vector<double>(7, 1.0)), ValidationError);
}

TEST_CASE("fast multiply matches the naive product") {
  oracles::Rng rng(11);
  for (std::uint64_t b : {2ull, 3ull, 5ull}) {
    const int k_max = b == 2 ? 10 : (b == 3 ? 6 : 4);
    for (int k = 1; k <= k_max; ++k) {
      for (double alpha : {2.0, 4.0}) {
        const KernelProfile profile = profile_for(b, k, alpha);
        OmegaOperator omega(profile, b, k);
        for (int trial = 0; trial < 4; ++trial) {
          std::vector<double> x(omega.column_count());
          for (double& v : x) v = 2.0 * rng.uniform() - 1.0;
          const std::vector<double> fast = omega.apply_fast(x);
          const std::vector<double> naive = omega.apply_naive(x);
          CHECK(rel_sup_deviation(fast, naive) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("omega with strided profiles matches the block-folded reduced matrix") {
  // rows of the reduced matrix A at (m, w) are periodic: A x must equal
  // Omega^(m-w) applied to the folded vector, against a naive full-width product
  oracles::Rng rng(23);
  for (std::uint64_t b : {2ull, 3ull}) {
    for (int m = 2; m <= (b == 2 ? 8 : 5); ++m) {
      const KernelProfile profile = profile_for(b, m);
      const std::uint64_t n = profile.size();
      for (int w = 0; w < m; ++w) {
        std::uint64_t bw = 1;
        for (int i = 0; i < w; ++i) bw *= b;
        const std::uint64_t bk = n / bw;

        std::vector<double> x(n);
        for (double& v : x) v = 2.0 * rng.uniform() - 1.0;

        // naive rows over the full length-b^m vector
        std::vector<double> expected;
        for (std::uint64_t z = 1; z < bk; ++z) {
          if (z % b == 0) continue;
          double acc = 0.0;
          for (std::uint64_t nn = 0; nn < n; ++nn) {
            acc += profile.values[nn * (bw * z) % n] * x[nn];
          }
          expected.push_back(acc);
        }

        OmegaOperator omega(profile, b, m - w);
        const std::vector<double> got = omega.apply_fast(fold_vector(x, bw));
        CHECK(rel_sup_deviation(got, expected) <= 1e-11);
      }
    }
  }
}

TEST_CASE("charged operation count scales like k b^k") {
  // fit C over k = 6..14 for b = 2 and require the charge to stay within it
  std::vector<double> ratios;
  for (int k = 6; k <= 14; ++k) {
    const KernelProfile profile = profile_for(2, k);
    OmegaOperator omega(profile, 2, k);
    const double model = static_cast<double>(k) * static_cast<double>(omega.column_count());
    ratios.push_back(static_cast<double>(omega.flops_per_apply()) / model);
  }
  const double c_max = *std::max_element(ratios.begin(), ratios.end());
  const double c_min = *std::min_element(ratios.begin(), ratios.end());
  CHECK(c_max / c_min <= 4.0);  // a single constant covers the range
}
