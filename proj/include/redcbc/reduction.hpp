#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "redcbc/numeric.hpp"
#include "redcbc/space_params.hpp"

namespace redcbc {

/// Per-coordinate search-space reduction: nondecreasing exponents w_j, the
/// shrink factors Y_j = b^(w_j), and the first index s_star whose search set
/// collapses (w_j >= m; s+1 when none does).
struct ReductionSchedule {
  std::vector<int> w;           // w_1 <= w_2 <= ... <= w_s
  std::vector<std::uint64_t> y; // b^(w_j), clamped to b^m once w_j >= m
  int s_star = 0;

  int dimension() const { return static_cast<int>(w.size()); }
  /// Number of leading coordinates with w_j < m.
  int active_dimensions() const {
    const int d = dimension();
    return s_star - 1 < d ? s_star - 1 : d;
  }
};

/// Specification of a schedule: explicit exponent list or w_j = floor(c * log_b j).
struct ReductionSpec {
  enum class Kind { explicit_list, log_rule };
  Kind kind = Kind::log_rule;
  std::vector<int> list;  // explicit_list
  Rational c;             // log_rule

  static ReductionSpec explicit_list(std::vector<int> w);
  static ReductionSpec log_rule(Rational c);
  /// Accepts "floor(1.5*log2(j))", "floor(3/2*logb(j))", "0", "w=0".
  static ReductionSpec parse(const std::string& text, std::uint64_t base);
};

ReductionSchedule make_reduction_schedule(const ReductionSpec& spec, int s,
                                          const SpaceParams& params);

/// Search set for coordinate j (1-based): all z in [1, b^(m-w_j)) coprime to b
/// when w_j < m, the singleton {1} otherwise. Ascending.
std::vector<std::uint64_t> candidate_set(const ReductionSchedule& schedule, int j,
                                         const SpaceParams& params);

/// |candidate_set(j)| without materializing it.
std::uint64_t candidate_count(const ReductionSchedule& schedule, int j,
                              const SpaceParams& params);

}  // namespace redcbc
