#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "redcbc/fft.hpp"
#include "redcbc/kernel.hpp"

namespace redcbc {

/// Multiplicative structure of the units modulo b^k. Odd b: cyclic with a
/// primitive root; b = 2: trivial (k = 1), cyclic <3> (k = 2), or <-1> x <3>
/// (k >= 3). Never more than two cyclic factors.
struct UnitGroupStructure {
  std::uint64_t b = 0;
  int k = 0;
  std::uint64_t modulus = 0;             // b^k
  std::uint64_t order = 0;               // (b-1) b^(k-1)
  std::vector<std::uint64_t> generators;
  std::vector<std::uint64_t> gen_orders; // per-generator cyclic orders
  std::vector<std::uint64_t> units_by_exponent;  // row-major over gen_orders
};

UnitGroupStructure unit_group_structure(std::uint64_t b, int k);

/// Ascending units modulo b^k.
std::vector<std::uint64_t> unit_list(std::uint64_t b, int k);

/// eta'[i] = sum_r x[i + r * (|x| / parts)]; parts consecutive blocks summed
/// entrywise. parts = b^w in the reduced CBC step.
std::vector<double> fold_vector(std::span<const double> x, std::uint64_t parts);

/// Multiplication with the kernel value matrix
///   Omega^(k)[z, n] = phi_alpha({n z / b^k}),   z ascending units mod b^k,
/// columns n = 0..b^k-1. The fast path splits columns into classes n = b^t u
/// (u a unit); after reindexing units by generator exponents each class is a
/// cyclic (or 2D cyclic) correlation, done by FFT with a precomputed kernel
/// spectrum per class. Cost O(k b^k) against O(b^2k) for the naive product.
class OmegaOperator {
 public:
  /// profile.size() must be a multiple of b^k; kernel values at denominator
  /// b^j are read with stride profile.size() / b^j.
  OmegaOperator(const KernelProfile& profile, std::uint64_t b, int k);
  ~OmegaOperator();

  OmegaOperator(OmegaOperator&&) noexcept;
  OmegaOperator& operator=(OmegaOperator&&) noexcept;

  int level() const { return k_; }
  std::uint64_t column_count() const { return n_columns_; }
  std::uint64_t row_count() const { return n_rows_; }

  std::vector<double> apply_fast(std::span<const double> x) const;
  std::vector<double> apply_naive(std::span<const double> x) const;

  /// Single row of the naive product (oracle helper for large sizes).
  double naive_row(std::uint64_t z, std::span<const double> x) const;

  /// Charged multiply-add count of one fast apply (deterministic model:
  /// 5 L log2 L per FFT, linear terms for gather/pointwise/scatter).
  std::uint64_t flops_per_apply() const { return flops_per_apply_; }
  /// One-off charge for building the kernel spectra.
  std::uint64_t setup_flops() const { return setup_flops_; }

 private:
  struct Level;
  std::uint64_t b_ = 0;
  int k_ = 0;
  std::uint64_t n_columns_ = 0;
  std::uint64_t n_rows_ = 0;
  std::uint64_t flops_per_apply_ = 0;
  std::uint64_t setup_flops_ = 0;
  const KernelProfile* profile_ = nullptr;
  std::vector<std::unique_ptr<Level>> levels_;  // levels_[j] handles b^(j+1)
};

}  // namespace redcbc
