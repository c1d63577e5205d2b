#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace redcbc {

/// Complex-to-complex FFT plan of fixed shape (1D length n, or n0 x n1).
/// Planning is serialized internally; execution on caller-owned buffers is
/// concurrency-safe, so one plan can serve many threads.
class FftPlan {
 public:
  FftPlan(std::size_t n, bool inverse);
  FftPlan(std::size_t n0, std::size_t n1, bool inverse);
  ~FftPlan();

  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::size_t size() const { return size_; }

  /// Unnormalized out-of-place transform (inverse lacks the 1/n factor);
  /// in and out must not alias.
  void execute(const std::complex<double>* in, std::complex<double>* out) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::size_t size_ = 0;
};

}  // namespace redcbc
