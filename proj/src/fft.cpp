#include "redcbc/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace redcbc {

namespace {
// FFTW planning mutates global state; execution does not.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct FftPlan::Impl {
  fftw_plan plan = nullptr;
};

FftPlan::FftPlan(std::size_t n, bool inverse) : impl_(new Impl), size_(n) {
  // planned out-of-place; execute() keeps that shape
  std::vector<std::complex<double>> in(n), out(n);
  std::lock_guard<std::mutex> lock(planner_mutex());
  impl_->plan = fftw_plan_dft_1d(static_cast<int>(n),
                                 reinterpret_cast<fftw_complex*>(in.data()),
                                 reinterpret_cast<fftw_complex*>(out.data()),
                                 inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (impl_->plan == nullptr) throw std::runtime_error("fftw planning failed");
}

FftPlan::FftPlan(std::size_t n0, std::size_t n1, bool inverse)
    : impl_(new Impl), size_(n0 * n1) {
  std::vector<std::complex<double>> in(size_), out(size_);
  std::lock_guard<std::mutex> lock(planner_mutex());
  impl_->plan = fftw_plan_dft_2d(static_cast<int>(n0), static_cast<int>(n1),
                                 reinterpret_cast<fftw_complex*>(in.data()),
                                 reinterpret_cast<fftw_complex*>(out.data()),
                                 inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (impl_->plan == nullptr) throw std::runtime_error("fftw planning failed");
}

FftPlan::~FftPlan() {
  if (impl_ && impl_->plan != nullptr) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(impl_->plan);
  }
}

void FftPlan::execute(const std::complex<double>* in, std::complex<double>* out) const {
  fftw_execute_dft(impl_->plan,
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace redcbc
