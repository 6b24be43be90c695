#pragma once

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <span>

namespace lpw::detail {

// FFTW's planner is not re-entrant; execution of distinct plans is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

class FftPlan {
 public:
  FftPlan(std::span<std::complex<double>> data, int dim, int extent, int sign) {
    int dims[2] = {extent, extent};
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    plan_ = fftw_plan_dft(dim, dims, buf, buf, sign, FFTW_ESTIMATE);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  ~FftPlan() {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan_);
  }

  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_ = nullptr;
};

/// Unnormalized in-place DFT over a dim-dimensional cube of side `extent`.
/// sign = FFTW_FORWARD computes sum_i x_i e^{-2 pi i i.k / N}.
inline void dft_inplace(std::span<std::complex<double>> data, int dim, int extent, int sign) {
  FftPlan plan(data, dim, extent, sign);
  plan.execute();
}

}  // namespace lpw::detail
