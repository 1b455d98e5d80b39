#pragma once

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <vector>

#include "hurst/error.hpp"

namespace hurst::detail {

// The FFTW planner is not re-entrant; execution of a private plan is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

/// In-place forward DFT, X[k] = sum_j x[j] exp(-2 pi i jk / m).
inline void forward_dft(std::vector<std::complex<double>>& data) {
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  const int m = static_cast<int>(data.size());
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(m, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  if (plan == nullptr) fail(ErrorKind::internal_consistency, "FFTW failed to create a plan");
  fftw_execute(plan);
  std::lock_guard lock(fftw_planner_mutex());
  fftw_destroy_plan(plan);
}

}  // namespace hurst::detail
