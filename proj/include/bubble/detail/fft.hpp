/**
 * @file fft.hpp
 * @brief Thin FFTW wrapper with a process-wide plan cache.
 */
#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace bubble::detail {

class FftPlans {
 public:
  static FftPlans& instance() {
    static FftPlans plans;
    return plans;
  }

  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;

  /// Unnormalized DFT in place of `data`: sign -1 gives sum_j x_j e^{-2 pi i jk/m}.
  void execute(std::vector<std::complex<double>>& data, int sign) {
    const int m = static_cast<int>(data.size());
    if (m == 0) return;
    fftw_plan plan = get(m, sign);
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    // new-array execute is thread safe; planning is not, hence the lock in get().
    fftw_execute_dft(plan, p, p);
  }

 private:
  FftPlans() = default;
  ~FftPlans() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int m, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(m, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<std::complex<double>> scratch(m);
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(m, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

inline void fft_forward(std::vector<std::complex<double>>& data) {
  FftPlans::instance().execute(data, FFTW_FORWARD);
}

inline void fft_backward(std::vector<std::complex<double>>& data) {
  FftPlans::instance().execute(data, FFTW_BACKWARD);
}

}  // namespace bubble::detail
