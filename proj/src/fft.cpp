#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "sixbq/error.hpp"

namespace sixbq::detail {
namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<std::complex<double>> a(n), b(n);
    fftw_plan plan = fftw_plan_dft_1d(
        static_cast<int>(n), reinterpret_cast<fftw_complex*>(a.data()),
        reinterpret_cast<fftw_complex*>(b.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) fail(ErrorCode::kInternal, "FFTW planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(std::span<const std::complex<double>> in,
         std::span<std::complex<double>> out, int sign) {
  require(in.size() == out.size() && !in.empty(), ErrorCode::kInternal,
          "fft: size mismatch");
  fftw_plan plan = cache().get(in.size(), sign);
  if (in.data() == out.data()) {
    std::vector<std::complex<double>> tmp(in.begin(), in.end());
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(tmp.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return;
  }
  // FFTW does not write through the input pointer for out-of-place c2c plans.
  fftw_execute_dft(
      plan,
      reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
      reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

void fft_forward(std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out) {
  run(in, out, FFTW_FORWARD);
}

void fft_backward(std::span<const std::complex<double>> in,
                  std::span<std::complex<double>> out) {
  run(in, out, FFTW_BACKWARD);
}

}  // namespace sixbq::detail
