#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "vanatta/errors.hpp"

namespace vanatta::fft {

namespace {

enum class Kind { real, complex };

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(Kind kind, std::size_t n) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(kind, n);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    // Planning with FFTW_ESTIMATE leaves the scratch buffers untouched.
    const int len = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = nullptr;
    if (kind == Kind::real) {
      std::vector<double> in(n);
      std::vector<std::complex<double>> out(n / 2 + 1);
      plan = fftw_plan_dft_r2c_1d(len, in.data(), reinterpret_cast<fftw_complex*>(out.data()), flags);
    } else {
      std::vector<std::complex<double>> in(n), out(n);
      plan = fftw_plan_dft_1d(len, reinterpret_cast<fftw_complex*>(in.data()),
                              reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD, flags);
    }
    if (plan == nullptr) throw Error("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<Kind, std::size_t>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void forward_real(std::span<const double> in, std::span<std::complex<double>> out) {
  if (in.empty() || out.size() != in.size() / 2 + 1) throw DomainError("rfft size mismatch");
  fftw_plan plan = cache().get(Kind::real, in.size());
  // FFTW's r2c does not modify its input for out-of-place transforms.
  fftw_execute_dft_r2c(plan, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  if (in.empty() || out.size() != in.size()) throw DomainError("fft size mismatch");
  fftw_plan plan = cache().get(Kind::complex, in.size());
  auto* src = const_cast<fftw_complex*>(reinterpret_cast<const fftw_complex*>(in.data()));
  fftw_execute_dft(plan, src, reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace vanatta::fft
