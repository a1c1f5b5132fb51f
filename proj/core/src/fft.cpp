#include "fewbody/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace fewbody {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Fft::Impl {
  std::size_t n;
  fftw_complex* buffer;
  fftw_plan forward;
  fftw_plan inverse;

  explicit Impl(std::size_t size) : n(size) {
    std::lock_guard lock(planner_mutex());
    buffer = fftw_alloc_complex(n);
    if (buffer == nullptr) throw std::bad_alloc();
    const int len = static_cast<int>(n);
    forward = fftw_plan_dft_1d(len, buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE);
    inverse = fftw_plan_dft_1d(len, buffer, buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
  }

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(inverse);
    fftw_free(buffer);
  }

  void run(fftw_plan plan, std::span<std::complex<double>> data) {
    if (data.size() != n) throw std::invalid_argument("Fft: length mismatch");
    auto* raw = reinterpret_cast<std::complex<double>*>(buffer);
    std::copy(data.begin(), data.end(), raw);
    fftw_execute(plan);
    std::copy(raw, raw + n, data.begin());
  }
};

Fft::Fft(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Fft: length must be positive");
  impl_ = std::make_unique<Impl>(n);
}
Fft::~Fft() = default;
Fft::Fft(Fft&&) noexcept = default;
Fft& Fft::operator=(Fft&&) noexcept = default;

std::size_t Fft::size() const noexcept { return impl_->n; }
void Fft::forward(std::span<std::complex<double>> data) { impl_->run(impl_->forward, data); }
void Fft::inverse(std::span<std::complex<double>> data) { impl_->run(impl_->inverse, data); }

}  // namespace fewbody
