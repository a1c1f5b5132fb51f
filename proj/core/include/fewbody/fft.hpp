#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace fewbody {

// In-place complex FFT of a fixed length, backed by FFTW. Forward uses
// exp(-i k x), inverse is unnormalized. Plans are created once per object;
// plan creation is serialized internally, execution is not shared.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(Fft&&) noexcept;
  Fft& operator=(Fft&&) noexcept;
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const noexcept;
  void forward(std::span<std::complex<double>> data);
  void inverse(std::span<std::complex<double>> data);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace fewbody
