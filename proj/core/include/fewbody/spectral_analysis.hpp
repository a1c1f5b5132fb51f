#pragma once

#include <span>

namespace fewbody {

struct PeriodEstimate {
  double period = 0.0;      // refined by nonlinear least squares
  double fft_period = 0.0;  // FFT peak with quadratic interpolation (the seed)
  double offset = 0.0;      // constant term at the record centre
  double amplitude = 0.0;   // oscillation amplitude at the record centre
  double rms_residual = 0.0;
  int iterations = 0;
};

// Period of the dominant oscillation in y(x). x must be increasing and
// (near-)uniformly spaced with at least ~2 periods in the record. The
// offset and the oscillation amplitude may vary as polynomials of degree
// `envelope_degree` across the record, which absorbs slow envelopes such as
// a 1/k^2 reflectance fall-off.
PeriodEstimate estimate_period(std::span<const double> x, std::span<const double> y,
                               int envelope_degree = 0);

// Least-squares fit y = a + b cos(2 pi x / P) + c sin(2 pi x / P) for a known
// period P; returns sqrt(b^2 + c^2) / |a|, i.e. (max - min) / (max + min).
double fringe_visibility(std::span<const double> x, std::span<const double> y, double period);

// (max - min) / mean over the samples.
double relative_ripple(std::span<const double> y);

}  // namespace fewbody
