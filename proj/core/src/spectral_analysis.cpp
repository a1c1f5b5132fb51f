#include "fewbody/spectral_analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fewbody/fft.hpp"

namespace fewbody {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Resamples y(x) onto `n` uniform points spanning [x.front(), x.back()].
std::vector<double> resample_uniform(std::span<const double> x, std::span<const double> y,
                                     std::size_t n) {
  std::vector<double> out(n);
  const double x0 = x.front();
  const double step = (x.back() - x.front()) / static_cast<double>(n - 1);
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x0 + step * static_cast<double>(i);
    while (j + 2 < x.size() && x[j + 1] < xi) ++j;
    const double t = (xi - x[j]) / (x[j + 1] - x[j]);
    out[i] = y[j] + t * (y[j + 1] - y[j]);
  }
  return out;
}

Eigen::VectorXd polynomial_residual(const Eigen::VectorXd& u, const Eigen::VectorXd& y, int degree) {
  Eigen::MatrixXd basis(u.size(), degree + 1);
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    double p = 1.0;
    for (int j = 0; j <= degree; ++j, p *= u(i)) basis(i, j) = p;
  }
  const Eigen::VectorXd coef = basis.colPivHouseholderQr().solve(y);
  return y - basis * coef;
}

// Linear part of the model y = A(u) + B(u) cos(omega u + phi) for fixed
// (omega, phi); A and B are polynomials of the given degree. The shared
// phase keeps the envelope from absorbing a chirp.
Eigen::MatrixXd design(const Eigen::VectorXd& u, double omega, double phi, int degree) {
  const int blocks = degree + 1;
  Eigen::MatrixXd a(u.size(), 2 * blocks);
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double c = std::cos(omega * u(i) + phi);
    double p = 1.0;
    for (int j = 0; j < blocks; ++j, p *= u(i)) {
      a(i, 2 * j) = p;
      a(i, 2 * j + 1) = p * c;
    }
  }
  return a;
}

}  // namespace

PeriodEstimate estimate_period(std::span<const double> x, std::span<const double> y,
                               int envelope_degree) {
  if (x.size() != y.size()) throw std::invalid_argument("estimate_period: size mismatch");
  if (x.size() < 8) throw std::invalid_argument("estimate_period: need at least 8 samples");
  if (envelope_degree < 0 || envelope_degree > 4)
    throw std::invalid_argument("estimate_period: envelope degree must be in [0, 4]");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) throw std::invalid_argument("estimate_period: x must increase");

  const std::size_t n = x.size();
  const double centre = 0.5 * (x.front() + x.back());
  const double half = 0.5 * (x.back() - x.front());
  Eigen::VectorXd u(n), yy(n);
  for (std::size_t i = 0; i < n; ++i) {
    u(static_cast<Eigen::Index>(i)) = (x[i] - centre) / half;
    yy(static_cast<Eigen::Index>(i)) = y[i];
  }

  // Seed: Hann-windowed, zero-padded FFT of the detrended record.
  const std::vector<double> uniform = resample_uniform(x, y, n);
  Eigen::VectorXd uu = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(n), -1.0, 1.0);
  const Eigen::VectorXd detrended =
      polynomial_residual(uu, Eigen::Map<const Eigen::VectorXd>(uniform.data(), n), envelope_degree);
  const std::size_t padded = next_pow2(16 * n);
  std::vector<std::complex<double>> buf(padded);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(n - 1));
    buf[i] = w * detrended(static_cast<Eigen::Index>(i));
  }
  Fft fft(padded);
  fft.forward(buf);
  // Skip bins below ~1.5 cycles per record; the window leaks DC that far.
  const std::size_t first = std::max<std::size_t>(2, (3 * padded) / (2 * (n - 1)));
  std::size_t peak = first;
  for (std::size_t b = first; b < padded / 2; ++b)
    if (std::abs(buf[b]) > std::abs(buf[peak])) peak = b;
  double frac = 0.0;
  if (peak > first && peak + 1 < padded / 2) {
    const double a = std::abs(buf[peak - 1]);
    const double b = std::abs(buf[peak]);
    const double c = std::abs(buf[peak + 1]);
    const double denom = a - 2.0 * b + c;
    if (denom != 0.0) frac = 0.5 * (a - c) / denom;
  }
  const double dx = (x.back() - x.front()) / static_cast<double>(n - 1);
  const double cycles_per_x = (static_cast<double>(peak) + frac) / (static_cast<double>(padded) * dx);

  PeriodEstimate out;
  out.fft_period = 1.0 / cycles_per_x;

  // Initial phase from a constant-envelope fit at the seed frequency.
  double omega = kTwoPi * cycles_per_x * half;
  double phi = 0.0;
  {
    Eigen::MatrixXd a(static_cast<Eigen::Index>(n), 3);
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
      a(i, 0) = 1.0;
      a(i, 1) = std::cos(omega * u(i));
      a(i, 2) = std::sin(omega * u(i));
    }
    const Eigen::Vector3d c = a.colPivHouseholderQr().solve(yy);
    phi = std::atan2(-c(2), c(1));
  }

  // Levenberg-Marquardt on (omega, phi), amplitudes projected out.
  auto residual = [&](double w, double ph, Eigen::VectorXd* coef) {
    const Eigen::MatrixXd a = design(u, w, ph, envelope_degree);
    Eigen::VectorXd c = a.colPivHouseholderQr().solve(yy);
    Eigen::VectorXd r = yy - a * c;
    if (coef) *coef = std::move(c);
    return r;
  };
  Eigen::VectorXd coef;
  Eigen::VectorXd r = residual(omega, phi, &coef);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  int it = 0;
  for (; it < 100; ++it) {
    const double hw = 1e-6 * std::max(1.0, std::abs(omega));
    const double hp = 1e-6;
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(n), 2);
    jac.col(0) = (residual(omega + hw, phi, nullptr) - residual(omega - hw, phi, nullptr)) / (2.0 * hw);
    jac.col(1) = (residual(omega, phi + hp, nullptr) - residual(omega, phi - hp, nullptr)) / (2.0 * hp);
    const Eigen::Matrix2d h = jac.transpose() * jac;
    const Eigen::Vector2d g = jac.transpose() * r;
    bool accepted = false;
    Eigen::Vector2d step = Eigen::Vector2d::Zero();
    while (lambda < 1e12) {
      Eigen::Matrix2d damped = h;
      damped.diagonal() *= 1.0 + lambda;
      step = -damped.ldlt().solve(g);
      Eigen::VectorXd trial_coef;
      const Eigen::VectorXd trial = residual(omega + step(0), phi + step(1), &trial_coef);
      if (trial.squaredNorm() <= cost) {
        omega += step(0);
        phi += step(1);
        r = trial;
        coef = std::move(trial_coef);
        cost = r.squaredNorm();
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!accepted || std::abs(step(0)) <= 1e-13 * std::abs(omega)) break;
  }
  out.iterations = it;
  out.period = kTwoPi * half / std::abs(omega);
  out.offset = coef(0);
  out.amplitude = std::abs(coef(1));
  out.rms_residual = std::sqrt(cost / static_cast<double>(n));
  return out;
}

double fringe_visibility(std::span<const double> x, std::span<const double> y, double period) {
  if (x.size() != y.size() || x.size() < 3)
    throw std::invalid_argument("fringe_visibility: need >= 3 matching samples");
  if (!(period > 0.0)) throw std::invalid_argument("fringe_visibility: period must be positive");
  Eigen::MatrixXd a(static_cast<Eigen::Index>(x.size()), 3);
  Eigen::VectorXd b(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double phase = kTwoPi * x[i] / period;
    const auto row = static_cast<Eigen::Index>(i);
    a(row, 0) = 1.0;
    a(row, 1) = std::cos(phase);
    a(row, 2) = std::sin(phase);
    b(row) = y[i];
  }
  const Eigen::Vector3d coef = a.colPivHouseholderQr().solve(b);
  if (coef(0) == 0.0) return 0.0;
  return std::hypot(coef(1), coef(2)) / std::abs(coef(0));
}

double relative_ripple(std::span<const double> y) {
  if (y.empty()) throw std::invalid_argument("relative_ripple: empty input");
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  if (mean == 0.0) return 0.0;
  return (*hi - *lo) / std::abs(mean);
}

}  // namespace fewbody
