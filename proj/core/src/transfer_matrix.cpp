#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "fewbody/oracle.hpp"
#include "fewbody/pdf_grid.hpp"
#include "fewbody/spectral_analysis.hpp"

namespace fewbody {

namespace {

using Complex = std::complex<double>;

// Maps (A, B) of A e^{ikx} + B e^{-ikx} across g delta(x - a).
Eigen::Matrix2cd delta_transfer(double k, double alpha, double a) {
  const Complex beta(0.0, -alpha / (2.0 * k));
  const Complex phase = std::polar(1.0, 2.0 * k * a);
  Eigen::Matrix2cd t;
  t << 1.0 + beta, beta / phase,
       -beta * phase, 1.0 - beta;
  return t;
}

ScatteringAmplitudes amplitudes(const Eigen::Matrix2cd& total) {
  return {-total(1, 0) / total(1, 1), 1.0 / total(1, 1)};
}

void require_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw std::invalid_argument("wavevector k must be positive");
}

}  // namespace

DoubleDeltaPotential DoubleDeltaPotential::from_masses(double m, double M, double g, double x0) {
  if (!(m > 0.0) || !(M > 0.0)) throw std::invalid_argument("masses must be positive");
  DoubleDeltaPotential p{g, x0, 2.0 * m * M / (m + 2.0 * M)};
  p.validate();
  return p;
}

void DoubleDeltaPotential::validate() const {
  if (!std::isfinite(g)) throw std::invalid_argument("delta strength g must be finite");
  if (!(x0 > 0.0) || !std::isfinite(x0)) throw std::invalid_argument("spacing x0 must be positive");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("reduced mass must be positive");
}

double DoubleDeltaPotential::single_reflectance(double k, double hbar) const {
  require_k(k);
  const double alpha = 2.0 * mu * g / (hbar * hbar);
  return alpha * alpha / (4.0 * k * k + alpha * alpha);
}

bool DoubleDeltaPotential::weak(double k, double hbar) const {
  return single_reflectance(k, hbar) <= kWeakReflectanceLimit;
}

ScatteringAmplitudes transfer_matrix_single_delta(double k, double g, double mu, double hbar) {
  require_k(k);
  return amplitudes(delta_transfer(k, 2.0 * mu * g / (hbar * hbar), 0.0));
}

ScatteringAmplitudes transfer_matrix_double_delta(double k, const DoubleDeltaPotential& potential,
                                                  double hbar) {
  require_k(k);
  potential.validate();
  const double alpha = 2.0 * potential.mu * potential.g / (hbar * hbar);
  const Eigen::Matrix2cd total = delta_transfer(k, alpha, 0.5 * potential.x0) *
                                 delta_transfer(k, alpha, -0.5 * potential.x0);
  return amplitudes(total);
}

ReflectionSpectrum reflection_spectrum(double k_min, double k_max, std::size_t samples,
                                       const DoubleDeltaPotential& potential, double hbar,
                                       int envelope_degree) {
  require_k(k_min);
  if (!(k_max > k_min)) throw std::invalid_argument("k_max must exceed k_min");
  if (samples < 16) throw std::invalid_argument("reflection spectrum needs at least 16 samples");
  potential.validate();

  ReflectionSpectrum out;
  out.k = linspace(k_min, k_max, samples);
  out.reflectance.reserve(samples);
  for (double k : out.k) out.reflectance.push_back(transfer_matrix_double_delta(k, potential, hbar).reflectance());
  out.expected_period_k = std::numbers::pi / potential.x0;

  // Single-delta reflectance falls with k, so the low end is the strongest.
  const double worst = potential.single_reflectance(k_min, hbar);
  out.weak = worst <= kWeakReflectanceLimit;
  if (!out.weak) {
    out.comparison_enabled = false;
    out.warning = fmt::format(
        "strong coupling: single-delta reflectance {:.3g} exceeds {:.3g}; closed-form comparison disabled",
        worst, kWeakReflectanceLimit);
  }
  // The fringe factor is |r|^2 over the single-delta reflectance; dividing
  // out the 1/k^2 fall-off keeps the envelope from biasing the period fit.
  if (potential.g != 0.0) {
    std::vector<double> fringe(samples);
    for (std::size_t i = 0; i < samples; ++i)
      fringe[i] = out.reflectance[i] / potential.single_reflectance(out.k[i], hbar);
    out.period_k = estimate_period(out.k, fringe, envelope_degree).period;
  }
  return out;
}

double period_in_x0(double period_k, double x0, double k_rel) {
  if (!(k_rel > 0.0)) throw std::invalid_argument("relative wavevector must be positive");
  return period_k * x0 / k_rel;
}

}  // namespace fewbody
