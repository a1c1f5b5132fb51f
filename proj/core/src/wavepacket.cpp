#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "fewbody/coordinate_interference.hpp"
#include "fewbody/error.hpp"
#include "fewbody/fft.hpp"
#include "fewbody/oracle.hpp"
#include "fewbody/spectral_analysis.hpp"

namespace fewbody {

namespace {

using Complex = std::complex<double>;

// |phi(k)|^2 of the part of the state inside [x_lo, x_hi), FFT order.
std::vector<double> window_spectrum(const WavepacketState& state, double x_lo, double x_hi) {
  const Grid1D& grid = state.grid;
  std::vector<Complex> buffer(grid.points);
  for (std::size_t i = 0; i < grid.points; ++i) {
    const double x = grid.x(i);
    buffer[i] = (x >= x_lo && x < x_hi) ? state.psi[i] : Complex{};
  }
  Fft fft(grid.points);
  fft.forward(buffer);
  const double scale = grid.dx * grid.dx / (2.0 * std::numbers::pi);
  std::vector<double> density(grid.points);
  for (std::size_t i = 0; i < grid.points; ++i) density[i] = std::norm(buffer[i]) * scale;
  return density;
}

double present_k_max(const WavepacketState& state, double floor) {
  const std::vector<double> density = window_spectrum(state, -INFINITY, INFINITY);
  const double peak = *std::max_element(density.begin(), density.end());
  double k_max = 0.0;
  for (std::size_t i = 0; i < density.size(); ++i)
    if (density[i] > floor * peak) k_max = std::max(k_max, std::abs(state.grid.k(i)));
  return k_max;
}

}  // namespace

double Grid1D::x(std::size_t i) const {
  return (static_cast<double>(i) - static_cast<double>(points / 2)) * dx;
}

double Grid1D::k(std::size_t i) const {
  const auto n = static_cast<double>(points);
  const auto j = static_cast<double>(i);
  return 2.0 * std::numbers::pi * (i < points / 2 ? j : j - n) / length();
}

double Grid1D::k_max() const { return std::numbers::pi / dx; }

void Grid1D::validate() const {
  if (points < 16 || points % 2 != 0) throw std::invalid_argument("grid needs an even number of points >= 16");
  if (!(dx > 0.0) || !std::isfinite(dx)) throw std::invalid_argument("grid spacing must be positive");
}

double WavepacketState::norm() const {
  double sum = 0.0;
  for (const Complex& c : psi) sum += std::norm(c);
  return sum * grid.dx;
}

double WavepacketState::mean_position() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) sum += grid.x(i) * std::norm(psi[i]);
  return sum * grid.dx / norm();
}

double WavepacketState::position_width() const {
  const double mean = mean_position();
  double sum = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double d = grid.x(i) - mean;
    sum += d * d * std::norm(psi[i]);
  }
  return std::sqrt(sum * grid.dx / norm());
}

double WavepacketState::probability(double x_lo, double x_hi) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double x = grid.x(i);
    if (x >= x_lo && x < x_hi) sum += std::norm(psi[i]);
  }
  return sum * grid.dx;
}

WavepacketState gaussian_wavepacket(const Grid1D& grid, double x_centre, double k0,
                                    double sigma_x) {
  grid.validate();
  if (!(sigma_x > 0.0)) throw std::invalid_argument("packet width must be positive");
  WavepacketState state{grid, std::vector<Complex>(grid.points), 0.0};
  const double amplitude = std::pow(2.0 * std::numbers::pi * sigma_x * sigma_x, -0.25);
  for (std::size_t i = 0; i < grid.points; ++i) {
    const double d = grid.x(i) - x_centre;
    state.psi[i] = amplitude * std::exp(-d * d / (4.0 * sigma_x * sigma_x)) *
                   std::polar(1.0, k0 * grid.x(i));
  }
  return state;
}

RegularizedPotential regularize(const DoubleDeltaPotential& potential, double width) {
  potential.validate();
  if (!(width > 0.0)) throw std::invalid_argument("regularization width must be positive");
  return {{-0.5 * potential.x0, 0.5 * potential.x0}, potential.g, width, potential.mu};
}

RegularizedPotential free_potential(double mass) { return {{}, 0.0, 0.0, mass}; }

double lattice_coupling(double g, double mass, double k_max, double hbar) {
  if (!(mass > 0.0) || !(k_max > 0.0)) throw std::invalid_argument("mass and k_max must be positive");
  return g / (1.0 + 2.0 * mass * g / (std::numbers::pi * hbar * hbar * k_max));
}

std::vector<double> potential_samples(const RegularizedPotential& potential, const Grid1D& grid,
                                      double hbar) {
  grid.validate();
  std::vector<double> samples(grid.points, 0.0);
  if (potential.centres.empty() || potential.g == 0.0) return samples;
  const double g = potential.renormalize
                       ? lattice_coupling(potential.g, potential.mass, grid.k_max(), hbar)
                       : potential.g;

  // V(x_j) = (1/L) sum_q V_q exp(i q x_j), with x_j = j dx - (n/2) dx.
  std::vector<Complex> buffer(grid.points);
  const double shift = static_cast<double>(grid.points / 2) * grid.dx;
  for (std::size_t i = 0; i < grid.points; ++i) {
    const double q = grid.k(i);
    Complex sum{};
    for (double c : potential.centres) sum += std::polar(1.0, -q * (c + shift));
    buffer[i] = g * std::exp(-0.5 * q * q * potential.width * potential.width) * sum /
                grid.length();
  }
  Fft fft(grid.points);
  fft.inverse(buffer);
  for (std::size_t i = 0; i < grid.points; ++i) samples[i] = buffer[i].real();
  return samples;
}

WavepacketState evolve_wavepacket(const RegularizedPotential& potential,
                                  const WavepacketState& initial, double dt, std::size_t steps,
                                  double hbar, const EvolutionLimits& limits) {
  const Grid1D& grid = initial.grid;
  grid.validate();
  if (initial.psi.size() != grid.points) throw std::invalid_argument("state size does not match grid");
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (!(potential.mass > 0.0)) throw std::invalid_argument("mass must be positive");

  const double k_present = present_k_max(initial, limits.spectral_floor);
  if (k_present * grid.dx > 2.0 * std::numbers::pi / limits.points_per_wavelength)
    throw ResolutionError(fmt::format(
        "grid spacing {:.4g} resolves the shortest wavelength (k = {:.4g}) by fewer than {:.3g} points",
        grid.dx, k_present, limits.points_per_wavelength));
  const bool has_potential = !potential.centres.empty() && potential.g != 0.0;
  if (has_potential && potential.width > limits.width_in_cells * grid.dx)
    throw ResolutionError(fmt::format("regularization width {:.4g} exceeds {:.3g} grid spacings",
                                      potential.width, limits.width_in_cells));

  const double nyquist_phase = hbar * grid.k_max() * grid.k_max() * dt / (2.0 * potential.mass);
  if (has_potential && nyquist_phase > limits.max_kinetic_phase_per_step)
    throw ResolutionError(fmt::format(
        "time step {:.4g} gives Nyquist kinetic phase {:.4g} per step (limit {:.4g}); quasi-energies alias",
        dt, nyquist_phase, limits.max_kinetic_phase_per_step));

  const std::vector<double> v = potential_samples(potential, grid, hbar);
  double v_max = 0.0;
  for (double value : v) v_max = std::max(v_max, std::abs(value));
  if (v_max * dt / hbar > limits.max_phase_per_step)
    throw ResolutionError(fmt::format("time step {:.4g} gives potential phase {:.4g} per step (limit {:.3g})",
                                      dt, v_max * dt / hbar, limits.max_phase_per_step));

  const std::size_t n = grid.points;
  std::vector<Complex> half_v(n), full_v(n), kinetic(n);
  for (std::size_t i = 0; i < n; ++i) {
    half_v[i] = std::polar(1.0, -0.5 * v[i] * dt / hbar);
    full_v[i] = half_v[i] * half_v[i];
    const double k = grid.k(i);
    kinetic[i] = std::polar(1.0, -hbar * k * k * dt / (2.0 * potential.mass)) / static_cast<double>(n);
  }

  WavepacketState state = initial;
  if (steps == 0) return state;
  Fft fft(n);
  for (std::size_t i = 0; i < n; ++i) state.psi[i] *= half_v[i];
  for (std::size_t s = 0; s < steps; ++s) {
    fft.forward(state.psi);
    for (std::size_t i = 0; i < n; ++i) state.psi[i] *= kinetic[i];
    fft.inverse(state.psi);
    const std::vector<Complex>& closing = (s + 1 == steps) ? half_v : full_v;
    for (std::size_t i = 0; i < n; ++i) state.psi[i] *= closing[i];
  }
  state.time = initial.time + dt * static_cast<double>(steps);
  return state;
}

MomentumSamples momentum_distribution(const WavepacketState& state, double x_lo, double x_hi) {
  const std::vector<double> density = window_spectrum(state, x_lo, x_hi);
  const std::size_t n = state.grid.points;
  MomentumSamples out;
  out.k.reserve(n);
  out.density.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t i = (j + n / 2) % n;
    out.k.push_back(state.grid.k(i));
    out.density.push_back(density[i]);
  }
  return out;
}

WavepacketSpectrum wavepacket_reflection_spectrum(const DoubleDeltaPotential& potential,
                                                  const WavepacketSettings& settings) {
  potential.validate();
  const Grid1D& grid = settings.grid;
  grid.validate();
  const double k0 = settings.k0;
  const double sigma_k = settings.sigma_k > 0.0 ? settings.sigma_k : k0 / 8.0;
  if (!(k0 > 4.0 * sigma_k)) throw std::invalid_argument("packet must satisfy k0 > 4 sigma_k");
  const double sigma_x = 1.0 / (2.0 * sigma_k);
  const double half_x0 = 0.5 * potential.x0;

  const double x_start = -half_x0 - 6.0 * sigma_x;
  const double boundary = -half_x0 - 6.0 * sigma_x;
  const double k_slow = k0 - 4.0 * sigma_k;
  const double k_fast = k0 + 4.0 * sigma_k;
  // The slowest component reflected by the far delta must get past the boundary.
  const double path = (half_x0 - x_start) + (half_x0 - boundary) + 6.0 * sigma_x;
  const double t_end = path * potential.mu / (settings.hbar * k_slow);
  const double fast_reach = k_fast * settings.hbar * t_end / potential.mu + std::abs(x_start) + 6.0 * sigma_x;
  if (fast_reach > 0.5 * grid.length())
    throw ResolutionError(fmt::format("domain length {:.4g} too short: fast components travel {:.4g}",
                                      grid.length(), fast_reach));

  double dt = settings.dt;
  if (dt <= 0.0) {
    const double limit = 0.8 * std::numbers::pi * 2.0 * potential.mu /
                         (settings.hbar * grid.k_max() * grid.k_max());
    dt = std::min(0.1, limit);
  }
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt));
  const WavepacketState initial = gaussian_wavepacket(grid, x_start, k0, sigma_x);
  const WavepacketState final_state =
      evolve_wavepacket(regularize(potential, settings.width), initial, dt, steps, settings.hbar);

  const std::vector<double> incident = window_spectrum(initial, -INFINITY, INFINITY);
  const std::vector<double> reflected = window_spectrum(final_state, -INFINITY, boundary);

  WavepacketSpectrum out;
  const std::size_t n = grid.points;
  const double lo = k0 - settings.band_sigmas * sigma_k;
  const double hi = k0 + settings.band_sigmas * sigma_k;
  for (std::size_t i = 1; i < n / 2; ++i) {
    const double k = grid.k(i);
    if (k < lo || k > hi) continue;
    out.k.push_back(k);
    out.reflectance.push_back(reflected[n - i] / incident[i]);
  }
  if (out.k.size() < 16)
    throw ResolutionError("too few k samples in the comparison band; enlarge the domain");
  out.reflected_fraction = final_state.probability(-INFINITY, boundary) / final_state.norm();
  out.period_k = estimate_period(out.k, out.reflectance, settings.envelope_degree).period;
  out.final_time = final_state.time;
  out.steps = steps;
  out.norm_drift = std::abs(final_state.norm() - initial.norm());
  return out;
}

OracleComparison compare_cqi_period(double m, double M, double v_rel, double x0, double g,
                                    bool run_wavepacket, double hbar) {
  const DoubleDeltaPotential potential = DoubleDeltaPotential::from_masses(m, M, g, x0);
  OracleComparison out;
  out.k_rel = potential.mu * std::abs(v_rel) / hbar;
  out.closed_form_period = cqi_fringe_period(m, M, v_rel, 0.0, hbar);

  const double sigma_k = out.k_rel / 8.0;
  const ReflectionSpectrum spectrum =
      reflection_spectrum(out.k_rel - 3.0 * sigma_k, out.k_rel + 3.0 * sigma_k, 801, potential, hbar);
  out.weak = spectrum.weak;
  out.band_periods = 6.0 * sigma_k * x0 / std::numbers::pi;
  if (out.band_periods < 2.0)
    out.warning = fmt::format("only {:.2g} fringe periods in the compared band; raise k_rel x0", out.band_periods);
  else if (spectrum.warning)
    out.warning = spectrum.warning;
  out.transfer_period = period_in_x0(spectrum.period_k, x0, out.k_rel);
  out.transfer_error = std::abs(out.transfer_period / out.closed_form_period - 1.0);

  if (run_wavepacket) {
    WavepacketSettings settings;
    settings.k0 = out.k_rel;
    settings.hbar = hbar;
    const WavepacketSpectrum packet = wavepacket_reflection_spectrum(potential, settings);
    out.wavepacket_period = period_in_x0(packet.period_k, x0, out.k_rel);
    out.wavepacket_error = std::abs(out.wavepacket_period / out.closed_form_period - 1.0);
  }
  return out;
}

}  // namespace fewbody
