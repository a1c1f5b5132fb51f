#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace fewbody {

// Two delta potentials g delta(x - x0/2) + g delta(x + x0/2) in the relative
// coordinate of a particle against a rigid scatterer pair, reduced mass
// mu = 2 m M / (m + 2 M). The oracle works in its own units (hbar passed in).
struct DoubleDeltaPotential {
  double g = 0.0;
  double x0 = 0.0;
  double mu = 1.0;

  static DoubleDeltaPotential from_masses(double m, double M, double g, double x0);

  // |r|^2 of one of the two deltas at wavevector k.
  double single_reflectance(double k, double hbar = 1.0) const;
  // Weak regime: single-delta |r|^2 <= 0.05.
  bool weak(double k, double hbar = 1.0) const;
  void validate() const;
};

inline constexpr double kWeakReflectanceLimit = 0.05;

struct ScatteringAmplitudes {
  std::complex<double> r;
  std::complex<double> t;
  double reflectance() const { return std::norm(r); }
  double transmittance() const { return std::norm(t); }
};

// Exact stationary amplitudes for a wave exp(i k x) incident from the left.
ScatteringAmplitudes transfer_matrix_double_delta(double k, const DoubleDeltaPotential& potential,
                                                  double hbar = 1.0);
ScatteringAmplitudes transfer_matrix_single_delta(double k, double g, double mu,
                                                  double hbar = 1.0);

struct ReflectionSpectrum {
  std::vector<double> k;
  std::vector<double> reflectance;
  bool weak = true;
  bool comparison_enabled = true;
  std::optional<std::string> warning;
  double period_k = 0.0;           // fitted fringe period in k
  double expected_period_k = 0.0;  // pi / x0
};

// Samples |r(k)|^2 on [k_min, k_max] and fits the fringe period of
// |r|^2 / |r_single|^2. Strong coupling anywhere in the range sets a warning
// and disables comparison.
ReflectionSpectrum reflection_spectrum(double k_min, double k_max, std::size_t samples,
                                       const DoubleDeltaPotential& potential, double hbar = 1.0,
                                       int envelope_degree = 2);

// Converts a period in k into the fringe period in x0 at relative wavevector
// K_rel: the spectrum is a function of k x0 only, so P_x0 = P_k x0 / K_rel.
double period_in_x0(double period_k, double x0, double k_rel);

// Uniform periodic grid centred on 0: x_i = (i - n/2) dx.
struct Grid1D {
  std::size_t points = 16384;
  double dx = 0.25;

  double x(std::size_t i) const;
  // Angular wavenumber in FFT order.
  double k(std::size_t i) const;
  double length() const { return static_cast<double>(points) * dx; }
  double k_max() const;
  void validate() const;
};

struct WavepacketState {
  Grid1D grid;
  std::vector<std::complex<double>> psi;
  double time = 0.0;

  double norm() const;
  double mean_position() const;
  double position_width() const;
  // Probability inside [x_lo, x_hi).
  double probability(double x_lo, double x_hi) const;
};

WavepacketState gaussian_wavepacket(const Grid1D& grid, double x_centre, double k0,
                                    double sigma_x);

// Deltas regularized as band-limited Gaussians of the given width: in k
// space each centre contributes g exp(-q^2 w^2 / 2) exp(-i q c).
struct RegularizedPotential {
  std::vector<double> centres;
  double g = 0.0;
  double width = 0.0;
  double mass = 1.0;
  // Rescale g so the grid-truncated delta scatters like the continuum one.
  bool renormalize = true;
};

// Bare coupling for a delta whose intermediate states stop at |q| = k_max:
// 1 / g_bare = 1 / g + 2 mu / (pi hbar^2 k_max). Without it the reflectance
// comes out high by about 2 alpha / (pi k_max), alpha = 2 mu g / hbar^2.
double lattice_coupling(double g, double mass, double k_max, double hbar = 1.0);

RegularizedPotential regularize(const DoubleDeltaPotential& potential, double width);
RegularizedPotential free_potential(double mass);

// Sampled potential on the grid.
std::vector<double> potential_samples(const RegularizedPotential& potential, const Grid1D& grid,
                                      double hbar = 1.0);

struct EvolutionLimits {
  double points_per_wavelength = 8.0;  // resolution of the shortest wavelength present
  double width_in_cells = 4.0;         // regularization width <= 4 dx
  double max_phase_per_step = 0.5;     // max|V| dt / hbar
  // Nyquist kinetic energy times dt / hbar. Above pi the discrete-time
  // propagator aliases quasi-energies and the potential opens spurious
  // high-k channels. Only checked when a potential is present.
  double max_kinetic_phase_per_step = 0.9 * std::numbers::pi;
  double spectral_floor = 1e-14;       // relative |phi(k)|^2 defining "present"
};

// Strang split-step Fourier evolution. Throws ResolutionError before running
// when the grid, the regularization width or dt cannot resolve the problem.
WavepacketState evolve_wavepacket(const RegularizedPotential& potential,
                                  const WavepacketState& initial, double dt, std::size_t steps,
                                  double hbar = 1.0, const EvolutionLimits& limits = {});

struct MomentumSamples {
  std::vector<double> k;        // increasing
  std::vector<double> density;  // |phi(k)|^2, phi(k) = dx / sqrt(2 pi) sum psi exp(-i k x)
};

// Momentum distribution of the part of the state inside [x_lo, x_hi).
MomentumSamples momentum_distribution(const WavepacketState& state, double x_lo, double x_hi);

struct WavepacketSettings {
  double k0 = 1.0;
  double sigma_k = 0.0;  // 0 selects k0 / 8
  Grid1D grid;
  double dt = 0.0;  // 0 selects the largest step allowed by the kinetic-phase limit, capped at 0.1
  double width = 0.02;
  double band_sigmas = 3.0;  // reflectance is compared over k0 +- band_sigmas sigma_k
  int envelope_degree = 2;
  double hbar = 1.0;
};

struct WavepacketSpectrum {
  std::vector<double> k;
  std::vector<double> reflectance;  // |phi_refl(-k)|^2 / |phi_inc(k)|^2
  double reflected_fraction = 0.0;
  double period_k = 0.0;
  double final_time = 0.0;
  std::size_t steps = 0;
  double norm_drift = 0.0;
};

// Sends a Gaussian packet at the potential, waits until the slowest relevant
// component has cleared it and reads the reflected spectrum.
WavepacketSpectrum wavepacket_reflection_spectrum(const DoubleDeltaPotential& potential,
                                                  const WavepacketSettings& settings);

struct OracleComparison {
  double k_rel = 0.0;
  double closed_form_period = 0.0;   // pi / K_rel
  double transfer_period = 0.0;      // in x0
  double wavepacket_period = 0.0;    // in x0, 0 when not run
  double transfer_error = 0.0;       // relative
  double wavepacket_error = 0.0;     // relative
  bool weak = true;
  double band_periods = 0.0;         // fringe periods inside k_rel +- 3 k_rel / 8
  std::optional<std::string> warning;  // set below two periods: the fits are unreliable
};

// Chains the closed-form CQI fringe period against the transfer-matrix and
// (optionally) the wavepacket spectra for a particle of mass m at relative
// speed v - V on a scatterer pair of mass M each, spacing x0, strength g.
OracleComparison compare_cqi_period(double m, double M, double v_rel, double x0, double g,
                                    bool run_wavepacket, double hbar = 1.0);

}  // namespace fewbody
