#pragma once

#include <complex>
#include <optional>
#include <span>

#include "fewbody/pdf_grid.hpp"
#include "fewbody/scenario.hpp"
#include "fewbody/transition_report.hpp"
#include "fewbody/units.hpp"

namespace fewbody {

// phi(p) = g(p) exp(-i p x_offset / hbar) with
// g(p) = (dp sqrt(2 pi))^(-1/2) exp(-(p - p0)^2 / (4 dp^2)), so |phi|^2 is a
// normal density of standard deviation dp.
struct GaussianMomentumState {
  double p0 = 0.0;
  double dp = 1.0;
  double x_offset = 0.0;

  double envelope(double p) const;
  std::complex<double> amplitude(double p, double hbar = 1.0) const;
  // L_c = hbar / (2 dp).
  double coherence_length(double hbar = 1.0) const { return hbar / (2.0 * dp); }
  static GaussianMomentumState from_coherence_length(double p0, double L_c, double hbar = 1.0);
};

// One particle reflecting from two equal scatterers at 0 and x0, all in
// Gaussian momentum states. Scatterers are centred on M V with spread
// dp_scatterer. With dp_particle unset the particle envelope is flat.
struct MomentumScenario {
  double m = 1.0;
  double v = 1.0;
  double M = 1.0;
  double V = 0.0;
  double x0 = 1.0;
  double dp_scatterer = 1.0;
  std::optional<double> dp_particle;

  void validate() const;
  // Momentum handed to the reflecting scatterer: M (V_r - V).
  double sqi_recoil_shift(const UnitSystem& units = natural_units()) const;
  // Momentum handed to each scatterer in collective reflection.
  double cqi_recoil_shift(const UnitSystem& units = natural_units()) const;
};

// Full square of the two reflected amplitudes:
//   g3(p3)^2 g2(p2-q)^2 + g2(p2)^2 g3(p3-q)^2
//   + 2 g2(p2) g2(p2-q) g3(p3) g3(p3-q) cos[(2 p1 + p3r - p3) x0 / hbar]
// with p3r = p3 - q, times the particle envelope squared.
double pdf_sqi_momentum(double p1, double p2, double p3, const MomentumScenario& params,
                        const UnitSystem& units = natural_units());

// (g1 g2[p2r'] g3[p3r'])^2 (1 + cos(2 p1 x0 / hbar)).
double pdf_cqi_momentum(double p1, double p2, double p3, const MomentumScenario& params,
                        const UnitSystem& units = natural_units());

double pdf_momentum(Model model, double p1, double p2, double p3, const MomentumScenario& params,
                    const UnitSystem& units = natural_units());

struct SqiVisibility {
  double visibility = 1.0;           // g[p_3r] g[p_30] / max, at the actual recoil shift
  double recoil_shift = 0.0;         // 2 m M (v - V) / (m + M)
  double half_visibility_shift = 0.0;  // 2 sqrt(ln 2) dp: shift that halves the product
  double printed_threshold = 0.0;    // M dp sqrt(ln 4), compared against m v
  double incident_momentum = 0.0;    // m v
};

SqiVisibility sqi_visibility(double m, double v, double M, double dp_scatterer, double V = 0.0,
                             const UnitSystem& units = natural_units());

// 4 pi L_c / sqrt(ln 4).
double momentum_transition_wavelength(double L_c);

// Recoil-overlap transition for an incident wavelength lambda0. Shorter
// wavelengths carry larger recoil, so interference is lost below the
// threshold; margin = lambda0 / threshold (> 1 coherent).
TransitionReport momentum_transition(double L_c, double lambda0);

struct MomentumMarginalOptions {
  double window = 8.0;          // half-width of each Gaussian window in units of dp
  std::size_t per_window = 129; // quadrature points per window and axis
};

// p1 marginal obtained by integrating the three-body PDF over p2 and p3.
PdfGrid momentum_particle_marginal(Model model, const MomentumScenario& params,
                                   std::span<const double> p1_grid,
                                   const MomentumMarginalOptions& options = {},
                                   const UnitSystem& units = natural_units());

// Visibility of the p1 fringe in the marginal, measured over one fringe
// period with the particle envelope divided out.
double p1_fringe_visibility(Model model, const MomentumScenario& params,
                            const MomentumMarginalOptions& options = {},
                            const UnitSystem& units = natural_units());

}  // namespace fewbody
