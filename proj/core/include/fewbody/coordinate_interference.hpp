#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string>

#include "fewbody/pdf_grid.hpp"
#include "fewbody/scenario.hpp"
#include "fewbody/units.hpp"

namespace fewbody {

// Offsets of the branch in which the particle reflects from the scatterer
// initially at x0: the particle trajectory starts at `particle` (x_10), the
// recoiled scatterer at `scatterer` (x_30).
struct SqiOffsets {
  double particle = 0.0;
  double scatterer = 0.0;
};

SqiOffsets phase_offsets_sqi(double m, double M, double x0);

// Collective counterpart (x0_31, x0_33), i.e. the one-scatterer offsets with
// M -> 2M. `particle_as_printed` keeps the 2 M x0 / (m + 2M) form found in
// the literature for comparison; it does not satisfy the classical meeting
// point condition.
struct CqiOffsets {
  double particle = 0.0;
  double scatterer = 0.0;
  double particle_as_printed = 0.0;
};

CqiOffsets phase_offsets_cqi(double m, double M, double x0);

// Plane-wave factor exp(i (K (x - offset) - omega t)) for one body, with
// omega = K v / 2, optionally multiplied by a Gaussian envelope of standard
// deviation coherence_length / 2 riding on the classical track offset + v t.
struct BodyWave {
  double wavevector = 0.0;
  double velocity = 0.0;
  double offset = 0.0;
  std::optional<double> coherence_length;

  double classical_position(double t) const { return offset + velocity * t; }
};

struct AmplitudeBranch {
  std::string id;
  std::array<BodyWave, 3> bodies;  // particle, scatterer 2, scatterer 3
  std::complex<double> coefficient{1.0, 0.0};
};

std::complex<double> evaluate(const AmplitudeBranch& branch, double x1, double x2, double x3,
                              double t);

// Incident product state psi_1 psi_2 psi_3 with the second scatterer at x0.
AmplitudeBranch sqi_incident_branch(const ScatteringScenario& scenario, const UnitSystem& units);
// Reflected states with the scatterer at the origin (coefficient -1, so the
// hard-sphere boundary condition holds) and at x0.
std::array<AmplitudeBranch, 2> sqi_scattered_branches(const ScatteringScenario& scenario,
                                                      const UnitSystem& units);
std::array<AmplitudeBranch, 2> cqi_scattered_branches(const ScatteringScenario& scenario,
                                                      const UnitSystem& units);

// Fringe periods of the correlated PDFs: in x3 - x2 for SQI, in x0 for the
// collective three- and four-body cases. Infinite when v == V.
double sqi_fringe_period(double m, double M, double v, double V, double hbar = 1.0);
double cqi_fringe_period(double m, double M, double v, double V, double hbar = 1.0);
double cqi4_fringe_period(double m, double M, double v, double V, double hbar = 1.0);

struct VisibilityReport {
  double factor = 1.0;
  double particle_path = 1.0;     // particle substates displaced by 2 x0
  double scatterer_recoil = 1.0;  // recoiled vs unrecoiled scatterers (SQI)
  double cm_recoil = 1.0;         // recoiled vs unrecoiled scatterer c.m. (CQI)
  std::string verdict;
};

// Gaussian-overlap visibility of the fringe term. Components whose
// coherence length is unset are taken as full overlap.
VisibilityReport overlap_visibility(const ScatteringScenario& scenario,
                                    const UnitSystem& units = natural_units());

// Correlated three-body PDF for one-scatterer reflection, peak value 1.
// With coherence lengths set the fringe term is scaled by the visibility:
// (1 - V)/2 + V cos^2(...).
double pdf_sqi_3body(const ScatteringScenario& scenario, double x1, double x2, double x3,
                     const UnitSystem& units = natural_units());

// Collective three-body PDF; depends on the separation x0 only.
double pdf_cqi_3body(const ScatteringScenario& scenario, double x0,
                     const UnitSystem& units = natural_units());

// Two particles (m, v) collectively reflecting from two scatterers (M, V).
double pdf_cqi_4body(double m, double M, double v, double V, double x0,
                     const UnitSystem& units = natural_units());

struct MarginalOptions {
  double x2_min = -1.0;
  double x2_max = 1.0;
  double x3_min = 0.0;
  double x3_max = 2.0;
  std::size_t samples = 401;  // per scatterer axis
};

// Integration window of `periods` SQI fringe periods around each scatterer.
MarginalOptions default_marginal_window(const ScatteringScenario& scenario, double periods = 10.0,
                                        const UnitSystem& units = natural_units());

struct MarginalResult {
  PdfGrid grid;               // unnormalized marginal over x1
  double periods_covered = 0.0;
  std::optional<std::string> warning;  // "marginal not converged" below one period
};

// Traces the scatterer coordinates out of the three-body PDF of `model`.
MarginalResult marginal_particle_pdf(Model model, const ScatteringScenario& scenario,
                                     std::span<const double> x1_grid,
                                     const MarginalOptions& options,
                                     const UnitSystem& units = natural_units());

}  // namespace fewbody
