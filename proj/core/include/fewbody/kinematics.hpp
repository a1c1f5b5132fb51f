#pragma once

#include <string>
#include <vector>

#include "fewbody/units.hpp"

namespace fewbody {

// One body (or a group of `multiplicity` identical bodies moving together)
// before and after a retro-reflection. `wavevector` is the group's
// post-collision wavevector multiplicity * mass * v_out / hbar; for the
// collective scatterer pair this is the 2 M V'/hbar convention used in the
// lab-frame collective amplitudes.
struct RecoilBody {
  std::string label;
  double mass = 0.0;
  double multiplicity = 1.0;
  double v_in = 0.0;
  double v_out = 0.0;
  double wavevector = 0.0;
};

struct RecoilSolution {
  std::string branch;
  std::vector<RecoilBody> particles;
  std::vector<RecoilBody> scatterers;

  double momentum_in() const;
  double momentum_out() const;
  double energy_in() const;   // sum of w m v^2 / 2
  double energy_out() const;
  // Relative residuals, scaled by the sum of |w m v| (resp. w m v^2 / 2)
  // over incident and outgoing states.
  double momentum_residual() const;
  double energy_residual() const;

  double particle_velocity() const { return particles.front().v_out; }
  double scatterer_velocity(std::size_t i = 0) const { return scatterers.at(i).v_out; }
};

// Particle of mass m (speed v) retro-reflecting from one scatterer M (speed V).
RecoilSolution solve_two_body_recoil(double m, double v, double M, double V,
                                     const UnitSystem& units = natural_units());

// Particle reflecting from n_s identical scatterers that recoil together.
RecoilSolution solve_collective_recoil(double m, double v, double M, double V, int n_s,
                                       const UnitSystem& units = natural_units());

// R_p N_p of N_p particles and R_s N_s of N_s scatterers take part.
struct EnsembleSpec {
  int N_p = 1;
  int N_s = 1;
  double R_p = 1.0;
  double R_s = 1.0;
  double m = 1.0;
  double M = 1.0;
  double V_p = 0.0;
  double V_s = 0.0;

  double participating_particles() const { return R_p * N_p; }
  double participating_scatterers() const { return R_s * N_s; }
  void validate() const;
};

// Retro-reflection root of the ensemble momentum and energy balance. The
// trivial root (no velocity change) is factored out; if it is the only
// root, throws PhysicsError("no scattering").
RecoilSolution solve_ensemble_conservation(const EnsembleSpec& spec,
                                           const UnitSystem& units = natural_units());

// Collective reflection from two scatterers of different mass and speed.
// Solved by damped Newton on momentum, energy, and invariance of the
// relative scatterer momentum in the scatterer c.m. frame.
RecoilSolution solve_unequal_scatterer_recoil(double m, double v, double M2, double V2,
                                              double M3, double V3,
                                              const UnitSystem& units = natural_units());

struct NewtonSettings {
  double tolerance = 1e-12;
  int max_iterations = 100;
};
RecoilSolution solve_unequal_scatterer_recoil(double m, double v, double M2, double V2,
                                              double M3, double V3, const NewtonSettings& settings,
                                              const UnitSystem& units = natural_units());

// Fractional change of the retro-reflected particle wavevector between the
// one-scatterer and the collective two-scatterer models.
struct WavevectorRatio {
  // 2 m M (V - v) / ((m + M)(m + 2M) v), normalized by the incident m v / hbar.
  double printed = 0.0;
  // (k_1r - K'_1r) / (m v / hbar) from the recoil solvers (signed wavevectors).
  double signed_cross_check = 0.0;
  // (|k_1r| - |K'_1r|) / (m v / hbar); equals `printed` whenever both
  // solutions retro-reflect.
  double magnitude_cross_check = 0.0;
};

WavevectorRatio wavevector_ratio_massive(double m, double M, double v, double V,
                                         const UnitSystem& units = natural_units());

// h nu / (M c^2).
double wavevector_ratio_photon(double nu, double M, const UnitSystem& units = si_units());

}  // namespace fewbody
