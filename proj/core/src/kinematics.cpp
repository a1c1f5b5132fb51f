#include "fewbody/kinematics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fewbody/error.hpp"

namespace fewbody {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw std::invalid_argument(std::string(name) + " must be positive and finite");
}

RecoilBody make_body(std::string label, double mass, double multiplicity, double v_in,
                     double v_out, double hbar) {
  return RecoilBody{std::move(label), mass, multiplicity, v_in, v_out,
                    multiplicity * mass * v_out / hbar};
}

template <typename F>
double sum_over(const RecoilSolution& s, F&& f) {
  double total = 0.0;
  for (const auto& b : s.particles) total += f(b);
  for (const auto& b : s.scatterers) total += f(b);
  return total;
}

}  // namespace

double RecoilSolution::momentum_in() const {
  return sum_over(*this, [](const RecoilBody& b) { return b.multiplicity * b.mass * b.v_in; });
}
double RecoilSolution::momentum_out() const {
  return sum_over(*this, [](const RecoilBody& b) { return b.multiplicity * b.mass * b.v_out; });
}
double RecoilSolution::energy_in() const {
  return sum_over(*this, [](const RecoilBody& b) {
    return 0.5 * b.multiplicity * b.mass * b.v_in * b.v_in;
  });
}
double RecoilSolution::energy_out() const {
  return sum_over(*this, [](const RecoilBody& b) {
    return 0.5 * b.multiplicity * b.mass * b.v_out * b.v_out;
  });
}

double RecoilSolution::momentum_residual() const {
  const double scale = sum_over(*this, [](const RecoilBody& b) {
    return b.multiplicity * b.mass * (std::abs(b.v_in) + std::abs(b.v_out));
  });
  return scale == 0.0 ? 0.0 : std::abs(momentum_out() - momentum_in()) / scale;
}

double RecoilSolution::energy_residual() const {
  const double scale = energy_in() + energy_out();
  return scale == 0.0 ? 0.0 : std::abs(energy_out() - energy_in()) / scale;
}

RecoilSolution solve_two_body_recoil(double m, double v, double M, double V,
                                     const UnitSystem& units) {
  require_positive(m, "particle mass");
  require_positive(M, "scatterer mass");
  const double total = m + M;
  const double v_1r = (2.0 * M * V - M * v + m * v) / total;
  const double V_2r = (M * V - m * V + 2.0 * m * v) / total;
  RecoilSolution out;
  out.branch = "single-scatterer";
  out.particles.push_back(make_body("particle", m, 1.0, v, v_1r, units.hbar));
  out.scatterers.push_back(make_body("scatterer", M, 1.0, V, V_2r, units.hbar));
  return out;
}

RecoilSolution solve_collective_recoil(double m, double v, double M, double V, int n_s,
                                       const UnitSystem& units) {
  require_positive(m, "particle mass");
  require_positive(M, "scatterer mass");
  if (n_s < 1) throw std::invalid_argument("scatterer count must be at least 1");
  // Effective rigid body of mass n_s M.
  const double Ms = static_cast<double>(n_s) * M;
  const double total = m + Ms;
  const double v_1r = ((m - Ms) * v + 2.0 * Ms * V) / total;
  const double V_sr = (2.0 * m * v + (Ms - m) * V) / total;
  RecoilSolution out;
  out.branch = "collective";
  out.particles.push_back(make_body("particle", m, 1.0, v, v_1r, units.hbar));
  out.scatterers.push_back(
      make_body("scatterers", M, static_cast<double>(n_s), V, V_sr, units.hbar));
  return out;
}

void EnsembleSpec::validate() const {
  if (N_p < 1 || N_s < 1) throw std::invalid_argument("ensemble counts must be positive");
  if (!(R_p >= 0.0 && R_p <= 1.0) || !(R_s >= 0.0 && R_s <= 1.0))
    throw std::invalid_argument("participation fractions must lie in [0, 1]");
  require_positive(m, "particle mass");
  require_positive(M, "scatterer mass");
  if (participating_particles() < 1.0 || participating_scatterers() < 1.0)
    throw std::invalid_argument(
        "nontrivial collision needs R_p N_p >= 1 and R_s N_s >= 1");
}

RecoilSolution solve_ensemble_conservation(const EnsembleSpec& spec, const UnitSystem& units) {
  spec.validate();
  const double wp = spec.participating_particles();
  const double ws = spec.participating_scatterers();
  const double mp = wp * spec.m;
  const double ms = ws * spec.M;
  // Momentum fixes dV_s = -(mp / ms) dV_p. Substituting into the energy
  // balance leaves dV_p * (2 mp (V_p - V_s) + mp (1 + mp / ms) dV_p) = 0;
  // the first factor is the no-scatter root and is discarded.
  if (spec.V_p == spec.V_s)
    throw PhysicsError("no scattering: particles and scatterers are co-moving");
  const double dVp = 2.0 * ms * (spec.V_s - spec.V_p) / (mp + ms);
  const double dVs = 2.0 * mp * (spec.V_p - spec.V_s) / (mp + ms);
  RecoilSolution out;
  out.branch = ws > 1.0 ? "collective" : "single-scatterer";
  out.particles.push_back(
      make_body("particles", spec.m, wp, spec.V_p, spec.V_p + dVp, units.hbar));
  out.scatterers.push_back(
      make_body("scatterers", spec.M, ws, spec.V_s, spec.V_s + dVs, units.hbar));
  return out;
}

RecoilSolution solve_unequal_scatterer_recoil(double m, double v, double M2, double V2,
                                              double M3, double V3, const UnitSystem& units) {
  return solve_unequal_scatterer_recoil(m, v, M2, V2, M3, V3, NewtonSettings{}, units);
}

RecoilSolution solve_unequal_scatterer_recoil(double m, double v, double M2, double V2,
                                              double M3, double V3, const NewtonSettings& settings,
                                              const UnitSystem& units) {
  require_positive(m, "particle mass");
  require_positive(M2, "scatterer 2 mass");
  require_positive(M3, "scatterer 3 mass");

  const double Ms = M2 + M3;
  const double Vc = (M2 * V2 + M3 * V3) / Ms;
  const double vscale = std::max({std::abs(v), std::abs(V2), std::abs(V3), std::abs(v - Vc)});
  if (vscale == 0.0 || std::abs(v - Vc) <= 1e-14 * vscale)
    throw PhysicsError("no scattering: particle co-moves with the scatterer centre of mass");

  const double total_mass = m + Ms;
  const double p_scale = total_mass * vscale;
  const double e_scale = total_mass * vscale * vscale;

  auto residual = [&](const Eigen::Vector3d& z) {
    Eigen::Vector3d f;
    f(0) = (m * (z(0) - v) + M2 * (z(1) - V2) + M3 * (z(2) - V3)) / p_scale;
    f(1) = (m * (z(0) * z(0) - v * v) + M2 * (z(1) * z(1) - V2 * V2) +
            M3 * (z(2) * z(2) - V3 * V3)) / e_scale;
    f(2) = ((z(1) - z(2)) - (V2 - V3)) / vscale;
    return f;
  };

  // Seed from the equal-mass closed form: two scatterers of mass Ms / 2, both
  // at the scatterer c.m. velocity. A seed built from arithmetic means can
  // land in the basin of the no-scatter root when M2 and M3 differ widely.
  const double Mbar = 0.5 * Ms;
  const double v_seed = ((m - 2.0 * Mbar) * v + 4.0 * Mbar * Vc) / (m + 2.0 * Mbar);
  const double dV_seed = m * (v - v_seed) / (2.0 * Mbar);
  Eigen::Vector3d z(v_seed, V2 + dV_seed, V3 + dV_seed);
  Eigen::Vector3d f = residual(z);

  int it = 0;
  while (f.lpNorm<Eigen::Infinity>() > settings.tolerance) {
    if (++it > settings.max_iterations)
      throw ConvergenceError("unequal-scatterer recoil: Newton did not converge, residual " +
                                 std::to_string(f.lpNorm<Eigen::Infinity>()),
                             f.lpNorm<Eigen::Infinity>());
    Eigen::Matrix3d jac;
    jac << m / p_scale, M2 / p_scale, M3 / p_scale,
        2.0 * m * z(0) / e_scale, 2.0 * M2 * z(1) / e_scale, 2.0 * M3 * z(2) / e_scale,
        0.0, 1.0 / vscale, -1.0 / vscale;
    const Eigen::Vector3d step = jac.fullPivLu().solve(-f);
    double lambda = 1.0;
    Eigen::Vector3d trial = z + step;
    Eigen::Vector3d f_trial = residual(trial);
    while (f_trial.norm() > f.norm() && lambda > 1e-6) {
      lambda *= 0.5;
      trial = z + lambda * step;
      f_trial = residual(trial);
    }
    z = trial;
    f = f_trial;
  }
  if (std::abs(z(0) - v) <= 1e-9 * vscale)
    throw ConvergenceError("unequal-scatterer recoil: Newton converged to the no-scatter root",
                           f.lpNorm<Eigen::Infinity>());

  RecoilSolution out;
  out.branch = "collective";
  out.particles.push_back(make_body("particle", m, 1.0, v, z(0), units.hbar));
  out.scatterers.push_back(make_body("scatterer-2", M2, 1.0, V2, z(1), units.hbar));
  out.scatterers.push_back(make_body("scatterer-3", M3, 1.0, V3, z(2), units.hbar));
  return out;
}

WavevectorRatio wavevector_ratio_massive(double m, double M, double v, double V,
                                         const UnitSystem& units) {
  require_positive(m, "particle mass");
  require_positive(M, "scatterer mass");
  if (v == 0.0) throw PhysicsError("undefined ratio: incident speed v = 0");
  WavevectorRatio out;
  out.printed = 2.0 * m * M * (V - v) / ((m + M) * (m + 2.0 * M) * v);
  const double k_sqi = solve_two_body_recoil(m, v, M, V, units).particles.front().wavevector;
  const double k_cqi = solve_collective_recoil(m, v, M, V, 2, units).particles.front().wavevector;
  const double k_in = m * v / units.hbar;
  out.signed_cross_check = (k_sqi - k_cqi) / k_in;
  out.magnitude_cross_check = (std::abs(k_sqi) - std::abs(k_cqi)) / std::abs(k_in);
  return out;
}

double wavevector_ratio_photon(double nu, double M, const UnitSystem& units) {
  if (!(nu >= 0.0)) throw std::invalid_argument("photon frequency must be non-negative");
  require_positive(M, "scatterer mass");
  return units.h * nu / (M * units.c * units.c);
}

}  // namespace fewbody
