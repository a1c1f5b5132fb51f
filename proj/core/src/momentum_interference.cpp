#include "fewbody/momentum_interference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "fewbody/error.hpp"
#include "fewbody/kinematics.hpp"
#include "fewbody/spectral_analysis.hpp"

namespace fewbody {

namespace {

constexpr double kPi = std::numbers::pi;

double gaussian_envelope(double p, double centre, double dp) {
  const double d = p - centre;
  return std::exp(-d * d / (4.0 * dp * dp)) / std::sqrt(dp * std::sqrt(2.0 * kPi));
}

double particle_density(double p1, double centre, const std::optional<double>& dp) {
  if (!dp) return 1.0;
  const double g = gaussian_envelope(p1, centre, *dp);
  return g * g;
}

// Uniform samples over [centre - half, centre + half] for each centre,
// merged when the windows overlap.
std::vector<double> window_grid(std::vector<double> centres, double half, std::size_t per_window) {
  std::sort(centres.begin(), centres.end());
  const double step = 2.0 * half / static_cast<double>(per_window - 1);
  std::vector<double> out;
  double lo = centres.front() - half;
  double hi = centres.front() + half;
  auto flush = [&](double a, double b) {
    const auto n = static_cast<std::size_t>(std::ceil((b - a) / step)) + 1;
    const std::vector<double> seg = linspace(a, b, std::max<std::size_t>(n, 2));
    for (double x : seg)
      if (out.empty() || x > out.back()) out.push_back(x);
  };
  for (std::size_t i = 1; i < centres.size(); ++i) {
    if (centres[i] - half <= hi) {
      hi = centres[i] + half;
    } else {
      flush(lo, hi);
      lo = centres[i] - half;
      hi = centres[i] + half;
    }
  }
  flush(lo, hi);
  return out;
}

double particle_centre(Model model, const MomentumScenario& s, const UnitSystem& units) {
  const RecoilSolution r = model == Model::sqi ? solve_two_body_recoil(s.m, s.v, s.M, s.V, units)
                                               : solve_collective_recoil(s.m, s.v, s.M, s.V, 2, units);
  return s.m * r.particle_velocity();
}

}  // namespace

double GaussianMomentumState::envelope(double p) const { return gaussian_envelope(p, p0, dp); }

std::complex<double> GaussianMomentumState::amplitude(double p, double hbar) const {
  return envelope(p) * std::polar(1.0, -p * x_offset / hbar);
}

GaussianMomentumState GaussianMomentumState::from_coherence_length(double p0, double L_c,
                                                                   double hbar) {
  if (!(L_c > 0.0)) throw std::invalid_argument("coherence length must be positive");
  return GaussianMomentumState{p0, hbar / (2.0 * L_c), 0.0};
}

void MomentumScenario::validate() const {
  if (!(m > 0.0) || !(M > 0.0)) throw std::invalid_argument("masses must be positive");
  if (!(x0 > 0.0)) throw std::invalid_argument("x0 must be positive");
  if (!(dp_scatterer > 0.0)) throw std::invalid_argument("scatterer momentum spread must be positive");
  if (dp_particle && !(*dp_particle > 0.0))
    throw std::invalid_argument("particle momentum spread must be positive when set");
}

double MomentumScenario::sqi_recoil_shift(const UnitSystem& units) const {
  return M * (solve_two_body_recoil(m, v, M, V, units).scatterer_velocity() - V);
}

double MomentumScenario::cqi_recoil_shift(const UnitSystem& units) const {
  return M * (solve_collective_recoil(m, v, M, V, 2, units).scatterer_velocity() - V);
}

double pdf_sqi_momentum(double p1, double p2, double p3, const MomentumScenario& s,
                        const UnitSystem& units) {
  s.validate();
  const RecoilSolution r = solve_two_body_recoil(s.m, s.v, s.M, s.V, units);
  const double q = s.M * (r.scatterer_velocity() - s.V);
  const double centre = s.M * s.V;
  const double dp = s.dp_scatterer;
  const double g2 = gaussian_envelope(p2, centre, dp);
  const double g2r = gaussian_envelope(p2 - q, centre, dp);
  const double g3 = gaussian_envelope(p3, centre, dp);
  const double g3r = gaussian_envelope(p3 - q, centre, dp);
  const double p3r = p3 - q;
  const double direct = g3 * g3 * g2r * g2r + g2 * g2 * g3r * g3r;
  const double cross = 2.0 * g3 * g3r * g2 * g2r * std::cos((2.0 * p1 + p3r - p3) * s.x0 / units.hbar);
  const double value = direct + cross;
  if (value < -1e-12 * direct)
    throw PhysicsError("internal consistency: negative SQI momentum density " + std::to_string(value));
  return std::max(value, 0.0) * particle_density(p1, s.m * r.particle_velocity(), s.dp_particle);
}

double pdf_cqi_momentum(double p1, double p2, double p3, const MomentumScenario& s,
                        const UnitSystem& units) {
  s.validate();
  const RecoilSolution r = solve_collective_recoil(s.m, s.v, s.M, s.V, 2, units);
  const double q = s.M * (r.scatterer_velocity() - s.V);
  const double centre = s.M * s.V;
  const double g2 = gaussian_envelope(p2 - q, centre, s.dp_scatterer);
  const double g3 = gaussian_envelope(p3 - q, centre, s.dp_scatterer);
  const double fringe = 1.0 + std::cos(2.0 * p1 * s.x0 / units.hbar);
  return g2 * g2 * g3 * g3 * fringe *
         particle_density(p1, s.m * r.particle_velocity(), s.dp_particle);
}

double pdf_momentum(Model model, double p1, double p2, double p3, const MomentumScenario& params,
                    const UnitSystem& units) {
  return model == Model::sqi ? pdf_sqi_momentum(p1, p2, p3, params, units)
                             : pdf_cqi_momentum(p1, p2, p3, params, units);
}

SqiVisibility sqi_visibility(double m, double v, double M, double dp_scatterer, double V,
                             const UnitSystem& units) {
  if (!(m > 0.0) || !(M > 0.0) || !(dp_scatterer > 0.0))
    throw std::invalid_argument("sqi_visibility needs positive masses and momentum spread");
  SqiVisibility out;
  out.recoil_shift = M * (solve_two_body_recoil(m, v, M, V, units).scatterer_velocity() - V);
  // g[p30 + q] g[p30] relative to g[p30]^2.
  out.visibility = std::exp(-out.recoil_shift * out.recoil_shift / (4.0 * dp_scatterer * dp_scatterer));
  out.half_visibility_shift = 2.0 * std::sqrt(std::log(2.0)) * dp_scatterer;
  out.printed_threshold = M * dp_scatterer * std::sqrt(std::log(4.0));
  out.incident_momentum = m * v;
  return out;
}

double momentum_transition_wavelength(double L_c) {
  if (!(L_c > 0.0)) throw std::invalid_argument("coherence length must be positive");
  return 4.0 * kPi * L_c / std::sqrt(std::log(4.0));
}

TransitionReport momentum_transition(double L_c, double lambda0) {
  if (!(lambda0 > 0.0)) throw std::invalid_argument("wavelength must be positive");
  const double threshold = momentum_transition_wavelength(L_c);
  return make_report("momentum-space recoil overlap", threshold, lambda0, lambda0 / threshold,
                     /*coherent_above=*/true);
}

PdfGrid momentum_particle_marginal(Model model, const MomentumScenario& s,
                                   std::span<const double> p1_grid,
                                   const MomentumMarginalOptions& options,
                                   const UnitSystem& units) {
  s.validate();
  if (options.per_window < 3) throw std::invalid_argument("need at least 3 points per window");
  const double centre = s.M * s.V;
  const double half = options.window * s.dp_scatterer;
  std::vector<double> centres;
  if (model == Model::sqi) {
    centres = {centre, centre + s.sqi_recoil_shift(units)};
  } else {
    centres = {centre + s.cqi_recoil_shift(units)};
  }
  const std::vector<double> grid = window_grid(centres, half, options.per_window);

  std::vector<double> values;
  values.reserve(p1_grid.size());
  std::vector<double> inner(grid.size());
  std::vector<double> outer(grid.size());
  for (double p1 : p1_grid) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (std::size_t j = 0; j < grid.size(); ++j)
        inner[j] = pdf_momentum(model, p1, grid[i], grid[j], s, units);
      outer[i] = trapezoid(grid, inner);
    }
    values.push_back(trapezoid(grid, outer));
  }
  return PdfGrid({Axis{"p1", std::vector<double>(p1_grid.begin(), p1_grid.end())}},
                 std::move(values));
}

double p1_fringe_visibility(Model model, const MomentumScenario& s,
                            const MomentumMarginalOptions& options, const UnitSystem& units) {
  s.validate();
  const double period = kPi * units.hbar / s.x0;
  const double c1 = particle_centre(model, s, units);
  constexpr std::size_t kSamples = 16;
  std::vector<double> p1(kSamples);
  for (std::size_t i = 0; i < kSamples; ++i)
    p1[i] = c1 + period * (static_cast<double>(i) / kSamples - 0.5);
  const PdfGrid marginal = momentum_particle_marginal(model, s, p1, options, units);
  std::vector<double> flattened(marginal.values());
  for (std::size_t i = 0; i < kSamples; ++i) {
    const double env = particle_density(p1[i], c1, s.dp_particle);
    flattened[i] = env > 0.0 ? flattened[i] / env : 0.0;
  }
  return fringe_visibility(p1, flattened, period);
}

}  // namespace fewbody
