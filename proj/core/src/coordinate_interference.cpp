#include "fewbody/coordinate_interference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fewbody/error.hpp"
#include "fewbody/kinematics.hpp"

namespace fewbody {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw std::invalid_argument(std::string(name) + " must be positive and finite");
}

double cos2(double arg) {
  const double c = std::cos(arg);
  return c * c;
}

// Fringe term scaled by the overlap visibility.
double mix(double visibility, double fringe) { return 0.5 * (1.0 - visibility) + visibility * fringe; }

double gaussian_overlap(double displacement_sq_over_width_sq) {
  return std::exp(-displacement_sq_over_width_sq);
}

struct Params {
  double m, v, M, V;
};

Params params_of(const ScatteringScenario& s) {
  s.require_equal_scatterers();
  return Params{s.particle().mass, s.particle().velocity, s.scatterers[0].mass,
                s.scatterers[0].velocity};
}

std::optional<double> scatterer_coherence(const ScatteringScenario& s) {
  if (s.scatterers[0].coherence_length) return s.scatterers[0].coherence_length;
  return s.scatterers[1].coherence_length;
}

}  // namespace

SqiOffsets phase_offsets_sqi(double m, double M, double x0) {
  require_positive(m, "particle mass");
  require_positive(M, "scatterer mass");
  require_positive(x0, "x0");
  return SqiOffsets{2.0 * M * x0 / (m + M), (M - m) * x0 / (m + M)};
}

CqiOffsets phase_offsets_cqi(double m, double M, double x0) {
  const SqiOffsets rigid = phase_offsets_sqi(m, 2.0 * M, x0);
  return CqiOffsets{rigid.particle, rigid.scatterer, 2.0 * M * x0 / (m + 2.0 * M)};
}

std::complex<double> evaluate(const AmplitudeBranch& branch, double x1, double x2, double x3,
                              double t) {
  const std::array<double, 3> x{x1, x2, x3};
  double phase = 0.0;
  double envelope = 1.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const BodyWave& b = branch.bodies[i];
    phase += b.wavevector * (x[i] - b.offset) - 0.5 * b.wavevector * b.velocity * t;
    if (b.coherence_length) {
      const double sigma = 0.5 * *b.coherence_length;
      const double dx = x[i] - b.classical_position(t);
      envelope *= std::exp(-dx * dx / (4.0 * sigma * sigma));
    }
  }
  return branch.coefficient * envelope * std::polar(1.0, phase);
}

AmplitudeBranch sqi_incident_branch(const ScatteringScenario& scenario, const UnitSystem& units) {
  const auto [m, v, M, V] = params_of(scenario);
  const auto& p = scenario.particle();
  const auto& s2 = scenario.scatterers[0];
  const auto& s3 = scenario.scatterers[1];
  AmplitudeBranch b;
  b.id = "incident";
  b.bodies = {BodyWave{m * v / units.hbar, v, 0.0, p.coherence_length},
              BodyWave{M * V / units.hbar, V, 0.0, s2.coherence_length},
              BodyWave{M * V / units.hbar, V, scenario.x0, s3.coherence_length}};
  return b;
}

std::array<AmplitudeBranch, 2> sqi_scattered_branches(const ScatteringScenario& scenario,
                                                      const UnitSystem& units) {
  const auto [m, v, M, V] = params_of(scenario);
  const RecoilSolution r = solve_two_body_recoil(m, v, M, V, units);
  const double v1r = r.particle_velocity();
  const double Vr = r.scatterer_velocity();
  const double k1r = r.particles.front().wavevector;
  const double Kr = r.scatterers.front().wavevector;
  const double K = M * V / units.hbar;
  const SqiOffsets off = phase_offsets_sqi(m, M, scenario.x0);
  const auto& lp = scenario.particle().coherence_length;
  const auto& l2 = scenario.scatterers[0].coherence_length;
  const auto& l3 = scenario.scatterers[1].coherence_length;

  AmplitudeBranch from2;
  from2.id = "reflect-from-scatterer-2";
  from2.coefficient = -1.0;
  from2.bodies = {BodyWave{k1r, v1r, 0.0, lp}, BodyWave{Kr, Vr, 0.0, l2},
                  BodyWave{K, V, scenario.x0, l3}};

  AmplitudeBranch from3;
  from3.id = "reflect-from-scatterer-3";
  from3.coefficient = -1.0;
  from3.bodies = {BodyWave{k1r, v1r, off.particle, lp}, BodyWave{K, V, 0.0, l2},
                  BodyWave{Kr, Vr, off.scatterer, l3}};
  return {from2, from3};
}

std::array<AmplitudeBranch, 2> cqi_scattered_branches(const ScatteringScenario& scenario,
                                                      const UnitSystem& units) {
  const auto [m, v, M, V] = params_of(scenario);
  const RecoilSolution r = solve_collective_recoil(m, v, M, V, 2, units);
  const double v1r = r.particle_velocity();
  const double Vr = r.scatterer_velocity();
  const double k1r = r.particles.front().wavevector;
  // Pair convention: each scatterer carries 2 M V' / hbar.
  const double Kr = r.scatterers.front().wavevector;
  const CqiOffsets off = phase_offsets_cqi(m, M, scenario.x0);
  const auto& lp = scenario.particle().coherence_length;
  const auto& l2 = scenario.scatterers[0].coherence_length;
  const auto& l3 = scenario.scatterers[1].coherence_length;

  AmplitudeBranch from2;
  from2.id = "reflect-from-scatterer-2";
  from2.coefficient = -1.0;
  from2.bodies = {BodyWave{k1r, v1r, 0.0, lp}, BodyWave{Kr, Vr, 0.0, l2},
                  BodyWave{Kr, Vr, scenario.x0, l3}};

  AmplitudeBranch from3;
  from3.id = "reflect-from-scatterer-3";
  from3.coefficient = -1.0;
  from3.bodies = {BodyWave{k1r, v1r, off.particle, lp}, BodyWave{Kr, Vr, 0.0, l2},
                  BodyWave{Kr, Vr, off.scatterer, l3}};
  return {from2, from3};
}

double sqi_fringe_period(double m, double M, double v, double V, double hbar) {
  require_positive(m, "particle mass");
  require_positive(M, "scatterer mass");
  if (v == V) return std::numeric_limits<double>::infinity();
  return kPi * hbar * (m + M) / (m * M * std::abs(v - V));
}

double cqi_fringe_period(double m, double M, double v, double V, double hbar) {
  require_positive(m, "particle mass");
  require_positive(M, "scatterer mass");
  if (v == V) return std::numeric_limits<double>::infinity();
  return kPi * hbar * (m + 2.0 * M) / (2.0 * m * M * std::abs(v - V));
}

double cqi4_fringe_period(double m, double M, double v, double V, double hbar) {
  require_positive(m, "particle mass");
  require_positive(M, "scatterer mass");
  if (v == V) return std::numeric_limits<double>::infinity();
  return kPi * hbar * (m + M) / (2.0 * m * M * std::abs(v - V));
}

VisibilityReport overlap_visibility(const ScatteringScenario& scenario, const UnitSystem& units) {
  const auto [m, v, M, V] = params_of(scenario);
  VisibilityReport out;
  if (const auto& l = scenario.particle().coherence_length) {
    // Amplitude overlap of Gaussians with sigma = l / 2 displaced by 2 x0.
    const double path = 2.0 * scenario.x0;
    out.particle_path = gaussian_overlap(path * path / (2.0 * *l * *l));
  }
  if (const auto L = scatterer_coherence(scenario)) {
    const double sigma = 0.5 * *L;
    if (scenario.model == Model::sqi) {
      // Momentum kick q separates recoiled from unrecoiled substates; the
      // fringe term carries one such overlap per scatterer.
      const double q = M * (solve_two_body_recoil(m, v, M, V, units).scatterer_velocity() - V);
      const double single = gaussian_overlap(q * q * sigma * sigma / (2.0 * units.hbar * units.hbar));
      out.scatterer_recoil = single * single;
    } else {
      const double dV = solve_collective_recoil(m, v, M, V, 2, units).scatterer_velocity() - V;
      const double kick = 2.0 * M * dV;
      const double sigma_cm = sigma / std::sqrt(2.0);
      out.cm_recoil =
          gaussian_overlap(kick * kick * sigma_cm * sigma_cm / (2.0 * units.hbar * units.hbar));
    }
  }
  out.factor = out.particle_path * out.scatterer_recoil * out.cm_recoil;
  if (out.factor >= 0.99) {
    out.verdict = "full interference";
  } else if (out.factor < 1e-3) {
    out.verdict = "path information: no interference";
  } else {
    out.verdict = "partial interference";
  }
  return out;
}

double pdf_sqi_3body(const ScatteringScenario& scenario, double /*x1*/, double x2, double x3,
                     const UnitSystem& units) {
  if (scenario.model != Model::sqi) throw std::invalid_argument("pdf_sqi_3body needs an SQI scenario");
  const auto [m, v, M, V] = params_of(scenario);
  const double arg = m * M * (v - V) * (x3 - x2) / (units.hbar * (m + M));
  return mix(overlap_visibility(scenario, units).factor, cos2(arg));
}

double pdf_cqi_3body(const ScatteringScenario& scenario, double x0, const UnitSystem& units) {
  if (scenario.model != Model::cqi) throw std::invalid_argument("pdf_cqi_3body needs a CQI scenario");
  require_positive(x0, "x0");
  const auto [m, v, M, V] = params_of(scenario);
  const double arg = 2.0 * m * M * (v - V) * x0 / (units.hbar * (m + 2.0 * M));
  ScatteringScenario at = scenario;
  at.x0 = x0;
  return mix(overlap_visibility(at, units).factor, cos2(arg));
}

double pdf_cqi_4body(double m, double M, double v, double V, double x0, const UnitSystem& units) {
  require_positive(m, "particle mass");
  require_positive(M, "scatterer mass");
  require_positive(x0, "x0");
  return cos2(2.0 * m * M * (v - V) * x0 / (units.hbar * (m + M)));
}

MarginalOptions default_marginal_window(const ScatteringScenario& scenario, double periods,
                                        const UnitSystem& units) {
  const auto [m, v, M, V] = params_of(scenario);
  double width = periods * sqi_fringe_period(m, M, v, V, units.hbar);
  if (!std::isfinite(width)) width = periods * scenario.x0;
  MarginalOptions o;
  o.x2_min = -0.5 * width;
  o.x2_max = 0.5 * width;
  o.x3_min = scenario.x0 - 0.5 * width;
  o.x3_max = scenario.x0 + 0.5 * width;
  o.samples = std::max<std::size_t>(401, static_cast<std::size_t>(32.0 * periods) + 1);
  return o;
}

MarginalResult marginal_particle_pdf(Model model, const ScatteringScenario& scenario,
                                     std::span<const double> x1_grid,
                                     const MarginalOptions& options, const UnitSystem& units) {
  if (options.samples < 2) throw std::invalid_argument("marginal needs at least 2 samples per axis");
  if (!(options.x2_max > options.x2_min) || !(options.x3_max > options.x3_min))
    throw std::invalid_argument("marginal integration ranges must be non-empty");
  ScatteringScenario s = scenario;
  s.model = model;
  const auto [m, v, M, V] = params_of(s);

  const std::vector<double> x2 = linspace(options.x2_min, options.x2_max, options.samples);
  const std::vector<double> x3 = linspace(options.x3_min, options.x3_max, options.samples);
  std::vector<double> inner(x3.size());
  std::vector<double> outer(x2.size());
  std::vector<double> values;
  values.reserve(x1_grid.size());
  for (double x1 : x1_grid) {
    for (std::size_t i = 0; i < x2.size(); ++i) {
      for (std::size_t j = 0; j < x3.size(); ++j) {
        inner[j] = model == Model::sqi ? pdf_sqi_3body(s, x1, x2[i], x3[j], units)
                                       : pdf_cqi_3body(s, s.x0, units);
      }
      outer[i] = trapezoid(x3, inner);
    }
    values.push_back(trapezoid(x2, outer));
  }

  const double period = sqi_fringe_period(m, M, v, V, units.hbar);
  const double span = std::min(options.x2_max - options.x2_min, options.x3_max - options.x3_min);
  MarginalResult out{PdfGrid({Axis{"x1", std::vector<double>(x1_grid.begin(), x1_grid.end())}},
                             std::move(values)),
                     std::isfinite(period) ? span / period : std::numeric_limits<double>::infinity(),
                     std::nullopt};
  if (model == Model::sqi && out.periods_covered < 1.0) out.warning = "marginal not converged";
  return out;
}

}  // namespace fewbody
