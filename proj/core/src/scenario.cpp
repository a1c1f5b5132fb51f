#include "fewbody/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fewbody/error.hpp"

namespace fewbody {

namespace {
// Scale of "much greater than" used for the regime flags.
constexpr double kRegimeFactor = 10.0;
}  // namespace

std::string_view to_string(Model model) { return model == Model::sqi ? "SQI" : "CQI"; }

Model parse_model(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  if (upper == "SQI") return Model::sqi;
  if (upper == "CQI") return Model::cqi;
  throw std::invalid_argument("unknown model '" + std::string(text) + "' (expected SQI or CQI)");
}

void Body::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("body mass must be positive");
  if (!std::isfinite(velocity) || !std::isfinite(position))
    throw std::invalid_argument("body velocity and position must be finite");
  if (coherence_length && !(*coherence_length > 0.0))
    throw std::invalid_argument("coherence length must be positive when set");
}

void ScatteringScenario::validate() const {
  if (particles.empty() || particles.size() > 2)
    throw std::invalid_argument("scenario needs one or two particles");
  for (const auto& p : particles) p.validate();
  for (const auto& s : scatterers) s.validate();
  if (!(x0 > 0.0) || !std::isfinite(x0)) throw std::invalid_argument("x0 must be positive");
  if (particles.size() == 2 && !(d >= 0.0)) throw std::invalid_argument("d must be non-negative");
}

bool ScatteringScenario::scatterers_equal() const {
  return scatterers[0].mass == scatterers[1].mass &&
         scatterers[0].velocity == scatterers[1].velocity;
}

void ScatteringScenario::require_equal_scatterers() const {
  validate();
  if (!scatterers_equal())
    throw PhysicsError(
        "closed-form PDFs require scatterers of equal mass and initial velocity");
}

CoherenceRegime ScatteringScenario::regime() const {
  CoherenceRegime out;
  if (particle().coherence_length) {
    out.particle_ratio = *particle().coherence_length / (2.0 * x0);
    out.particle_long = *out.particle_ratio >= kRegimeFactor;
  }
  const auto& s = scatterers[0].coherence_length ? scatterers[0] : scatterers[1];
  if (s.coherence_length) {
    out.scatterer_ratio = *s.coherence_length / x0;
    out.scatterer_short = *out.scatterer_ratio <= 1.0 / kRegimeFactor;
  }
  return out;
}

ScatteringScenario make_three_body(double m, double v, double M, double V, double x0,
                                   Model model) {
  ScatteringScenario s;
  s.particles = {Body{m, v, 0.0, std::nullopt}};
  s.scatterers = {Body{M, V, 0.0, std::nullopt}, Body{M, V, x0, std::nullopt}};
  s.x0 = x0;
  s.model = model;
  s.validate();
  return s;
}

}  // namespace fewbody
