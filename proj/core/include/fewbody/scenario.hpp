#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace fewbody {

enum class Model { sqi, cqi };

std::string_view to_string(Model model);
Model parse_model(std::string_view text);

// One particle or scatterer. An unset coherence length means an unbounded
// wavegroup (momentum eigenstate).
struct Body {
  double mass = 1.0;
  double velocity = 0.0;
  double position = 0.0;
  std::optional<double> coherence_length;

  void validate() const;
};

// Particle coherence length relative to the path difference 2*x0, and
// scatterer coherence length relative to the separation x0.
struct CoherenceRegime {
  std::optional<double> particle_ratio;   // l_coh / (2 x0)
  std::optional<double> scatterer_ratio;  // L_coh / x0
  bool particle_long = true;              // l_coh >> 2 x0 (or unset)
  bool scatterer_short = true;            // L_coh << x0 (or unset)
};

struct ScatteringScenario {
  std::vector<Body> particles;      // one or two
  std::array<Body, 2> scatterers;   // scatterer at the origin, then at x0
  double x0 = 1.0;
  double d = 0.0;                   // particle separation, four-body only
  Model model = Model::sqi;
  bool unequal_scatterers = false;  // lifts the equal mass/velocity restriction

  // Throws std::invalid_argument on broken invariants.
  void validate() const;
  bool scatterers_equal() const;
  // Throws PhysicsError if the closed-form PDFs do not apply.
  void require_equal_scatterers() const;
  CoherenceRegime regime() const;

  const Body& particle() const { return particles.front(); }
};

// Convenience for the common one-particle, two-equal-scatterer setup.
ScatteringScenario make_three_body(double m, double v, double M, double V, double x0,
                                   Model model);

}  // namespace fewbody
