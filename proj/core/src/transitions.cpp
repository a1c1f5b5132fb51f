#include "fewbody/transitions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fewbody {

namespace {
void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw std::invalid_argument(std::string(name) + " must be positive and finite");
}
}  // namespace

void SlabSpec::validate() const {
  require_positive(D, "slab thickness D");
  require_positive(M, "slab mass M");
  require_positive(m_atom, "atom mass");
  require_positive(T, "temperature T");
  if (!(n_g >= 1.0) || !std::isfinite(n_g))
    throw std::invalid_argument("group index n_g must be at least 1");
  if (const auto* photon = std::get_if<PhotonProbe>(&probe)) {
    if (!(photon->frequency >= 0.0)) throw std::invalid_argument("photon frequency must be non-negative");
  } else {
    require_positive(std::get<NeutronProbe>(probe).mass, "neutron mass");
  }
}

void DimerSpec::validate() const {
  require_positive(d0, "internuclear distance d0");
  require_positive(delta_L, "angular momentum uncertainty");
  require_positive(lambda0, "wavelength");
}

double slab_displacement(const SlabSpec& spec, DisplacedBody body, const UnitSystem& units) {
  spec.validate();
  const double mass = body == DisplacedBody::slab ? spec.M : spec.m_atom;
  const double delay = spec.D * (spec.n_g - 1.0);
  if (const auto* photon = std::get_if<PhotonProbe>(&spec.probe))
    return delay * units.h * photon->frequency / (mass * units.c * units.c);
  return delay * std::get<NeutronProbe>(spec.probe).mass / mass;
}

double thermal_coherence_length(double M, double T, const UnitSystem& units) {
  require_positive(M, "mass");
  require_positive(T, "temperature");
  return units.h / std::sqrt(2.0 * M * units.kB * T);
}

TransitionReport slab_transition(const SlabSpec& spec, const UnitSystem& units) {
  const double L_c = thermal_coherence_length(spec.m_atom, spec.T, units);
  const double shift = slab_displacement(spec, DisplacedBody::atom, units);
  const char* name = std::holds_alternative<PhotonProbe>(spec.probe) ? "slab (photon)" : "slab (neutron)";
  return make_report(name, L_c, shift, shift / L_c, /*coherent_above=*/false);
}

double dimer_threshold_wavelength(double d0, double delta_L, const UnitSystem& units) {
  require_positive(d0, "internuclear distance d0");
  require_positive(delta_L, "angular momentum uncertainty");
  return units.h * d0 / delta_L;
}

TransitionReport dimer_transition(const DimerSpec& spec, const UnitSystem& units) {
  spec.validate();
  const double threshold = dimer_threshold_wavelength(spec.d0, spec.delta_L, units);
  return make_report("dimer rotation", threshold, spec.lambda0, spec.lambda0 / threshold,
                     /*coherent_above=*/true);
}

}  // namespace fewbody
