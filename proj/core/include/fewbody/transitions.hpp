#pragma once

#include <variant>

#include "fewbody/codata.hpp"
#include "fewbody/transition_report.hpp"
#include "fewbody/units.hpp"

namespace fewbody {

struct PhotonProbe {
  double frequency = 0.0;  // nu
};

struct NeutronProbe {
  double mass = codata::neutron_mass;
  double speed = 0.0;
};

using Probe = std::variant<PhotonProbe, NeutronProbe>;

// Transparent slab of thickness D and mass M built from free atoms of mass
// m_atom, with group index n_g for the chosen probe, at temperature T.
struct SlabSpec {
  double D = 0.0;
  double M = 0.0;
  double m_atom = 0.0;
  double n_g = 1.0;
  Probe probe = PhotonProbe{};
  double T = 0.0;

  void validate() const;
};

struct DimerSpec {
  double d0 = 0.0;       // internuclear distance
  double delta_L = 0.0;  // angular momentum uncertainty
  double lambda0 = 0.0;  // incident wavelength

  void validate() const;
};

enum class DisplacedBody { slab, atom };

// D (n_g - 1) h nu / (M c^2) for photons, D (n_g - 1) m_n / M for neutrons;
// the atom variant replaces M by m_atom.
double slab_displacement(const SlabSpec& spec, DisplacedBody body,
                         const UnitSystem& units = si_units());

// h / sqrt(2 M kB T).
double thermal_coherence_length(double M, double T, const UnitSystem& units = si_units());

// Interference is lost when the thermal coherence length of an atom is
// shorter than its displacement; margin = displacement / L_c (> 1 incoherent).
TransitionReport slab_transition(const SlabSpec& spec, const UnitSystem& units = si_units());

// h d0 / delta_L.
double dimer_threshold_wavelength(double d0, double delta_L, const UnitSystem& units = si_units());

// Coherent (no rotational path information) when lambda0 > h d0 / delta_L;
// margin = lambda0 delta_L / (h d0).
TransitionReport dimer_transition(const DimerSpec& spec, const UnitSystem& units = si_units());

}  // namespace fewbody
