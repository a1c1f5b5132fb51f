#pragma once

#include <numbers>

// CODATA 2018 recommended values, SI units. This is the single table that
// every SI-mode computation reads from.
namespace fewbody::codata {

inline constexpr double planck = 6.62607015e-34;               // J s (exact)
inline constexpr double reduced_planck = planck / (2.0 * std::numbers::pi);  // 1.054571817e-34 J s
inline constexpr double speed_of_light = 299792458.0;          // m / s (exact)
inline constexpr double boltzmann = 1.380649e-23;              // J / K (exact)
inline constexpr double electron_mass = 9.1093837015e-31;      // kg
inline constexpr double neutron_mass = 1.67492749804e-27;      // kg
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double angstrom = 1.0e-10;                    // m

}  // namespace fewbody::codata
