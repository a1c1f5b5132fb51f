#include "fewbody/units.hpp"

#include <algorithm>
#include <cctype>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fewbody/codata.hpp"

namespace fewbody {

UnitSystem make_unit_system(UnitMode mode) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  switch (mode) {
    case UnitMode::natural:
      return UnitSystem{1.0, two_pi, 1.0, 1.0, UnitMode::natural};
    case UnitMode::si:
      return UnitSystem{codata::reduced_planck, codata::planck,
                        codata::speed_of_light, codata::boltzmann, UnitMode::si};
  }
  throw std::invalid_argument("unknown unit mode");
}

UnitMode parse_unit_mode(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "natural") return UnitMode::natural;
  if (lower == "si") return UnitMode::si;
  throw std::invalid_argument("unknown unit mode '" + std::string(text) +
                              "' (expected natural or si)");
}

std::string_view to_string(UnitMode mode) {
  return mode == UnitMode::natural ? "natural" : "si";
}

}  // namespace fewbody
