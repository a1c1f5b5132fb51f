#pragma once

#include <string_view>

namespace fewbody {

enum class UnitMode { natural, si };

// Constants consumed by the interference and transition formulas. In natural
// mode hbar = c = kB = 1. h = 2 pi hbar in both modes; SI takes the exact h.
struct UnitSystem {
  double hbar;
  double h;
  double c;
  double kB;
  UnitMode mode;
};

UnitSystem make_unit_system(UnitMode mode);

inline const UnitSystem& natural_units() {
  static const UnitSystem units = make_unit_system(UnitMode::natural);
  return units;
}

inline const UnitSystem& si_units() {
  static const UnitSystem units = make_unit_system(UnitMode::si);
  return units;
}

// Accepts "natural" or "si" (case-insensitive); throws std::invalid_argument.
UnitMode parse_unit_mode(std::string_view text);
std::string_view to_string(UnitMode mode);

}  // namespace fewbody
