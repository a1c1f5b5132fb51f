#pragma once

#include <string>
#include <string_view>

namespace fewbody {

enum class Verdict { coherent, incoherent, transition_region };

std::string_view to_string(Verdict verdict);

// Outcome of one coherent/incoherent criterion. `margin` is the
// dimensionless ratio the verdict is read from; margins inside
// [0.99, 1.01] are reported as the transition region.
struct TransitionReport {
  std::string criterion;
  double threshold = 0.0;  // critical value of the compared quantity
  double value = 0.0;      // the compared quantity for this input
  double margin = 0.0;
  Verdict verdict = Verdict::coherent;
};

inline constexpr double kTransitionBandLow = 0.99;
inline constexpr double kTransitionBandHigh = 1.01;

// Builds a report; `coherent_above` says which side of margin = 1 is coherent.
TransitionReport make_report(std::string criterion, double threshold, double value,
                             double margin, bool coherent_above);

}  // namespace fewbody
