#include "fewbody/transition_report.hpp"

#include <utility>

namespace fewbody {

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::coherent:
      return "coherent";
    case Verdict::incoherent:
      return "incoherent";
    case Verdict::transition_region:
      return "transition region";
  }
  return "unknown";
}

TransitionReport make_report(std::string criterion, double threshold, double value,
                             double margin, bool coherent_above) {
  TransitionReport report{std::move(criterion), threshold, value, margin, Verdict::coherent};
  if (margin >= kTransitionBandLow && margin <= kTransitionBandHigh) {
    report.verdict = Verdict::transition_region;
  } else if ((margin > 1.0) == coherent_above) {
    report.verdict = Verdict::coherent;
  } else {
    report.verdict = Verdict::incoherent;
  }
  return report;
}

}  // namespace fewbody
