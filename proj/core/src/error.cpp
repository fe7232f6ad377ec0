#include "reslab/error.hpp"

namespace reslab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kEmptyDomain: return "empty-domain";
    case ErrorKind::kIncompleteSource: return "incomplete-source";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kPole: return "pole";
    case ErrorKind::kConditioning: return "conditioning";
    case ErrorKind::kAccuracy: return "accuracy";
    case ErrorKind::kGridRefinement: return "grid-refinement";
    case ErrorKind::kProfileRejected: return "profile-rejected";
    case ErrorKind::kBudget: return "budget";
    case ErrorKind::kInsufficientPoints: return "insufficient-points";
    case ErrorKind::kConfig: return "config";
  }
  return "unknown";
}

}  // namespace reslab
