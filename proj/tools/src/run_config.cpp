#include "run_config.hpp"

#include <cmath>

namespace reslab::app {

void validate(const RunConfig& c) {
  if (c.form != "delta" && c.form != "maass") throw Error(ErrorKind::kConfig, "--form must be delta or maass");
  if (c.form == "maass" && !c.maass_file) throw Error(ErrorKind::kConfig, "--form maass needs --maass-file");
  if (c.mode != "paper" && c.mode != "custom") throw Error(ErrorKind::kConfig, "--mode must be paper or custom");
  if (!std::isfinite(c.T) || !(c.T > 40.0)) throw Error(ErrorKind::kConfig, "--T must exceed 40");
  if (!std::isfinite(c.theta)) throw Error(ErrorKind::kConfig, "--theta must be finite");
  if (!(c.xi > 0.0 && c.xi < 1.0 / 3.0)) throw Error(ErrorKind::kConfig, "--xi must lie in (0, 1/3)");
  if (c.tol && !(*c.tol >= 0.0)) throw Error(ErrorKind::kConfig, "--tol must be non-negative");
  if (c.mode == "custom" && !(c.p_min < c.p_max && c.L > 0.0)) {
    throw Error(ErrorKind::kConfig, "custom mode needs --pmin < --pmax and --L > 0");
  }
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j{{"command", c.command}, {"form", c.form},   {"T", c.T},       {"theta", c.theta},
                   {"xi", c.xi},           {"mode", c.mode},   {"tol", c.solver_tol()}};
  j["maass_file"] = c.maass_file ? nlohmann::json(*c.maass_file) : nlohmann::json(nullptr);
  if (c.mode == "custom") {
    j["pmin"] = c.p_min;
    j["pmax"] = c.p_max;
    j["L"] = c.L;
  }
  return j;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kAccuracy:
    case ErrorKind::kGridRefinement:
    case ErrorKind::kConditioning:
    case ErrorKind::kPole:
      return 3;
    case ErrorKind::kEmptyDomain:
    case ErrorKind::kIncompleteSource:
    case ErrorKind::kParse:
    case ErrorKind::kDomain:
    case ErrorKind::kProfileRejected:
    case ErrorKind::kBudget:
    case ErrorKind::kInsufficientPoints:
    case ErrorKind::kConfig:
      return 2;
  }
  return 2;
}

ResonatorProfile profile_for(const RunConfig& c) {
  if (c.mode == "paper") return make_profile(c.T, c.xi, ProfileMode::kPaper);
  return make_profile(c.T, c.xi, ProfileMode::kCustom, CustomWindow{c.p_min, c.p_max, c.L});
}

EigenvalueTable load_form(const RunConfig& c, std::uint64_t limit) {
  if (c.form == "delta") return build_delta_table(limit);
  return load_maass_table(*c.maass_file, limit);
}

}  // namespace reslab::app
