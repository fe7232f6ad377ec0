#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "reslab/arith.hpp"
#include "reslab/error.hpp"
#include "reslab/resonator.hpp"

namespace reslab::app {

struct RunConfig {
  std::string command;
  std::string form = "delta";  // delta | maass
  std::optional<std::string> maass_file;
  double T = 200;
  double theta = 0;
  double xi = 0.01;
  std::string mode = "custom";  // paper | custom
  double p_min = 100;
  double p_max = 1e4;
  double L = 5;
  std::optional<double> tol;  // solver residual; in verify also overrides error tolerances
  std::optional<std::string> out;

  double solver_tol() const { return tol.value_or(1e-10); }
};

// Throws Error(kConfig) for values that break a module precondition.
void validate(const RunConfig& config);

nlohmann::json to_json(const RunConfig& config);

// 0 success, 1 assertion failure, 2 config error, 3 numeric-accuracy error.
int exit_code_for(ErrorKind kind);

ResonatorProfile profile_for(const RunConfig& config);

// Delta table of the given length, or the Maass table read from the configured file.
EigenvalueTable load_form(const RunConfig& config, std::uint64_t limit);

}  // namespace reslab::app
