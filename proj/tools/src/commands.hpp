#pragma once

#include <iosfwd>

#include <json.hpp>

#include "reslab/moments.hpp"
#include "run_config.hpp"

namespace reslab::app {

nlohmann::json to_json(const MomentReport& report);
nlohmann::json to_json(const ResonatorProfile& profile);
nlohmann::json to_json(const KernelSpec& spec, const KernelResult& result);

// Columns t, re_L, im_L, abs_L, arg_L, phase_residual; '#' lines carry the config.
void write_scan_csv(std::ostream& out, const nlohmann::json& config, const PhasePointSet& points,
                    const std::vector<AfeValue>& values);

// Each command returns the process exit code. Module errors propagate to the caller.
int cmd_verify(const RunConfig& config);
int cmd_scan(const RunConfig& config);
int cmd_moments(const RunConfig& config);
int cmd_kernels(const RunConfig& config);

}  // namespace reslab::app
