#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"

using reslab::app::RunConfig;

int main(int argc, char** argv) {
  CLI::App app{"reslab: resonance-method experiments for L-functions of GL(2) cusp forms"};
  app.require_subcommand(1);
  RunConfig config;

  app.add_option("--form", config.form, "delta or maass")->capture_default_str();
  app.add_option("--maass-file", config.maass_file, "Maass coefficient file (r line, then n lambda_n)");
  app.add_option("--T", config.T, "height T")->capture_default_str();
  app.add_option("--theta", config.theta, "prescribed argument theta")->capture_default_str();
  app.add_option("--xi", config.xi, "resonator exponent xi in (0, 1/3)")->capture_default_str();
  app.add_option("--mode", config.mode, "resonator profile: paper or custom")->capture_default_str();
  app.add_option("--pmin", config.p_min, "custom window lower end")->capture_default_str();
  app.add_option("--pmax", config.p_max, "custom window upper end")->capture_default_str();
  app.add_option("--L", config.L, "custom resonator scale L")->capture_default_str();
  app.add_option("--tol", config.tol, "solver residual tolerance; in verify, overrides the error tolerances");
  app.add_option("--out", config.out, "output path (default stdout)");

  for (const auto& [name, help] : {std::pair{"verify", "run the acceptance suite and emit a JSON report"},
                                   std::pair{"scan", "CSV of L(1/2+it) over the prescribed-argument set in [T/2, 2T]"},
                                   std::pair{"moments", "weighted first moments over the prescribed-argument set"},
                                   std::pair{"kernels", "stationary-phase diagnostics for the oscillatory kernels"}}) {
    app.add_subcommand(name, help)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  config.command = app.get_subcommands().front()->get_name();
  try {
    reslab::app::validate(config);
    if (config.command == "verify") return reslab::app::cmd_verify(config);
    if (config.command == "scan") return reslab::app::cmd_scan(config);
    if (config.command == "moments") return reslab::app::cmd_moments(config);
    return reslab::app::cmd_kernels(config);
  } catch (const reslab::Error& e) {
    const nlohmann::json record{{"schema", 1},
                                {"command", config.command},
                                {"error", {{"kind", std::string(reslab::to_string(e.kind()))}, {"message", e.what()}}}};
    std::cerr << record.dump() << "\n";
    return reslab::app::exit_code_for(e.kind());
  }
}
