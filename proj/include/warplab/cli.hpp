#pragma once

#include <optional>
#include <string>
#include <vector>

#include "warplab/runconfig.hpp"
#include "warplab/solver.hpp"

namespace warplab {

struct CliOptions {
    std::string out_dir;
    bool no_timestamp = false;
    std::optional<double> spacing_override;
};

// Exit codes: 0 pass, 1 verification/solve/audit failure, 2 usage or config
// error.
int cmd_verify(const RunConfig& cfg, const CliOptions& opts);
int cmd_solve(const RunConfig& cfg, const CliOptions& opts);
int cmd_audit(const RunConfig& cfg, const CliOptions& opts);
int cmd_report(const CliOptions& opts);

// Full front end: parses `warplab <verify|solve|audit|report> ...` argument
// vectors. The CLI binary is a thin wrapper over this; tests drive it
// in-process.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);

// Surface construction shared by the subcommands (exposed for tests).
GraphSurface build_surface(const RunConfig& cfg, SolveReport* solve_report = nullptr);

}  // namespace warplab
