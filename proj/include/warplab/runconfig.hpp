#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "warplab/audit.hpp"
#include "warplab/bundle.hpp"

namespace warplab {

// Operator configuration: flat key=value text with dotted keys, one pair per
// line, '#' comments. See README for the grammar.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SurfaceKind { Slice, Perturbed, File, Solve };

struct RunConfig {
    WarpedModel model;
    Grid grid;
    Orientation orientation;

    SurfaceKind surface_kind = SurfaceKind::Slice;
    double t0 = 0.0;
    double amplitude = 0.0;
    std::vector<double> mode;
    std::string surface_file;

    double h_target = 1.0;
    double boundary_amplitude = 0.0;
    std::vector<double> boundary_mode;
    std::string boundary_file;
    int max_iters = 25;
    double newton_tol = 1e-10;
    double damping = 1.0;

    double tol_coeff;
    std::vector<TheoremId> audit_theorems;  // empty = all applicable to the model

    RunConfig(WarpedModel m, Grid g, Orientation o, double tol)
        : model(std::move(m)), grid(std::move(g)), orientation(o), tol_coeff(tol) {}
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& name);

// Resamples the same box at (approximately) the requested spacing, keeping
// periodic lengths exact. Used by --spacing-override for convergence studies.
Grid respaced(const Grid& grid, double spacing);

}  // namespace warplab
