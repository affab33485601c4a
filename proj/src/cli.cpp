#include "warplab/cli.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "warplab/errors.hpp"
#include "warplab/oracle.hpp"
#include "warplab/tolerance.hpp"

namespace warplab {

namespace fs = std::filesystem;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void write_header_comment(std::ostream& os, const CliOptions& opts) {
    if (!opts.no_timestamp) {
        std::time_t now = std::time(nullptr);
        char buf[64];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        os << "# generated " << buf << "\n";
    }
}

ScalarField boundary_profile(const Grid& grid, double t0, double amplitude,
                             const std::vector<double>& mode) {
    return ScalarField::from_function(grid, [&](std::span<const double> x) {
        double w = amplitude;
        for (std::size_t a = 0; a < mode.size() && a < x.size(); ++a) {
            if (mode[a] != 0.0) w *= std::sin(mode[a] * x[a]);
        }
        return t0 + (mode.empty() ? 0.0 : w);
    });
}

struct IdentityRow {
    std::string name;
    double max_error;
    double tolerance;
    bool pass;
};

void append_field(std::vector<std::pair<std::string, const ScalarField*>>& out,
                  const char* name, const std::optional<ScalarField>& f) {
    if (f) out.emplace_back(name, &*f);
}

}  // namespace

GraphSurface build_surface(const RunConfig& cfg, SolveReport* solve_report) {
    switch (cfg.surface_kind) {
        case SurfaceKind::Slice:
            return make_slice(cfg.model, cfg.grid, cfg.t0);
        case SurfaceKind::Perturbed:
            return make_perturbed(cfg.model, cfg.grid, cfg.t0, cfg.amplitude, cfg.mode);
        case SurfaceKind::File: {
            ScalarField u = [&] {
                try {
                    return ScalarField::read_csv(cfg.surface_file);
                } catch (const std::exception& e) {
                    throw ConfigError(e.what());
                }
            }();
            if (!u.grid().same_layout(cfg.grid)) {
                throw ConfigError("surface.file '" + cfg.surface_file +
                                  "' does not match the configured grid layout");
            }
            return make_graph(cfg.model, std::move(u));
        }
        case SurfaceKind::Solve: {
            ScalarField bdata = [&]() -> ScalarField {
                if (!cfg.boundary_file.empty()) {
                    try {
                        return ScalarField::read_csv(cfg.boundary_file);
                    } catch (const std::exception& e) {
                        throw ConfigError(e.what());
                    }
                }
                return boundary_profile(cfg.grid, cfg.t0, cfg.boundary_amplitude,
                                        cfg.boundary_mode);
            }();
            if (!(bdata.grid() == cfg.grid)) {
                throw ConfigError("solver boundary data does not match the configured grid");
            }
            SolveConfig scfg(cfg.h_target, std::move(bdata));
            scfg.max_iters = cfg.max_iters;
            scfg.newton_tol = cfg.newton_tol;
            scfg.damping = cfg.damping;
            return solve_cmc(cfg.model, cfg.grid, scfg, solve_report);
        }
    }
    throw ConfigError("unknown surface kind");
}

int cmd_verify(const RunConfig& cfg_in, const CliOptions& opts) {
    RunConfig cfg = cfg_in;
    if (opts.spacing_override) {
        cfg.grid = respaced(cfg.grid, *opts.spacing_override);
    }
    fs::create_directories(opts.out_dir);

    GraphSurface surface = build_surface(cfg);
    GeometryBundle bd = build_bundle(surface, cfg.orientation);
    const Grid& grid = bd.grid();
    const double tol = grid_tol(grid, cfg.tol_coeff);
    const int n = bd.dim();
    const int omargin = grid.boundary() == Boundary::Dirichlet ? 2 : 0;

    std::vector<IdentityRow> rows;

    {
        ScalarField orc = laplace_beltrami_oracle(bd.g, bd.h());
        double err = max_abs_difference_interior(orc, laplacian_h_formula(bd), omargin);
        rows.push_back({"laplacian_h_vs_oracle", err, tol, err <= tol});
    }
    {
        ScalarField orc = laplace_beltrami_oracle(bd.g, bd.eta);
        double err = max_abs_difference_interior(orc, laplacian_eta_conformal(bd), omargin);
        rows.push_back({"laplacian_eta_conformal_vs_oracle", err, tol, err <= tol});

        try {
            ScalarField warped = laplacian_eta_warped(bd, cmc_tol(grid, cfg.tol_coeff));
            double werr = max_abs_difference_interior(orc, warped, omargin);
            rows.push_back({"laplacian_eta_warped_vs_oracle", werr, tol, werr <= tol});
        } catch (const std::invalid_argument&) {
            // variable H: the CMC form does not apply to this surface
        }
    }
    {
        double err = 0.0;
        double scale = 1.0;
        if (bd.H2) {
            for (std::size_t p = 0; p < grid.size(); ++p) {
                double rhs = n * n * bd.H[p] * bd.H[p] -
                             n * (n - 1.0) * (*bd.H2)[p];
                err = std::max(err, std::fabs(bd.A_norm2[p] - rhs));
                scale = std::max(scale, std::fabs(rhs));
            }
            double t = 1e-12 * scale;
            rows.push_back({"shape_norm_identity", err, t, err <= t});
        }
    }
    {
        double err = 0.0;
        double eps = static_cast<double>(cfg.model.epsilon);
        for (std::size_t p = 0; p < grid.size(); ++p) {
            double rhs = eps * (1.0 - bd.normal_t[p] * bd.normal_t[p]);
            err = std::max(err, std::fabs(bd.grad_h_norm2[p] - rhs));
        }
        double t = 1e-12;
        rows.push_back({"gradient_normal_identity", err, t, err <= t});
    }
    if (n == 2 && !cfg.model.lorentzian() &&
        cfg.model.warp.kind == WarpKind::Exponential) {
        double err = 0.0;
        double scale = 1.0;
        for (std::size_t p = 0; p < grid.size(); ++p) {
            double rhs = 2.0 * bd.H[p] * bd.H[p] - 1.0 - 0.5 * bd.A_norm2[p];
            err = std::max(err, std::fabs((*bd.K)[p] - rhs));
            scale = std::max(scale, std::fabs(rhs));
        }
        double t = 1e-12 * scale;
        rows.push_back({"k_gauss_identity", err, t, err <= t});
    }
    {
        double lo = bd.u.min() - 0.5;
        double hi = bd.u.max() + 0.5;
        Grid tgrid({65}, {(hi - lo) / 64.0}, Boundary::Dirichlet, {lo});
        ScalarField tsamples = ScalarField::from_function(
            tgrid, [](std::span<const double> x) { return x[0]; });
        double res = conformality_residual(cfg.model, tsamples);
        double t = cfg.model.warp.kind == WarpKind::Constant
                       ? 1e-12
                       : grid_tol(tgrid, cfg.tol_coeff);
        rows.push_back({"conformality_residual", res, t, res <= t});
    }

    // Summary table.
    std::string summary_name = "verify_summary.csv";
    if (opts.spacing_override) {
        summary_name = "verify_summary_s" + fmt6(*opts.spacing_override) + ".csv";
    }
    {
        std::ofstream os(fs::path(opts.out_dir) / summary_name);
        write_header_comment(os, opts);
        os << "identity,spacing,max_error,tolerance,pass\n";
        for (const auto& r : rows) {
            os << r.name << "," << fmt17(grid.max_spacing()) << "," << fmt17(r.max_error)
               << "," << fmt17(r.tolerance) << "," << (r.pass ? 1 : 0) << "\n";
        }
    }

    // Per-field exports plus the model manifest.
    std::vector<std::pair<std::string, const ScalarField*>> fields = {
        {"u", &bd.u},           {"H", &bd.H},
        {"eta", &bd.eta},       {"normal_t", &bd.normal_t},
        {"grad_h_norm2", &bd.grad_h_norm2}, {"A_norm2", &bd.A_norm2},
    };
    append_field(fields, "H2", bd.H2);
    append_field(fields, "R_scal", bd.R_scal);
    append_field(fields, "K", bd.K);
    append_field(fields, "theta", bd.theta);
    for (const auto& [name, field] : fields) {
        field->write_csv((fs::path(opts.out_dir) / ("surface." + name + ".csv")).string());
    }
    {
        std::ofstream os(fs::path(opts.out_dir) / "surface.manifest.txt");
        write_header_comment(os, opts);
        os << "epsilon=" << cfg.model.epsilon << "\n"
           << "warp=" << cfg.model.warp.name() << "\n"
           << "fiber_dim=" << cfg.model.fiber_dim << "\n"
           << "orientation=" << orientation_name(cfg.orientation) << "\n";
    }

    bool all_pass = true;
    for (const auto& r : rows) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name
                  << " max_error=" << fmt6(r.max_error) << " tol=" << fmt6(r.tolerance)
                  << "\n";
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}

int cmd_solve(const RunConfig& cfg, const CliOptions& opts) {
    if (cfg.surface_kind != SurfaceKind::Solve) {
        throw ConfigError("solve subcommand requires surface.kind=solve");
    }
    fs::create_directories(opts.out_dir);

    SolveReport rep;
    std::string error;
    std::optional<GraphSurface> surface;
    try {
        surface = build_surface(cfg, &rep);
    } catch (const SolveError& e) {
        error = e.what();
        rep.converged = false;
        rep.final_residual = e.final_residual();
        rep.iterations = e.iterations();
        rep.message = e.what();
    }

    {
        std::ofstream os(fs::path(opts.out_dir) / "solver_report.txt");
        write_header_comment(os, opts);
        os << "converged=" << (rep.converged ? "yes" : "no") << "\n"
           << "h_target=" << fmt17(cfg.h_target) << "\n"
           << "newton_tol=" << fmt17(cfg.newton_tol) << "\n"
           << "iterations=" << rep.iterations << "\n"
           << "initial_residual=" << fmt17(rep.initial_residual) << "\n"
           << "final_residual=" << fmt17(rep.final_residual) << "\n";
        os << "damping_history=";
        for (std::size_t i = 0; i < rep.damping_history.size(); ++i) {
            if (i) os << ",";
            os << fmt17(rep.damping_history[i]);
        }
        os << "\n" << "inner_history=";
        for (std::size_t i = 0; i < rep.inner_history.size(); ++i) {
            if (i) os << ",";
            os << rep.inner_history[i];
        }
        os << "\n" << "message=" << rep.message << "\n";
    }

    if (!surface) {
        std::cerr << error << "\n";
        return 1;
    }
    surface->u.write_csv((fs::path(opts.out_dir) / "solution.csv").string());
    std::cout << "converged in " << rep.iterations
              << " iterations, residual " << fmt6(rep.final_residual) << "\n";
    return 0;
}

int cmd_audit(const RunConfig& cfg, const CliOptions& opts) {
    fs::create_directories(opts.out_dir);

    GraphSurface surface = build_surface(cfg);
    GeometryBundle bd = build_bundle(surface, cfg.orientation);
    const double tol = grid_tol(bd.grid(), cfg.tol_coeff);

    std::vector<TheoremId> theorems = cfg.audit_theorems;
    if (theorems.empty()) {
        if (cfg.model.lorentzian()) {
            theorems.push_back(TheoremId::SteadyState41);
            if (bd.dim() == 2) theorems.push_back(TheoremId::SteadyStateBernstein43);
        } else {
            theorems.push_back(TheoremId::Hyperbolic51);
            if (bd.dim() == 2) theorems.push_back(TheoremId::HyperbolicBernstein52);
        }
    }

    bool all_pass = true;
    for (TheoremId id : theorems) {
        AuditReport rep = [&] {
            try {
                return run_audit(id, bd, tol);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }();
        std::ofstream os(fs::path(opts.out_dir) /
                         ("audit_" + std::string(theorem_name(id)) + ".txt"));
        write_header_comment(os, opts);
        write_report(os, rep);
        std::cout << "VERDICT " << theorem_name(id) << " " << verdict_name(rep.verdict)
                  << "\n";
        all_pass = all_pass && rep.verdict == Verdict::Pass;
    }
    return all_pass ? 0 : 1;
}

int cmd_report(const CliOptions& opts) {
    // Concatenates prior verify outputs into one plot-ready error-vs-spacing
    // table; never recomputes.
    std::vector<fs::path> inputs;
    if (!fs::is_directory(opts.out_dir)) {
        throw ConfigError("report: output directory does not exist: " + opts.out_dir);
    }
    for (const auto& entry : fs::directory_iterator(opts.out_dir)) {
        std::string fname = entry.path().filename().string();
        if (fname.rfind("verify_summary", 0) == 0 && fname.size() >= 4 &&
            fname.substr(fname.size() - 4) == ".csv") {
            inputs.push_back(entry.path());
        }
    }
    if (inputs.empty()) {
        throw ConfigError("report: no verify_summary*.csv files in " + opts.out_dir);
    }
    std::sort(inputs.begin(), inputs.end());

    struct Row {
        std::string identity;
        double spacing;
        double max_error;
    };
    std::vector<Row> rows;
    for (const auto& path : inputs) {
        std::ifstream is(path);
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty() || line[0] == '#' || line.rfind("identity,", 0) == 0) continue;
            std::stringstream ss(line);
            std::string identity, spacing, err;
            std::getline(ss, identity, ',');
            std::getline(ss, spacing, ',');
            std::getline(ss, err, ',');
            rows.push_back({identity, std::stod(spacing), std::stod(err)});
        }
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.identity != b.identity) return a.identity < b.identity;
        return a.spacing > b.spacing;
    });

    std::ofstream os(fs::path(opts.out_dir) / "report_error_vs_spacing.csv");
    write_header_comment(os, opts);
    os << "identity,spacing,max_error\n";
    for (const auto& r : rows) {
        os << r.identity << "," << fmt17(r.spacing) << "," << fmt17(r.max_error) << "\n";
    }
    std::cout << "report_error_vs_spacing.csv: " << rows.size() << " rows from "
              << inputs.size() << " summaries\n";
    return 0;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"numerical geometry of vertical graphs in warped-product spaces"};
    app.require_subcommand(1);

    std::string config_path;
    CliOptions opts;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config) {
            sub->add_option("--config", config_path, "run configuration file")->required();
        }
        sub->add_option("--out", opts.out_dir, "output directory")->required();
        sub->add_flag("--no-timestamp", opts.no_timestamp,
                      "suppress timestamp headers (byte-stable outputs)");
    };

    auto* verify = app.add_subcommand("verify", "oracle-vs-formula identity suite");
    add_common(verify, true);
    double spacing_override = 0.0;
    verify->add_option("--spacing-override", spacing_override,
                       "resample the configured box at this spacing");

    auto* solve = app.add_subcommand("solve", "prescribed-mean-curvature solve");
    add_common(solve, true);

    auto* audit = app.add_subcommand("audit", "theorem hypothesis/inequality audits");
    add_common(audit, true);

    auto* report = app.add_subcommand("report", "aggregate prior outputs");
    add_common(report, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        app.exit(e);
        return 2;
    }

    try {
        if (report->parsed()) {
            return cmd_report(opts);
        }
        RunConfig cfg = parse_config_file(config_path);
        if (verify->parsed()) {
            if (verify->count("--spacing-override") > 0) {
                opts.spacing_override = spacing_override;
            }
            return cmd_verify(cfg, opts);
        }
        if (solve->parsed()) {
            return cmd_solve(cfg, opts);
        }
        return cmd_audit(cfg, opts);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const SolveError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("warplab");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace warplab
