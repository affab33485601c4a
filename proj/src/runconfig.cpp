#include "warplab/runconfig.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "warplab/tolerance.hpp"

namespace warplab {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

class KeyValues {
public:
    void insert(const std::string& key, const std::string& value, const std::string& name) {
        if (!kv_.emplace(key, value).second) {
            throw ConfigError(name + ": duplicate key '" + key + "'");
        }
    }

    std::optional<std::string> take(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return std::nullopt;
        std::string v = it->second;
        kv_.erase(it);
        return v;
    }

    std::string require(const std::string& key, const std::string& name) {
        auto v = take(key);
        if (!v) throw ConfigError(name + ": missing required key '" + key + "'");
        return *v;
    }

    void ensure_empty(const std::string& name) const {
        if (!kv_.empty()) {
            throw ConfigError(name + ": unknown key '" + kv_.begin()->first + "'");
        }
    }

private:
    std::map<std::string, std::string> kv_;
};

double to_double(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for '" + key + "': " + v);
    }
}

int to_int(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        int i = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return i;
    } catch (const std::exception&) {
        throw ConfigError("bad integer value for '" + key + "': " + v);
    }
}

std::vector<double> to_doubles(const std::string& v, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(trim(item), key));
    if (out.empty()) throw ConfigError("empty list for '" + key + "'");
    return out;
}

std::vector<int> to_ints(const std::string& v, const std::string& key) {
    std::vector<int> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_int(trim(item), key));
    if (out.empty()) throw ConfigError("empty list for '" + key + "'");
    return out;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& name) {
    KeyValues kv;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(name + ":" + std::to_string(lineno) +
                              ": expected key=value, got '" + line + "'");
        }
        kv.insert(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), name);
    }

    int epsilon = to_int(kv.require("model.epsilon", name), "model.epsilon");
    WarpFamily warp = [&] {
        try {
            return WarpFamily::parse(kv.require("model.warp", name));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(name + ": " + e.what());
        }
    }();
    int fiber_dim = to_int(kv.require("model.fiber_dim", name), "model.fiber_dim");

    std::vector<int> extents = to_ints(kv.require("grid.extents", name), "grid.extents");
    std::vector<double> spacing =
        to_doubles(kv.require("grid.spacing", name), "grid.spacing");
    std::string bnd = kv.require("grid.boundary", name);
    Boundary boundary;
    if (bnd == "periodic") {
        boundary = Boundary::Periodic;
    } else if (bnd == "dirichlet") {
        boundary = Boundary::Dirichlet;
    } else {
        throw ConfigError(name + ": grid.boundary must be periodic or dirichlet");
    }
    std::vector<double> origin;
    if (auto v = kv.take("grid.origin")) origin = to_doubles(*v, "grid.origin");

    double tol_coeff = kDefaultTolCoeff;
    if (auto v = kv.take("tol.coeff")) tol_coeff = to_double(*v, "tol.coeff");

    WarpedModel model = [&] {
        try {
            return WarpedModel(epsilon, warp, fiber_dim);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(name + ": " + e.what());
        }
    }();
    Grid grid = [&] {
        try {
            return Grid(std::move(extents), std::move(spacing), boundary, std::move(origin));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(name + ": " + e.what());
        }
    }();

    Orientation orientation =
        model.lorentzian() ? Orientation::FuturePointing : Orientation::EtaNegative;
    if (auto v = kv.take("orientation")) {
        if (*v != "auto") {
            try {
                orientation = parse_orientation(*v);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(name + ": " + e.what());
            }
        }
    }

    RunConfig cfg(std::move(model), std::move(grid), orientation, tol_coeff);

    std::string kind = kv.require("surface.kind", name);
    if (kind == "slice") {
        cfg.surface_kind = SurfaceKind::Slice;
        cfg.t0 = to_double(kv.require("surface.t0", name), "surface.t0");
    } else if (kind == "perturbed") {
        cfg.surface_kind = SurfaceKind::Perturbed;
        cfg.t0 = to_double(kv.require("surface.t0", name), "surface.t0");
        cfg.amplitude = to_double(kv.require("surface.amplitude", name), "surface.amplitude");
        cfg.mode = to_doubles(kv.require("surface.mode", name), "surface.mode");
    } else if (kind == "file") {
        cfg.surface_kind = SurfaceKind::File;
        cfg.surface_file = kv.require("surface.file", name);
    } else if (kind == "solve") {
        cfg.surface_kind = SurfaceKind::Solve;
        cfg.h_target = to_double(kv.require("surface.solve.h_target", name),
                                 "surface.solve.h_target");
        if (auto v = kv.take("surface.solve.boundary_file")) {
            cfg.boundary_file = *v;
        } else {
            cfg.t0 = to_double(kv.require("surface.solve.boundary_t0", name),
                               "surface.solve.boundary_t0");
            if (auto v2 = kv.take("surface.solve.boundary_amplitude")) {
                cfg.boundary_amplitude = to_double(*v2, "surface.solve.boundary_amplitude");
                cfg.boundary_mode = to_doubles(
                    kv.require("surface.solve.boundary_mode", name),
                    "surface.solve.boundary_mode");
            }
        }
        if (auto v = kv.take("surface.solve.max_iters")) {
            cfg.max_iters = to_int(*v, "surface.solve.max_iters");
        }
        if (auto v = kv.take("surface.solve.newton_tol")) {
            cfg.newton_tol = to_double(*v, "surface.solve.newton_tol");
        }
        if (auto v = kv.take("surface.solve.damping")) {
            cfg.damping = to_double(*v, "surface.solve.damping");
        }
    } else {
        throw ConfigError(name + ": surface.kind must be slice|perturbed|file|solve");
    }

    if (auto v = kv.take("audit.theorems")) {
        if (*v != "all") {
            std::stringstream ss(*v);
            std::string item;
            while (std::getline(ss, item, ',')) {
                try {
                    cfg.audit_theorems.push_back(parse_theorem(trim(item)));
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(name + ": " + e.what());
                }
            }
        }
    }

    kv.ensure_empty(name);
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::stringstream buf;
    buf << is.rdbuf();
    return parse_config_text(buf.str(), path);
}

Grid respaced(const Grid& grid, double spacing) {
    std::vector<int> extents(static_cast<std::size_t>(grid.dim()));
    std::vector<double> sp(static_cast<std::size_t>(grid.dim()));
    for (int a = 0; a < grid.dim(); ++a) {
        auto ua = static_cast<std::size_t>(a);
        if (grid.boundary() == Boundary::Periodic) {
            double length = grid.extent(a) * grid.spacing(a);
            int m = std::max(5, static_cast<int>(std::lround(length / spacing)));
            extents[ua] = m;
            sp[ua] = length / m;
        } else {
            double length = (grid.extent(a) - 1) * grid.spacing(a);
            int m = std::max(5, static_cast<int>(std::lround(length / spacing)) + 1);
            extents[ua] = m;
            sp[ua] = length / (m - 1);
        }
    }
    return Grid(std::move(extents), std::move(sp), grid.boundary(), grid.origin());
}

}  // namespace warplab
