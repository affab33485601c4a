#include "warplab/field.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "warplab/errors.hpp"
#include "warplab/kernels.hpp"

namespace warplab {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ScalarField::ScalarField(Grid grid, double fill)
    : grid_(std::move(grid)), values_(grid_.size(), fill) {}

ScalarField::ScalarField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw std::invalid_argument("ScalarField: sample count does not match grid");
    }
    ensure_finite("ScalarField");
}

ScalarField ScalarField::from_function(
    const Grid& grid, const std::function<double(std::span<const double>)>& f) {
    ScalarField out(grid);
    std::vector<double> x(static_cast<std::size_t>(grid.dim()));
    std::vector<int> multi(static_cast<std::size_t>(grid.dim()), 0);
    for (std::size_t p = 0; p < grid.size(); ++p) {
        for (int a = 0; a < grid.dim(); ++a) {
            x[static_cast<std::size_t>(a)] = grid.coord(a, multi[static_cast<std::size_t>(a)]);
        }
        out.values_[p] = f(x);
        for (int a = grid.dim() - 1; a >= 0; --a) {
            auto ua = static_cast<std::size_t>(a);
            if (++multi[ua] < grid.extent(a)) break;
            multi[ua] = 0;
        }
    }
    out.ensure_finite("ScalarField::from_function");
    return out;
}

double ScalarField::max_abs() const {
    return kernels::max_abs(values_.data(), values_.size());
}

double ScalarField::min() const {
    double m = values_[0];
    for (double v : values_) {
        if (v < m) m = v;
    }
    return m;
}

double ScalarField::max() const {
    double m = values_[0];
    for (double v : values_) {
        if (v > m) m = v;
    }
    return m;
}

double ScalarField::mean() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s / static_cast<double>(values_.size());
}

void ScalarField::ensure_finite(const std::string& label) const {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw PointError(label + ": non-finite sample at " +
                                 format_point(grid_.unflatten(i)),
                             grid_.unflatten(i));
        }
    }
}

void ScalarField::write_csv(std::ostream& os) const {
    os << "# dim=" << grid_.dim() << " extents=";
    for (int a = 0; a < grid_.dim(); ++a) {
        if (a) os << ",";
        os << grid_.extent(a);
    }
    os << " spacing=";
    for (int a = 0; a < grid_.dim(); ++a) {
        if (a) os << ",";
        os << fmt17(grid_.spacing(a));
    }
    os << " boundary=" << (grid_.boundary() == Boundary::Periodic ? "P" : "D") << "\n";
    for (double v : values_) {
        os << fmt17(v) << "\n";
    }
}

void ScalarField::write_csv(const std::string& path) const {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    write_csv(os);
}

ScalarField ScalarField::read_csv(std::istream& is, const std::string& name) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("# dim=", 0) != 0) {
        throw std::runtime_error("field file " + name + ": missing '# dim=' header");
    }
    auto take = [&](const std::string& key) {
        auto pos = header.find(key + "=");
        if (pos == std::string::npos) {
            throw std::runtime_error("field file " + name + ": header lacks " + key);
        }
        pos += key.size() + 1;
        auto end = header.find(' ', pos);
        return header.substr(pos, end == std::string::npos ? end : end - pos);
    };
    auto split_csv = [&](const std::string& s) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) parts.push_back(item);
        return parts;
    };

    int dim = std::stoi(take("dim"));
    auto extent_parts = split_csv(take("extents"));
    auto spacing_parts = split_csv(take("spacing"));
    std::string bnd = take("boundary");
    if (static_cast<int>(extent_parts.size()) != dim ||
        static_cast<int>(spacing_parts.size()) != dim) {
        throw std::runtime_error("field file " + name + ": header extents/spacing arity");
    }
    std::vector<int> extents;
    std::vector<double> spacing;
    for (const auto& s : extent_parts) extents.push_back(std::stoi(s));
    for (const auto& s : spacing_parts) spacing.push_back(std::stod(s));
    Boundary boundary;
    if (bnd == "P") {
        boundary = Boundary::Periodic;
    } else if (bnd == "D") {
        boundary = Boundary::Dirichlet;
    } else {
        throw std::runtime_error("field file " + name + ": boundary must be P or D");
    }

    Grid grid(std::move(extents), std::move(spacing), boundary);
    std::vector<double> values;
    values.reserve(grid.size());
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        char* end = nullptr;
        double v = std::strtod(line.c_str(), &end);
        while (end && *end == ' ') ++end;
        if (end == line.c_str() || (end && *end != '\0' && *end != '\r')) {
            throw std::runtime_error("field file " + name + ": bad sample at line " +
                                     std::to_string(lineno));
        }
        if (!std::isfinite(v)) {
            throw std::runtime_error("field file " + name + ": non-finite sample at line " +
                                     std::to_string(lineno));
        }
        values.push_back(v);
    }
    if (values.size() != grid.size()) {
        throw std::runtime_error("field file " + name + ": expected " +
                                 std::to_string(grid.size()) + " samples, got " +
                                 std::to_string(values.size()));
    }
    return ScalarField(std::move(grid), std::move(values));
}

ScalarField ScalarField::read_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) {
        throw std::runtime_error("cannot open field file: " + path);
    }
    return read_csv(is, path);
}

ComponentField::ComponentField(Grid grid, int components)
    : grid_(std::move(grid)),
      components_(components),
      n_(grid_.size()),
      data_(n_ * static_cast<std::size_t>(components), 0.0) {}

std::span<double> ComponentField::comp(int c) {
    return {data_.data() + static_cast<std::size_t>(c) * n_, n_};
}

std::span<const double> ComponentField::comp(int c) const {
    return {data_.data() + static_cast<std::size_t>(c) * n_, n_};
}

ScalarField ComponentField::component_copy(int c) const {
    auto view = comp(c);
    return ScalarField(grid_, std::vector<double>(view.begin(), view.end()));
}

void ComponentField::ensure_finite(const std::string& label) const {
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (!std::isfinite(data_[i])) {
            std::size_t p = i % n_;
            throw PointError(label + ": non-finite sample at " +
                                 format_point(grid_.unflatten(p)),
                             grid_.unflatten(p));
        }
    }
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid(), b.grid(), "field addition");
    ScalarField out(a.grid());
    kernels::axpby(out.data(), 1.0, a.data(), 1.0, b.data(), a.size());
    return out;
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid(), b.grid(), "field subtraction");
    ScalarField out(a.grid());
    kernels::diff_scaled(out.data(), 1.0, a.data(), b.data(), a.size());
    return out;
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid(), b.grid(), "field product");
    ScalarField out(a.grid());
    kernels::mul(out.data(), a.data(), b.data(), a.size());
    return out;
}

ScalarField scaled(const ScalarField& a, double s) {
    ScalarField out(a.grid());
    kernels::axpby(out.data(), s, a.data(), 0.0, a.data(), a.size());
    return out;
}

double max_abs_difference(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a.grid(), b.grid(), "field comparison");
    return kernels::max_abs_diff(a.data(), b.data(), a.size());
}

double max_abs_difference_interior(const ScalarField& a, const ScalarField& b,
                                   int margin) {
    require_same_grid(a.grid(), b.grid(), "field comparison");
    const Grid& g = a.grid();
    if (g.boundary() == Boundary::Periodic) {
        return max_abs_difference(a, b);
    }
    double m = 0.0;
    for (std::size_t p = 0; p < g.size(); ++p) {
        if (!g.is_interior(p, margin)) continue;
        double d = std::fabs(a[p] - b[p]);
        if (d > m) m = d;
    }
    return m;
}

void require_same_grid(const Grid& a, const Grid& b, const std::string& context) {
    if (!(a == b)) {
        throw std::invalid_argument(context + ": fields live on different grids (" +
                                    a.describe() + " vs " + b.describe() + ")");
    }
}

}  // namespace warplab
