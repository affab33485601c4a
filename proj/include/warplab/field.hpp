#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "warplab/grid.hpp"

namespace warplab {

// Grid-sampled real function. The universal numeric currency of the engine:
// every geometric quantity is one of these (or a small bundle of them).
// Fields are treated as immutable values once handed out of a builder; all
// samples are finite after any public operation.
class ScalarField {
public:
    explicit ScalarField(Grid grid, double fill = 0.0);
    ScalarField(Grid grid, std::vector<double> values);

    static ScalarField from_function(const Grid& grid,
                                     const std::function<double(std::span<const double>)>& f);

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }
    const double* data() const { return values_.data(); }
    double* data() { return values_.data(); }

    double max_abs() const;
    double min() const;
    double max() const;
    double mean() const;

    // Throws PointError naming the first non-finite sample.
    void ensure_finite(const std::string& label) const;

    // CSV round trip, `# dim=... extents=... spacing=... boundary=...` header
    // followed by row-major samples at 17 significant digits.
    void write_csv(const std::string& path) const;
    void write_csv(std::ostream& os) const;
    static ScalarField read_csv(const std::string& path);
    static ScalarField read_csv(std::istream& is, const std::string& name);

private:
    Grid grid_;
    std::vector<double> values_;
};

// Shared layout for multi-component fields: each component is a contiguous
// block of grid.size() samples so the kernels see flat lanes.
class ComponentField {
public:
    ComponentField(Grid grid, int components);

    const Grid& grid() const { return grid_; }
    int components() const { return components_; }
    std::span<double> comp(int c);
    std::span<const double> comp(int c) const;
    double at(int c, std::size_t i) const {
        return data_[static_cast<std::size_t>(c) * n_ + i];
    }
    double& at(int c, std::size_t i) {
        return data_[static_cast<std::size_t>(c) * n_ + i];
    }

    ScalarField component_copy(int c) const;
    void ensure_finite(const std::string& label) const;

protected:
    Grid grid_;
    int components_;
    std::size_t n_;
    std::vector<double> data_;
};

// n components, index = fiber axis.
class VectorField : public ComponentField {
public:
    explicit VectorField(Grid grid)
        : ComponentField(grid, grid.dim()) {}
};

// Symmetric rank-2 field, n(n+1)/2 packed components, (i,j) with i <= j.
class SymTensorField : public ComponentField {
public:
    explicit SymTensorField(Grid grid)
        : ComponentField(grid, grid.dim() * (grid.dim() + 1) / 2) {}

    int pack(int i, int j) const {
        if (i > j) std::swap(i, j);
        int n = grid_.dim();
        return i * n - i * (i - 1) / 2 + (j - i);
    }
    double at_ij(int i, int j, std::size_t p) const { return at(pack(i, j), p); }
    double& at_ij(int i, int j, std::size_t p) { return at(pack(i, j), p); }
};

// General (mixed-index) rank-2 field, n*n components, index = i*n + j.
class TensorField : public ComponentField {
public:
    explicit TensorField(Grid grid)
        : ComponentField(grid, grid.dim() * grid.dim()) {}

    double at_ij(int i, int j, std::size_t p) const {
        return at(i * grid_.dim() + j, p);
    }
    double& at_ij(int i, int j, std::size_t p) {
        return at(i * grid_.dim() + j, p);
    }
};

// Pointwise helpers (kernel-backed where it matters).
ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField scaled(const ScalarField& a, double s);
double max_abs_difference(const ScalarField& a, const ScalarField& b);

// max |a-b| restricted to points at least `margin` rows from every Dirichlet
// face (everything on a periodic grid).
double max_abs_difference_interior(const ScalarField& a, const ScalarField& b,
                                   int margin);

void require_same_grid(const Grid& a, const Grid& b, const std::string& context);

}  // namespace warplab
