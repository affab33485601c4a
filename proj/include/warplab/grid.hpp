#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace warplab {

enum class Boundary { Periodic, Dirichlet };

// Uniform rectangular sample lattice over the fiber domain. Row-major
// storage, axis 0 slowest. Extents must be at least 5 per axis so the
// second-order stencils (including the one-sided Dirichlet ones) always fit.
class Grid {
public:
    Grid(std::vector<int> extents, std::vector<double> spacing, Boundary boundary,
         std::vector<double> origin = {});

    // n equally spaced samples per axis on [0, length) with periodic wrap,
    // so that spacing * extent == length exactly matches the torus period.
    static Grid periodic_box(int dim, int extent, double length);
    static Grid dirichlet_box(int dim, int extent, double length);

    int dim() const { return static_cast<int>(extents_.size()); }
    const std::vector<int>& extents() const { return extents_; }
    int extent(int axis) const { return extents_[static_cast<std::size_t>(axis)]; }
    const std::vector<double>& spacing() const { return spacing_; }
    double spacing(int axis) const { return spacing_[static_cast<std::size_t>(axis)]; }
    double max_spacing() const;
    const std::vector<double>& origin() const { return origin_; }
    Boundary boundary() const { return boundary_; }
    std::size_t size() const { return size_; }
    std::ptrdiff_t stride(int axis) const { return strides_[static_cast<std::size_t>(axis)]; }

    double coord(int axis, int index) const {
        return origin_[static_cast<std::size_t>(axis)] +
               spacing_[static_cast<std::size_t>(axis)] * index;
    }

    std::vector<int> unflatten(std::size_t flat) const;
    std::size_t flatten(std::span<const int> multi) const;

    // True at interior points, i.e. multi-index at least `margin` away from
    // every Dirichlet face. On periodic grids every point is interior.
    bool is_interior(std::size_t flat, int margin = 1) const;

    bool same_layout(const Grid& other) const;
    bool operator==(const Grid& other) const;

    std::string describe() const;

private:
    std::vector<int> extents_;
    std::vector<double> spacing_;
    std::vector<double> origin_;
    Boundary boundary_;
    std::vector<std::ptrdiff_t> strides_;
    std::size_t size_;
};

}  // namespace warplab
