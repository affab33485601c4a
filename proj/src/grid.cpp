#include "warplab/grid.hpp"

#include <sstream>
#include <stdexcept>

namespace warplab {

Grid::Grid(std::vector<int> extents, std::vector<double> spacing, Boundary boundary,
           std::vector<double> origin)
    : extents_(std::move(extents)),
      spacing_(std::move(spacing)),
      origin_(std::move(origin)),
      boundary_(boundary) {
    if (extents_.empty()) {
        throw std::invalid_argument("Grid: dimension must be at least 1");
    }
    if (spacing_.size() == 1 && extents_.size() > 1) {
        spacing_.assign(extents_.size(), spacing_[0]);
    }
    if (spacing_.size() != extents_.size()) {
        throw std::invalid_argument("Grid: spacing/extents size mismatch");
    }
    if (origin_.empty()) {
        origin_.assign(extents_.size(), 0.0);
    }
    if (origin_.size() != extents_.size()) {
        throw std::invalid_argument("Grid: origin/extents size mismatch");
    }
    for (std::size_t a = 0; a < extents_.size(); ++a) {
        if (extents_[a] < 5) {
            throw std::invalid_argument("Grid: extent must be >= 5 on every axis "
                                        "(second-order stencil support)");
        }
        if (!(spacing_[a] > 0.0)) {
            throw std::invalid_argument("Grid: spacing must be positive on every axis");
        }
    }
    strides_.assign(extents_.size(), 1);
    for (int a = static_cast<int>(extents_.size()) - 2; a >= 0; --a) {
        strides_[a] = strides_[a + 1] * extents_[a + 1];
    }
    size_ = static_cast<std::size_t>(strides_[0]) * extents_[0];
}

Grid Grid::periodic_box(int dim, int extent, double length) {
    std::vector<int> e(static_cast<std::size_t>(dim), extent);
    std::vector<double> s(static_cast<std::size_t>(dim), length / extent);
    return Grid(std::move(e), std::move(s), Boundary::Periodic);
}

Grid Grid::dirichlet_box(int dim, int extent, double length) {
    // extent samples spanning [0, length] inclusive.
    std::vector<int> e(static_cast<std::size_t>(dim), extent);
    std::vector<double> s(static_cast<std::size_t>(dim), length / (extent - 1));
    return Grid(std::move(e), std::move(s), Boundary::Dirichlet);
}

double Grid::max_spacing() const {
    double m = spacing_[0];
    for (double s : spacing_) {
        if (s > m) m = s;
    }
    return m;
}

std::vector<int> Grid::unflatten(std::size_t flat) const {
    std::vector<int> multi(extents_.size());
    for (std::size_t a = 0; a < extents_.size(); ++a) {
        multi[a] = static_cast<int>(flat / strides_[a]);
        flat %= static_cast<std::size_t>(strides_[a]);
    }
    return multi;
}

std::size_t Grid::flatten(std::span<const int> multi) const {
    std::size_t flat = 0;
    for (std::size_t a = 0; a < extents_.size(); ++a) {
        flat += static_cast<std::size_t>(multi[a]) * strides_[a];
    }
    return flat;
}

bool Grid::is_interior(std::size_t flat, int margin) const {
    if (boundary_ == Boundary::Periodic) return true;
    for (std::size_t a = 0; a < extents_.size(); ++a) {
        int idx = static_cast<int>(flat / strides_[a]);
        flat %= static_cast<std::size_t>(strides_[a]);
        if (idx < margin || idx >= extents_[a] - margin) return false;
    }
    return true;
}

bool Grid::same_layout(const Grid& other) const {
    return extents_ == other.extents_ && boundary_ == other.boundary_;
}

bool Grid::operator==(const Grid& other) const {
    return extents_ == other.extents_ && spacing_ == other.spacing_ &&
           origin_ == other.origin_ && boundary_ == other.boundary_;
}

std::string Grid::describe() const {
    std::ostringstream os;
    os << "grid(dim=" << dim() << " extents=";
    for (std::size_t a = 0; a < extents_.size(); ++a) {
        if (a) os << "x";
        os << extents_[a];
    }
    os << " boundary=" << (boundary_ == Boundary::Periodic ? "periodic" : "dirichlet")
       << ")";
    return os.str();
}

}  // namespace warplab
