#include "warplab/fd.hpp"

#include <stdexcept>

#include "warplab/kernels.hpp"

namespace warplab {

namespace {

// The sample array decomposes into contiguous blocks of extent*stride values
// per axis; within a block the k-th lattice plane occupies [k*s, (k+1)*s).
// Interior planes therefore form one contiguous run and go through the
// kernels; boundary planes are handled per block.
struct AxisLayout {
    std::size_t blocks;
    std::size_t block_len;
    std::size_t s;  // stride of the axis
    int m;          // extent of the axis
};

AxisLayout axis_layout(const Grid& g, int axis) {
    AxisLayout l;
    l.s = static_cast<std::size_t>(g.stride(axis));
    l.m = g.extent(axis);
    l.block_len = l.s * static_cast<std::size_t>(l.m);
    l.blocks = g.size() / l.block_len;
    return l;
}

}  // namespace

ScalarField partial_derivative(const ScalarField& field, int axis, int order) {
    const Grid& g = field.grid();
    if (axis < 0 || axis >= g.dim()) {
        throw std::invalid_argument("partial_derivative: axis out of range");
    }
    if (order != 1 && order != 2) {
        throw std::invalid_argument("partial_derivative: order must be 1 or 2");
    }

    const AxisLayout l = axis_layout(g, axis);
    const double h = g.spacing(axis);
    const double c1 = 1.0 / (2.0 * h);
    const double c2 = 1.0 / (h * h);

    ScalarField out(g);
    const double* src = field.data();
    double* dst = out.data();

    for (std::size_t b = 0; b < l.blocks; ++b) {
        const std::size_t base = b * l.block_len;
        const double* in = src + base;
        double* o = dst + base;
        const std::size_t s = l.s;
        const std::size_t top = static_cast<std::size_t>(l.m - 1) * s;
        const std::size_t run = static_cast<std::size_t>(l.m - 2) * s;

        if (order == 1) {
            kernels::diff_scaled(o + s, c1, in + 2 * s, in, run);
            if (g.boundary() == Boundary::Periodic) {
                kernels::diff_scaled(o, c1, in + s, in + top, s);
                kernels::diff_scaled(o + top, c1, in, in + top - s, s);
            } else {
                for (std::size_t j = 0; j < s; ++j) {
                    o[j] = c1 * (-3.0 * in[j] + 4.0 * in[s + j] - in[2 * s + j]);
                    o[top + j] = c1 * (3.0 * in[top + j] - 4.0 * in[top - s + j] +
                                       in[top - 2 * s + j]);
                }
            }
        } else {
            kernels::second_diff_scaled(o + s, c2, in + 2 * s, in + s, in, run);
            if (g.boundary() == Boundary::Periodic) {
                kernels::second_diff_scaled(o, c2, in + s, in, in + top, s);
                kernels::second_diff_scaled(o + top, c2, in, in + top, in + top - s, s);
            } else {
                for (std::size_t j = 0; j < s; ++j) {
                    o[j] = c2 * (2.0 * in[j] - 5.0 * in[s + j] + 4.0 * in[2 * s + j] -
                                 in[3 * s + j]);
                    o[top + j] = c2 * (2.0 * in[top + j] - 5.0 * in[top - s + j] +
                                       4.0 * in[top - 2 * s + j] - in[top - 3 * s + j]);
                }
            }
        }
    }

    out.ensure_finite("partial_derivative");
    return out;
}

ScalarField mixed_second_derivative(const ScalarField& field, int axis_i, int axis_j) {
    if (axis_i == axis_j) {
        return partial_derivative(field, axis_i, 2);
    }
    return partial_derivative(partial_derivative(field, axis_j, 1), axis_i, 1);
}

VectorField gradient(const ScalarField& field) {
    const Grid& g = field.grid();
    VectorField out(g);
    for (int a = 0; a < g.dim(); ++a) {
        ScalarField d = partial_derivative(field, a, 1);
        auto dest = out.comp(a);
        for (std::size_t p = 0; p < d.size(); ++p) dest[p] = d[p];
    }
    return out;
}

SymTensorField hessian(const ScalarField& field) {
    const Grid& g = field.grid();
    SymTensorField out(g);
    for (int i = 0; i < g.dim(); ++i) {
        for (int j = i; j < g.dim(); ++j) {
            ScalarField d = mixed_second_derivative(field, i, j);
            auto dest = out.comp(out.pack(i, j));
            for (std::size_t p = 0; p < d.size(); ++p) dest[p] = d[p];
        }
    }
    return out;
}

}  // namespace warplab
