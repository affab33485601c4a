#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace warplab {

// Error anchored at a grid point; `point` is the multi-index of the first
// offending sample.
class PointError : public std::runtime_error {
public:
    PointError(const std::string& what, std::vector<int> point)
        : std::runtime_error(what), point_(std::move(point)) {}

    const std::vector<int>& point() const { return point_; }

private:
    std::vector<int> point_;
};

class SolveError : public std::runtime_error {
public:
    SolveError(const std::string& what, double final_residual, int iterations)
        : std::runtime_error(what),
          final_residual_(final_residual),
          iterations_(iterations) {}

    double final_residual() const { return final_residual_; }
    int iterations() const { return iterations_; }

private:
    double final_residual_;
    int iterations_;
};

inline std::string format_point(const std::vector<int>& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p[i]);
    }
    s += ")";
    return s;
}

}  // namespace warplab
