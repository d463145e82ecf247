#pragma once

#include <cstddef>

#include "sorder/types.hpp"

namespace sorder {

// Square midpoint grid centred on `center` with points center + h*(i, j),
// |i|, |j| <= floor(R/h). Index order is row-major: rows run over the
// imaginary part, columns over the real part, both ascending.
class PhaseGrid {
public:
    PhaseGrid(double radius, double step, PhasePoint center = {});

    double radius() const { return radius_; }
    double step() const { return step_; }
    double weight() const { return step_ * step_; }
    PhasePoint center() const { return center_; }

    int half() const { return half_; }
    int side() const { return 2 * half_ + 1; }
    std::size_t size() const { return static_cast<std::size_t>(side()) * side(); }

    double coord(int k) const { return (k - half_) * step_; }
    PhasePoint point(int row, int col) const;
    PhasePoint point(std::size_t index) const;
    bool on_boundary(std::size_t index) const;
    // Largest |alpha| on the grid.
    double max_abs() const;

private:
    double radius_;
    double step_;
    PhasePoint center_;
    int half_;
};

}  // namespace sorder
