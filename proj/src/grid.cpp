#include "sorder/grid.hpp"

#include <cmath>
#include <sstream>

#include "sorder/errors.hpp"

namespace sorder {

PhasePoint PhasePoint::from_xp(double x, double p) { return {x / std::sqrt(2.0), p / std::sqrt(2.0)}; }
double PhasePoint::x() const { return std::sqrt(2.0) * re; }
double PhasePoint::p() const { return std::sqrt(2.0) * im; }
double PhasePoint::abs() const { return std::hypot(re, im); }

PhaseGrid::PhaseGrid(double radius, double step, PhasePoint center)
    : radius_(radius), step_(step), center_(center) {
    if (!(radius > 0.0) || !(step > 0.0) || !std::isfinite(radius) || !std::isfinite(step)) {
        std::ostringstream os;
        os << "grid needs radius > 0 and step > 0, got R=" << radius << " h=" << step;
        fail(ErrorKind::invalid_parameter, os.str());
    }
    const double ratio = radius / step;
    if (ratio > 1e5) fail(ErrorKind::invalid_parameter, "grid too fine");
    half_ = static_cast<int>(std::floor(ratio + 1e-9));
}

PhasePoint PhaseGrid::point(int row, int col) const {
    return {center_.re + coord(col), center_.im + coord(row)};
}

PhasePoint PhaseGrid::point(std::size_t index) const {
    const auto n = static_cast<std::size_t>(side());
    return point(static_cast<int>(index / n), static_cast<int>(index % n));
}

bool PhaseGrid::on_boundary(std::size_t index) const {
    const auto n = static_cast<std::size_t>(side());
    const std::size_t r = index / n, c = index % n;
    return r == 0 || c == 0 || r + 1 == n || c + 1 == n;
}

double PhaseGrid::max_abs() const {
    const double e = half_ * step_;
    return std::hypot(std::abs(center_.re) + e, std::abs(center_.im) + e);
}

}  // namespace sorder
