#pragma once

#include <functional>
#include <vector>

#include "sorder/grid.hpp"
#include "sorder/parallel.hpp"

namespace sorder::detail {

// Weights w(t) on a grid centred at the origin.
struct Table {
    PhaseGrid grid;
    std::vector<cplx> w;
};

// out(o) = sum_t w(t) exp(i k (Re o Im t - Im o Re t)), evaluated on a whole
// grid by splitting the phase into a row and a column factor.
std::vector<cplx> transform(const Table& table, double k, const PhaseGrid& out, Exec exec);
cplx transform_at(const Table& table, double k, cplx o);

// Fills table weights row by row on the disk |t| <= radius.
Table make_table(double radius, double step, Exec exec, const std::function<cplx(cplx)>& weight);
// Same, with the flat table index passed along.
Table make_table(double radius, double step, Exec exec, const std::function<cplx(cplx, std::size_t)>& weight);

struct Decay {
    double radius = 0.0;
    double edge = 0.0;  // envelope beyond `radius`, relative to the peak
    bool decayed = false;
    // Integral of 2r env(r)/env(radius) over r > radius for a Gaussian fitted to
    // the last unit of the scan; radius^2 when the fit does not decay.
    double spread = 0.0;
};

// Envelope probed along 16 rays. The radius is the first one after which the
// envelope stays below rel * peak over a unit-length window. Rounding noise
// amplified by growing weights can keep a computed envelope from ever getting
// there; then the radius of the smallest window is used if that is below
// accept * peak.
Decay decay_radius(const std::function<double(cplx)>& envelope, double rel, double accept, double cap);

// Midpoint step that resolves a phase-space integrand with the given highest
// angular frequency.
double step_for_frequency(double omega);

}  // namespace sorder::detail
