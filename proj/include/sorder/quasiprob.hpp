#pragma once

#include <iosfwd>
#include <memory>
#include <vector>

#include "sorder/fock.hpp"
#include "sorder/grid.hpp"
#include "sorder/parallel.hpp"

namespace sorder {

namespace detail {
struct Table;
}

// Values of the s-ordered symbol P(alpha, s) = 2 pi Tr[Delta_{-s}(alpha) rho]
// on a grid, row-major in grid order.
struct SymbolField {
    PhaseGrid grid;
    double s = 0.0;
    std::vector<cplx> values;
    // Points whose value could not be resolved to working precision. They are
    // excluded from reconstructions.
    std::vector<unsigned char> masked;
};

// Evaluates P(alpha, s) = 2 pi Tr[Delta_{-s}(alpha) X] for |alpha| <= alpha_max.
// s >= 0 traces against the bounded kernel in the number basis; s < 0 goes
// through the characteristic function Tr[X D(beta)], which decays for states.
class SymbolEvaluator {
public:
    SymbolEvaluator(const FockOperator& x, double s, double alpha_max, Exec exec = Exec::parallel);

    cplx operator()(PhasePoint alpha) const;
    std::vector<cplx> on_grid(const PhaseGrid& grid, Exec exec = Exec::parallel) const;
    double s() const { return s_; }

private:
    FockOperator x_;
    double s_;
    double alpha_max_;
    std::shared_ptr<const detail::Table> table_;
};

cplx s_symbol(const DensityMatrix& rho, double s, PhasePoint alpha);
cplx s_symbol(const FockOperator& x, double s, PhasePoint alpha);
SymbolField s_symbol_field(const DensityMatrix& rho, double s, const PhaseGrid& grid,
                           Exec exec = Exec::parallel);

struct Reconstruction {
    FockOperator rho;  // hermitized
    cplx trace;
    double asymmetry = 0.0;  // max |rho - rho^dag| before hermitizing
    std::size_t masked_points = 0;
};

inline constexpr double kGridEdgeRatio = 1e-6;

// rho = 2 sum_alpha h^2 Delta_s(alpha) P(alpha, s), for s <= 0.
Reconstruction reconstruct_from_symbol(const SymbolField& field, int dim, Exec exec = Exec::parallel);

// The symbol assembled from the coherent-state elements <-beta|rho|beta> and
// the density kernel, evaluated on `grid`.
SymbolField elements_symbol_field(const DensityMatrix& rho, double s, const PhaseGrid& grid,
                                  Exec exec = Exec::parallel);
Reconstruction reconstruct_from_elements(const DensityMatrix& rho, double s, const PhaseGrid& grid,
                                         int dim, Exec exec = Exec::parallel);

// Glauber-Sudarshan P at z from the elements <-beta|rho|beta> on `grid`.
// Throws p_singular when the integrand does not decay inside the grid.
cplx mehta_p(const DensityMatrix& rho, PhasePoint z, const PhaseGrid& grid);
// P on every point of `z_grid`, with the beta sum over `grid`.
SymbolField mehta_p_field(const DensityMatrix& rho, const PhaseGrid& z_grid, const PhaseGrid& grid,
                          Exec exec = Exec::parallel);
inline constexpr double kMehtaEdgeRatio = 1e-5;

// max |2 sum h^2 Delta_s(alpha) - 1| over the leading `block` entries. The
// leading block of a realization does not depend on dim beyond `block`.
double completeness_deviation(double s, const PhaseGrid& grid, int dim, int block,
                              Exec exec = Exec::parallel);

// 4 pi sum h^2 Tr[Delta_{-s}(alpha') Delta_s(alpha_i)] f(alpha_i) with
// f(alpha) = exp(-|alpha - alpha'|^2 / width^2); ideally f(alpha') = 1.
struct ProbeResult {
    cplx value;
    double expected = 1.0;
};
ProbeResult orthogonality_probe(double s, PhasePoint alpha_prime, double width, const PhaseGrid& grid,
                                int dim, Exec exec = Exec::parallel);

// Weyl-ordered x^m p^n on the leading `dim` levels.
FockOperator weyl_monomial(int m, int n, int dim);
// Wigner symbol of an operator that is only known on a truncated space; the
// number series stops where the displaced levels leave the space.
cplx weyl_symbol_truncated(const FockOperator& x, PhasePoint alpha);

void write_csv(std::ostream& os, const SymbolField& field);

}  // namespace sorder
