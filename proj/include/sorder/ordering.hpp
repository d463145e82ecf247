#pragma once

#include <string>
#include <variant>

#include "sorder/fock.hpp"
#include "sorder/grid.hpp"
#include "sorder/parallel.hpp"

namespace sorder {

// C * S_order{ exp[ c3 (a^dag - w)(a - v) ] }. The form is hermitian-centred
// when w == conj(v); density kernels are not.
struct DisplacedGaussian {
    double order = 1.0;
    cplx prefactor{1.0, 0.0};
    cplx curvature{0.0, 0.0};
    cplx center{0.0, 0.0};      // v
    cplx center_dag{0.0, 0.0};  // w
};

// C * S_order{ exp[ c1 a^dag + c2 a ] }
struct LinearGaussian {
    double order = 1.0;
    cplx prefactor{1.0, 0.0};
    cplx c1{0.0, 0.0};
    cplx c2{0.0, 0.0};
};

class SOrderedGaussian {
public:
    SOrderedGaussian(DisplacedGaussian d);
    SOrderedGaussian(LinearGaussian l);

    double order() const;
    cplx prefactor() const;
    bool is_displaced() const { return std::holds_alternative<DisplacedGaussian>(form_); }
    const DisplacedGaussian& displaced() const { return std::get<DisplacedGaussian>(form_); }
    const LinearGaussian& linear() const { return std::get<LinearGaussian>(form_); }

    bool hermitian_centred(double tol = 1e-14) const;
    // Symbolic hermiticity: real C and c3 with w = conj(v), or real C with
    // c2 = conj(c1).
    bool hermitian(double tol = 1e-14) const;
    // The c-number function f with this operator = S_order{ f(a, a^dag) }.
    cplx symbol_at(cplx alpha) const;
    std::string render() const;

private:
    std::variant<DisplacedGaussian, LinearGaussian> form_;
};

// Exact conversion to another ordering. Throws singular_conversion when the
// target ordering has no Gaussian representative.
SOrderedGaussian reorder(const SOrderedGaussian& g, double target);

struct Realized {
    FockOperator op;
    int work_dim = 0;
    // False when the operator is unbounded (|1 + c3| > 1 in normal order) and
    // the truncated matrix depends on the cutoff.
    bool bounded = true;
};

// Fock matrix of the operator on the leading `dim` levels. Products of
// displacement blocks run over an adaptive intermediate dimension so the
// leading block is not polluted by truncating inside the product.
Realized realize(const SOrderedGaussian& g, int dim);

SOrderedGaussian wigner_kernel(PhasePoint alpha, double s);
SOrderedGaussian coherent_projector(PhasePoint z, double order);
SOrderedGaussian vacuum_projector(double order);
SOrderedGaussian exp_number(double lambda, double order);
SOrderedGaussian exp_number(cplx lambda, double order);
SOrderedGaussian density_kernel(PhasePoint beta, double s);
SOrderedGaussian displacement_ordered(PhasePoint beta, double order);

// (1/(2 pi^2)) sum_beta h^2 e^{s|beta|^2/2} D(beta) e^{conj(beta) alpha - beta conj(alpha)}
// Throws divergence when the integrand has not decayed at the grid edge.
FockOperator fourier_oracle(PhasePoint alpha, double s, const PhaseGrid& grid, int dim,
                            Exec exec = Exec::parallel);

inline constexpr double kOracleEdgeRatio = 1e-6;

// Tr[G X] for a hermitian-centred displaced Gaussian G that is bounded in
// normal order. Alternating series (1 + c3 = -1) are Euler-summed. When
// `reliable_levels` > 0 only that many terms of the number series are used.
cplx kernel_trace(const SOrderedGaussian& g, const FockOperator& x, int reliable_levels = 0);

}  // namespace sorder
