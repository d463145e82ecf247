#pragma once

#include <vector>

#include "sorder/types.hpp"

namespace sorder {

class FockVector {
public:
    FockVector(CVector amplitudes, double tail_mass = 0.0);

    int dim() const { return static_cast<int>(amp_.size()); }
    const CVector& amplitudes() const { return amp_; }
    cplx operator[](int n) const { return amp_(n); }
    // Norm-squared weight that lives above the cutoff and is not represented.
    double tail_mass() const { return tail_; }
    double norm() const { return amp_.norm(); }

private:
    CVector amp_;
    double tail_;
};

class FockOperator {
public:
    explicit FockOperator(CMatrix m);

    static FockOperator zero(int dim);
    static FockOperator identity(int dim);

    int dim() const { return static_cast<int>(m_.rows()); }
    const CMatrix& mat() const { return m_; }
    cplx operator()(int r, int c) const { return m_(r, c); }

    FockOperator adjoint() const;
    FockOperator leading_block(int n) const;
    cplx trace() const { return m_.trace(); }

    FockOperator& operator+=(const FockOperator& o);
    FockOperator& operator-=(const FockOperator& o);
    FockOperator& operator*=(cplx c);

private:
    CMatrix m_;
};

FockOperator operator+(FockOperator a, const FockOperator& b);
FockOperator operator-(FockOperator a, const FockOperator& b);
FockOperator operator*(const FockOperator& a, const FockOperator& b);
FockOperator operator*(cplx c, FockOperator a);

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;

// Validated state: hermitian, PSD up to kPositivityTol, trace = 1 - tail_mass.
class DensityMatrix {
public:
    static DensityMatrix from_operator(FockOperator rho, double tail_mass = 0.0);
    static DensityMatrix from_pure(const FockVector& psi);

    int dim() const { return op_.dim(); }
    const FockOperator& op() const { return op_; }
    const CMatrix& mat() const { return op_.mat(); }
    double tail_mass() const { return tail_; }

private:
    DensityMatrix(FockOperator op, double tail) : op_(std::move(op)), tail_(tail) {}
    FockOperator op_;
    double tail_;
};

struct Ladder {
    FockOperator a;
    FockOperator adag;
    FockOperator x;  // (a + a^dag) / sqrt 2
    FockOperator p;  // (a - a^dag) / (i sqrt 2)
};

Ladder ladder_matrices(int dim);

FockVector coherent_vector(PhasePoint alpha, int dim);
FockVector fock_vector(int n, int dim);

// <m|D(beta)|n> for m < rows, n < cols.
CMatrix displacement_block(cplx beta, int rows, int cols);
FockOperator displacement_matrix(PhasePoint beta, int dim);

DensityMatrix thermal_density(double nbar, int dim);
DensityMatrix fock_density(int n, int dim);
DensityMatrix coherent_density(PhasePoint alpha, int dim);

// <-beta| rho |beta>
cplx cross_element(const DensityMatrix& rho, PhasePoint beta);

cplx trace(const FockOperator& a);
double hs_norm(const FockOperator& a);
double hs_distance(const FockOperator& a, const FockOperator& b);
double hs_distance(const FockOperator& a, const FockOperator& b, int block);
bool is_hermitian(const FockOperator& a, double tol = kHermitianTol);

// Matrix exponential by scaling and squaring of a Taylor series. Used as the
// independent reference for realized operator exponentials.
FockOperator expm_oracle(const FockOperator& a);

void check_dim(int dim);

}  // namespace sorder
