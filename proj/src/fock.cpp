#include "sorder/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sorder/errors.hpp"

namespace sorder {

void check_dim(int dim) {
    if (dim < 2 || dim > kMaxDim) {
        std::ostringstream os;
        os << "dimension must be in [2, " << kMaxDim << "], got " << dim;
        fail(ErrorKind::invalid_dimension, os.str());
    }
}

namespace {

void check_same(const FockOperator& a, const FockOperator& b, const char* op) {
    if (a.dim() != b.dim()) {
        std::ostringstream os;
        os << op << ": dimension mismatch " << a.dim() << " vs " << b.dim();
        fail(ErrorKind::dimension_mismatch, os.str());
    }
}

// Poisson tail sum_{n >= dim} e^{-x} x^n / n!
double poisson_tail(double x, int dim) {
    if (x == 0.0) return 0.0;
    double term = std::exp(-x);
    for (int n = 1; n <= dim; ++n) term *= x / n;
    double sum = 0.0;
    for (int n = dim; n < dim + 100000; ++n) {
        sum += term;
        if (n > x && term < 1e-18 * sum) break;
        term *= x / (n + 1);
    }
    return sum;
}

}  // namespace

FockVector::FockVector(CVector amplitudes, double tail_mass) : amp_(std::move(amplitudes)), tail_(tail_mass) {
    if (amp_.size() < 1) fail(ErrorKind::invalid_dimension, "empty Fock vector");
    if (!amp_.allFinite() || !std::isfinite(tail_) || tail_ < 0.0)
        fail(ErrorKind::invalid_parameter, "Fock vector has non-finite entries");
}

FockOperator::FockOperator(CMatrix m) : m_(std::move(m)) {
    if (m_.rows() < 1 || m_.rows() != m_.cols()) fail(ErrorKind::invalid_dimension, "operator matrix must be square");
    if (!m_.allFinite()) fail(ErrorKind::invalid_parameter, "operator matrix has non-finite entries");
}

FockOperator FockOperator::zero(int dim) {
    check_dim(dim);
    return FockOperator(CMatrix::Zero(dim, dim));
}

FockOperator FockOperator::identity(int dim) {
    check_dim(dim);
    return FockOperator(CMatrix::Identity(dim, dim));
}

FockOperator FockOperator::adjoint() const { return FockOperator(m_.adjoint()); }

FockOperator FockOperator::leading_block(int n) const {
    if (n < 1 || n > dim()) fail(ErrorKind::invalid_dimension, "block larger than operator");
    return FockOperator(m_.topLeftCorner(n, n));
}

FockOperator& FockOperator::operator+=(const FockOperator& o) {
    check_same(*this, o, "+");
    m_ += o.m_;
    return *this;
}

FockOperator& FockOperator::operator-=(const FockOperator& o) {
    check_same(*this, o, "-");
    m_ -= o.m_;
    return *this;
}

FockOperator& FockOperator::operator*=(cplx c) {
    m_ *= c;
    return *this;
}

FockOperator operator+(FockOperator a, const FockOperator& b) { return a += b; }
FockOperator operator-(FockOperator a, const FockOperator& b) { return a -= b; }
FockOperator operator*(cplx c, FockOperator a) { return a *= c; }
FockOperator operator*(const FockOperator& a, const FockOperator& b) {
    check_same(a, b, "*");
    return FockOperator(a.mat() * b.mat());
}

DensityMatrix DensityMatrix::from_operator(FockOperator rho, double tail_mass) {
    check_dim(rho.dim());
    if (!(tail_mass >= 0.0) || tail_mass > 1.0) fail(ErrorKind::invalid_state, "tail mass outside [0, 1]");
    const CMatrix& m = rho.mat();
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kHermitianTol) {
        std::ostringstream os;
        os << "density matrix not hermitian (max asymmetry " << asym << ")";
        fail(ErrorKind::invalid_state, os.str());
    }
    const cplx tr = m.trace();
    if (std::abs(tr.real() + tail_mass - 1.0) > 1e-9 || std::abs(tr.imag()) > kHermitianTol) {
        std::ostringstream os;
        os << "density matrix trace " << tr.real() << " inconsistent with tail mass " << tail_mass;
        fail(ErrorKind::invalid_state, os.str());
    }
    CMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (lo < -kPositivityTol) {
        std::ostringstream os;
        os << "density matrix not positive (min eigenvalue " << lo << ")";
        fail(ErrorKind::invalid_state, os.str());
    }
    return DensityMatrix(std::move(rho), tail_mass);
}

DensityMatrix DensityMatrix::from_pure(const FockVector& psi) {
    const CVector& v = psi.amplitudes();
    CMatrix m = v * v.adjoint();
    // Exact hermiticity; the outer product is hermitian only up to rounding.
    m = 0.5 * (m + m.adjoint()).eval();
    return from_operator(FockOperator(std::move(m)), psi.tail_mass());
}

Ladder ladder_matrices(int dim) {
    check_dim(dim);
    CMatrix a = CMatrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    CMatrix ad = a.adjoint();
    const double r = 1.0 / std::sqrt(2.0);
    CMatrix x = r * (a + ad);
    CMatrix p = cplx(0.0, r) * (ad - a);
    return {FockOperator(a), FockOperator(ad), FockOperator(x), FockOperator(p)};
}

FockVector coherent_vector(PhasePoint alpha, int dim) {
    check_dim(dim);
    const cplx a = alpha.value();
    const double x = alpha.norm2();
    CVector amp(dim);
    amp(0) = std::exp(-0.5 * x);
    for (int n = 1; n < dim; ++n) amp(n) = amp(n - 1) * a / std::sqrt(static_cast<double>(n));
    return FockVector(std::move(amp), poisson_tail(x, dim));
}

FockVector fock_vector(int n, int dim) {
    check_dim(dim);
    if (n < 0 || n >= dim) {
        std::ostringstream os;
        os << "Fock level " << n << " outside dimension " << dim;
        fail(ErrorKind::invalid_dimension, os.str());
    }
    CVector amp = CVector::Zero(dim);
    amp(n) = 1.0;
    return FockVector(std::move(amp));
}

// Entries along each diagonal k follow from the normalized associated Laguerre
// recurrence; the usual column recurrence loses all digits for |beta| > 5.
CMatrix displacement_block(cplx beta, int rows, int cols) {
    if (rows < 1 || cols < 1) fail(ErrorKind::invalid_dimension, "empty displacement block");
    CMatrix d = CMatrix::Zero(rows, cols);
    const double x = std::norm(beta);
    const int kmax = std::max(rows, cols);
    cplx g = std::exp(-0.5 * x);
    for (int k = 0; k < kmax; ++k) {
        if (k > 0) g *= beta / std::sqrt(static_cast<double>(k));
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        double fprev = 0.0;
        double f = 1.0;
        for (int n = 0;; ++n) {
            const bool lower = n + k < rows && n < cols;
            const bool upper = k > 0 && n < rows && n + k < cols;
            if (!lower && !upper) break;
            const cplx val = g * f;
            if (lower) d(n + k, n) = val;
            if (upper) d(n, n + k) = sign * std::conj(val);
            const double r = std::sqrt((n + 1.0) / (n + k + 1.0));
            const double rp = n > 0 ? std::sqrt(static_cast<double>(n) / (n + k)) : 0.0;
            const double next = ((2.0 * n + 1.0 + k - x) * f * r - (n + k) * fprev * r * rp) / (n + 1.0);
            fprev = f;
            f = next;
        }
    }
    return d;
}

FockOperator displacement_matrix(PhasePoint beta, int dim) {
    check_dim(dim);
    return FockOperator(displacement_block(beta.value(), dim, dim));
}

DensityMatrix thermal_density(double nbar, int dim) {
    check_dim(dim);
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
        std::ostringstream os;
        os << "thermal occupation must be >= 0, got " << nbar;
        fail(ErrorKind::invalid_parameter, os.str());
    }
    CMatrix m = CMatrix::Zero(dim, dim);
    const double q = nbar / (1.0 + nbar);
    double p = 1.0 / (1.0 + nbar);
    for (int n = 0; n < dim; ++n) {
        m(n, n) = p;
        p *= q;
    }
    return DensityMatrix::from_operator(FockOperator(std::move(m)), std::pow(q, dim));
}

DensityMatrix fock_density(int n, int dim) { return DensityMatrix::from_pure(fock_vector(n, dim)); }

DensityMatrix coherent_density(PhasePoint alpha, int dim) {
    return DensityMatrix::from_pure(coherent_vector(alpha, dim));
}

cplx cross_element(const DensityMatrix& rho, PhasePoint beta) {
    const int dim = rho.dim();
    const CVector plus = coherent_vector(beta, dim).amplitudes();
    const CVector minus = coherent_vector(PhasePoint(-beta.value()), dim).amplitudes();
    return minus.dot(rho.mat() * plus);
}

cplx trace(const FockOperator& a) { return a.trace(); }

double hs_norm(const FockOperator& a) { return a.mat().norm(); }

double hs_distance(const FockOperator& a, const FockOperator& b) {
    check_same(a, b, "hs_distance");
    return (a.mat() - b.mat()).norm();
}

double hs_distance(const FockOperator& a, const FockOperator& b, int block) {
    check_same(a, b, "hs_distance");
    if (block < 1 || block > a.dim()) fail(ErrorKind::invalid_dimension, "block larger than operator");
    return (a.mat().topLeftCorner(block, block) - b.mat().topLeftCorner(block, block)).norm();
}

bool is_hermitian(const FockOperator& a, double tol) {
    return (a.mat() - a.mat().adjoint()).cwiseAbs().maxCoeff() <= tol;
}

FockOperator expm_oracle(const FockOperator& a) {
    const CMatrix& m = a.mat();
    const int n = a.dim();
    const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
    const CMatrix b = m / std::ldexp(1.0, squarings);
    CMatrix sum = CMatrix::Identity(n, n);
    CMatrix term = CMatrix::Identity(n, n);
    for (int k = 1; k < 60; ++k) {
        term = (term * b) / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() <= 1e-18 * sum.cwiseAbs().maxCoeff()) break;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return FockOperator(std::move(sum));
}

}  // namespace sorder
