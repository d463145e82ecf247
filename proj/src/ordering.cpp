#include "sorder/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "sorder/errors.hpp"
#include "sorder/format.hpp"
#include "work_dim.hpp"

namespace sorder {

namespace {

constexpr double kPi = std::numbers::pi;

void check_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << what << " must be finite";
        fail(ErrorKind::invalid_parameter, os.str());
    }
}

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(a) + std::abs(b)); }

// [exp(c a^dag)]_{ij} for i >= j, leading dim block (exact).
CMatrix creation_exp(cplx c, int dim) {
    CMatrix l = CMatrix::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        cplx e = 1.0;
        l(j, j) = e;
        for (int i = j + 1; i < dim; ++i) {
            e *= c * std::sqrt(static_cast<double>(i)) / static_cast<double>(i - j);
            l(i, j) = e;
        }
    }
    return l;
}

CMatrix annihilation_exp(cplx c, int dim) { return creation_exp(c, dim).transpose(); }

std::vector<cplx> powers(cplx z, int n) {
    std::vector<cplx> p(static_cast<std::size_t>(n));
    cplx r = 1.0;
    for (int i = 0; i < n; ++i) {
        p[static_cast<std::size_t>(i)] = r;
        r *= z;
    }
    return p;
}

bool is_parity(cplx z) { return std::abs(z + 1.0) <= 1e-15; }

}  // namespace

int work_dim(int dim, cplx center, cplx z) {
    if (z == 0.0) return 1;
    const double root = std::sqrt(static_cast<double>(dim)) + std::abs(center) + 5.0;
    int w = static_cast<int>(std::ceil(root * root));
    const double mag = std::abs(z);
    if (mag < 1.0) {
        const double geo = std::ceil(std::log(1e-17) / std::log(mag)) + 1.0;
        if (geo < w) w = static_cast<int>(geo);
    }
    return std::max(w, 1);
}

SOrderedGaussian::SOrderedGaussian(DisplacedGaussian d) : form_(d) {
    check_finite(d.order, "order");
    if (d.curvature == 0.0) fail(ErrorKind::invalid_parameter, "displaced Gaussian needs nonzero curvature");
}

SOrderedGaussian::SOrderedGaussian(LinearGaussian l) : form_(l) { check_finite(l.order, "order"); }

double SOrderedGaussian::order() const {
    return std::visit([](const auto& f) { return f.order; }, form_);
}

cplx SOrderedGaussian::prefactor() const {
    return std::visit([](const auto& f) { return f.prefactor; }, form_);
}

bool SOrderedGaussian::hermitian_centred(double tol) const {
    if (!is_displaced()) return false;
    const auto& d = displaced();
    return close(d.center_dag, std::conj(d.center), tol);
}

bool SOrderedGaussian::hermitian(double tol) const {
    if (is_displaced()) {
        const auto& d = displaced();
        return std::abs(d.prefactor.imag()) <= tol * std::max(1.0, std::abs(d.prefactor)) &&
               std::abs(d.curvature.imag()) <= tol * std::max(1.0, std::abs(d.curvature)) && hermitian_centred(tol);
    }
    const auto& l = linear();
    return std::abs(l.prefactor.imag()) <= tol * std::max(1.0, std::abs(l.prefactor)) &&
           close(l.c2, std::conj(l.c1), tol);
}

cplx SOrderedGaussian::symbol_at(cplx alpha) const {
    if (is_displaced()) {
        const auto& d = displaced();
        return d.prefactor * std::exp(d.curvature * (std::conj(alpha) - d.center_dag) * (alpha - d.center));
    }
    const auto& l = linear();
    return l.prefactor * std::exp(l.c1 * std::conj(alpha) + l.c2 * alpha);
}

std::string SOrderedGaussian::render() const {
    std::ostringstream os;
    if (is_displaced()) {
        const auto& d = displaced();
        os << format_complex(d.prefactor) << " * S[s=" << format_short(d.order) << "]{ exp( "
           << format_complex(d.curvature) << "*(ad - " << format_complex(d.center_dag) << ")*(a - "
           << format_complex(d.center) << ") ) }";
    } else {
        const auto& l = linear();
        os << format_complex(l.prefactor) << " * S[s=" << format_short(l.order) << "]{ exp( "
           << format_complex(l.c1) << "*ad + " << format_complex(l.c2) << "*a ) }";
    }
    return os.str();
}

SOrderedGaussian reorder(const SOrderedGaussian& g, double target) {
    check_finite(target, "target order");
    if (g.is_displaced()) {
        DisplacedGaussian d = g.displaced();
        const cplx tau = 1.0 + d.curvature * (d.order - target) / 2.0;
        if (std::abs(tau) <= 1e-13) {
            std::ostringstream os;
            os << "no Gaussian representative at order " << format_short(target) << " (tau = 0 for curvature "
               << format_complex(d.curvature) << " at order " << format_short(d.order) << ")";
            fail(ErrorKind::singular_conversion, os.str());
        }
        d.prefactor /= tau;
        d.curvature /= tau;
        d.order = target;
        return d;
    }
    LinearGaussian l = g.linear();
    l.prefactor *= std::exp(l.c1 * l.c2 * (target - l.order) / 2.0);
    l.order = target;
    return l;
}

Realized realize(const SOrderedGaussian& g, int dim) {
    check_dim(dim);
    const SOrderedGaussian n = reorder(g, 1.0);
    if (!n.is_displaced()) {
        const auto& l = n.linear();
        if (close(l.c2, -std::conj(l.c1), 1e-15)) {
            const cplx c = l.prefactor * std::exp(0.5 * std::norm(l.c1));
            return {FockOperator(c * displacement_block(l.c1, dim, dim)), dim, true};
        }
        CMatrix m = l.prefactor * (creation_exp(l.c1, dim) * annihilation_exp(l.c2, dim));
        return {FockOperator(std::move(m)), dim, true};
    }

    const auto& d = n.displaced();
    const cplx z = 1.0 + d.curvature;
    const cplx v = d.center;
    CMatrix m;
    int w = dim;
    if (is_parity(z)) {
        // D(v) (-1)^N D(v)^dag = D(2v) (-1)^N, exact on the leading block.
        m = displacement_block(2.0 * v, dim, dim);
        for (int k = 1; k < dim; k += 2) m.col(k) = -m.col(k);
    } else {
        w = work_dim(dim, v, z);
        const CMatrix db = displacement_block(v, dim, w);
        const auto zp = powers(z, w);
        CMatrix scaled = db;
        for (int k = 0; k < w; ++k) scaled.col(k) *= zp[static_cast<std::size_t>(k)];
        m = scaled * db.adjoint();
    }
    cplx c = d.prefactor;
    if (!n.hermitian_centred()) {
        // :exp[g(a^dag - w)(a - v)]: = e^{g delta v} [D(v) z^N D(v)^dag] e^{-g delta a}
        const cplx delta = d.center_dag - std::conj(v);
        c *= std::exp(d.curvature * delta * v);
        m = m * annihilation_exp(-d.curvature * delta, dim);
    }
    m *= c;
    return {FockOperator(std::move(m)), w, std::abs(z) <= 1.0 + 1e-14};
}

SOrderedGaussian wigner_kernel(PhasePoint alpha, double s) {
    check_finite(s, "s");
    if (!(s < 1.0)) {
        std::ostringstream os;
        os << "wigner kernel needs s < 1, got " << format_short(s);
        fail(ErrorKind::out_of_range, os.str());
    }
    DisplacedGaussian d;
    d.order = 1.0;
    d.prefactor = 1.0 / ((1.0 - s) * kPi);
    d.curvature = -2.0 / (1.0 - s);
    d.center = alpha.value();
    d.center_dag = std::conj(alpha.value());
    return d;
}

SOrderedGaussian coherent_projector(PhasePoint z, double order) {
    check_finite(order, "order");
    if (!(order > -1.0) || order > 1.0) {
        std::ostringstream os;
        os << "coherent projector needs order in (-1, 1], got " << format_short(order);
        fail(ErrorKind::out_of_range, os.str());
    }
    DisplacedGaussian d;
    d.order = order;
    d.prefactor = 2.0 / (1.0 + order);
    d.curvature = -2.0 / (1.0 + order);
    d.center = z.value();
    d.center_dag = std::conj(z.value());
    return d;
}

SOrderedGaussian vacuum_projector(double order) { return coherent_projector({}, order); }

SOrderedGaussian exp_number(cplx lambda, double order) {
    check_finite(order, "order");
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
        fail(ErrorKind::invalid_parameter, "lambda must be finite");
    if (lambda == 0.0) return LinearGaussian{order, 1.0, 0.0, 0.0};
    const cplx el = std::exp(lambda);
    const cplx den = 1.0 + order - order * el + el;
    if (std::abs(den) <= 1e-13) {
        std::ostringstream os;
        os << "exp_number denominator vanishes at lambda=" << format_complex(lambda) << " s=" << format_short(order);
        fail(ErrorKind::singular_parameter, os.str());
    }
    DisplacedGaussian d;
    d.order = order;
    d.prefactor = 2.0 / den;
    d.curvature = 2.0 * (el - 1.0) / den;
    return d;
}

SOrderedGaussian exp_number(double lambda, double order) { return exp_number(cplx(lambda, 0.0), order); }

SOrderedGaussian density_kernel(PhasePoint beta, double s) {
    check_finite(s, "s");
    if (!(s < 1.0) || s < -1.0) {
        std::ostringstream os;
        os << "density kernel needs s in [-1, 1), got " << format_short(s);
        fail(ErrorKind::out_of_range, os.str());
    }
    const cplx b = beta.value();
    DisplacedGaussian d;
    d.order = s;
    d.curvature = 2.0 / (1.0 - s);
    d.prefactor = d.curvature * std::exp(2.0 * std::norm(b));
    d.center = b;
    d.center_dag = -std::conj(b);
    return d;
}

SOrderedGaussian displacement_ordered(PhasePoint beta, double order) {
    return LinearGaussian{order, 1.0, beta.value(), -std::conj(beta.value())};
}

FockOperator fourier_oracle(PhasePoint alpha, double s, const PhaseGrid& grid, int dim, Exec exec) {
    check_dim(dim);
    check_finite(s, "s");
    if (s > 0.0) {
        std::ostringstream os;
        os << "fourier oracle needs s <= 0, got " << format_short(s);
        fail(ErrorKind::out_of_range, os.str());
    }
    const int side = grid.side();
    const cplx a = alpha.value();
    const double w = grid.weight() / (2.0 * kPi * kPi);
    std::vector<CMatrix> rows(static_cast<std::size_t>(side));
    std::vector<double> mass(static_cast<std::size_t>(side)), edge(static_cast<std::size_t>(side));
    for_each_index(static_cast<std::size_t>(side), exec, [&](std::size_t r) {
        CMatrix acc = CMatrix::Zero(dim, dim);
        double m = 0.0, e = 0.0;
        for (int c = 0; c < side; ++c) {
            const cplx b = grid.point(static_cast<int>(r), c).value();
            const double damp = std::exp(0.5 * s * std::norm(b));
            const CMatrix db = displacement_block(b, dim, dim);
            const double size = damp * db.norm();
            m += size;
            if (r == 0 || static_cast<int>(r) + 1 == side || c == 0 || c + 1 == side) e += size;
            acc += (w * damp * std::exp(std::conj(b) * a - b * std::conj(a))) * db;
        }
        rows[r] = std::move(acc);
        mass[r] = m;
        edge[r] = e;
    });
    CMatrix out = CMatrix::Zero(dim, dim);
    double total = 0.0, ring = 0.0;
    for (int r = 0; r < side; ++r) {
        out += rows[static_cast<std::size_t>(r)];
        total += mass[static_cast<std::size_t>(r)];
        ring += edge[static_cast<std::size_t>(r)];
    }
    if (ring > kOracleEdgeRatio * total) {
        std::ostringstream os;
        os << "fourier oracle integrand has not decayed at the grid edge (edge/total = " << ring / total
           << ", limit " << kOracleEdgeRatio << ")";
        fail(ErrorKind::divergence, os.str());
    }
    return FockOperator(std::move(out));
}

cplx kernel_trace(const SOrderedGaussian& g, const FockOperator& x, int reliable_levels) {
    const SOrderedGaussian n = reorder(g, 1.0);
    if (!n.is_displaced() || !n.hermitian_centred())
        fail(ErrorKind::invalid_parameter, "kernel_trace needs a hermitian-centred displaced Gaussian");
    const auto& d = n.displaced();
    const cplx z = 1.0 + d.curvature;
    if (std::abs(z) > 1.0 + 1e-14) fail(ErrorKind::boundedness, "kernel is unbounded in the number basis");
    const int dim = x.dim();
    const cplx v = d.center;

    if (is_parity(z) && reliable_levels <= 0) {
        const CMatrix y = x.mat() * displacement_block(2.0 * v, dim, dim);
        cplx sum = 0.0;
        for (int k = 0; k < dim; ++k) sum += (k % 2 == 0 ? 1.0 : -1.0) * y(k, k);
        return d.prefactor * sum;
    }

    int w = work_dim(dim, v, z);
    if (reliable_levels > 0) w = std::min(w, reliable_levels);
    const CMatrix db = displacement_block(v, dim, w);
    const CMatrix y = x.mat() * db;
    std::vector<cplx> terms(static_cast<std::size_t>(w));
    cplx zn = 1.0;
    for (int k = 0; k < w; ++k) {
        terms[static_cast<std::size_t>(k)] = zn * db.col(k).dot(y.col(k));
        zn *= z;
    }
    if (!is_parity(z)) {
        cplx sum = 0.0;
        for (const cplx& t : terms) sum += t;
        return d.prefactor * sum;
    }
    // Euler summation of the alternating partial sums: repeated averaging
    // removes the polynomial part left by an operator that does not decay.
    std::vector<cplx> partial(terms.size());
    cplx acc = 0.0;
    for (std::size_t k = 0; k < terms.size(); ++k) partial[k] = acc += terms[k];
    const int passes = std::min<int>(8, static_cast<int>(partial.size()) - 1);
    for (int p = 0; p < passes; ++p) {
        for (std::size_t k = 0; k + 1 < partial.size(); ++k) partial[k] = 0.5 * (partial[k] + partial[k + 1]);
        partial.pop_back();
    }
    return d.prefactor * partial.back();
}

}  // namespace sorder
