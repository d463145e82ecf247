#include "sorder/quasiprob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "sorder/errors.hpp"
#include "sorder/format.hpp"
#include "sorder/ordering.hpp"
#include "transform.hpp"

namespace sorder {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 2.220446049250313e-16;

// Beta grids stop where the integrand envelope falls below kDecay of its
// peak; a noise floor above that is tolerated up to the accept level.
constexpr double kDecay = 1e-12;
constexpr double kCharAccept = 1e-8;
constexpr double kElementAccept = 1e-6;
constexpr double kBetaCap = 14.0;
// A point is kept when its estimated error is below kMaskRatio of the largest
// reliable value or below kMaskLocal of its own value.
constexpr double kMaskRatio = 1e-7;
constexpr double kMaskLocal = 0.5;
constexpr double kEpsLong = std::numeric_limits<long double>::epsilon();

void check_symbol_s(double s) {
    if (!std::isfinite(s) || !(s > -1.0) || s > 1.0) {
        std::ostringstream os;
        os << "symbol needs s in (-1, 1], got " << format_short(s);
        fail(ErrorKind::out_of_range, os.str());
    }
}

void check_reconstruct_s(double s) {
    if (!std::isfinite(s) || s < -1.0 || s > 1.0) {
        std::ostringstream os;
        os << "reconstruction needs s in [-1, 0], got " << format_short(s);
        fail(ErrorKind::out_of_range, os.str());
    }
    if (s > 0.0) {
        std::ostringstream os;
        os << "Delta_s is unbounded for s = " << format_short(s) << " > 0; reconstruction is not realizable";
        fail(ErrorKind::boundedness, os.str());
    }
}

cplx trace_with_displacement(const CMatrix& x, cplx beta) {
    const int dim = static_cast<int>(x.rows());
    const CMatrix d = displacement_block(beta, dim, dim);
    // Tr[X D] = sum_{mn} X_nm D_mn
    return (x.transpose().array() * d.array()).sum();
}

double edge_ratio(const SymbolField& f) {
    double peak = 0.0, edge = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        if (!f.masked.empty() && f.masked[i]) continue;
        const double v = std::abs(f.values[i]);
        peak = std::max(peak, v);
        if (f.grid.on_boundary(i)) edge = std::max(edge, v);
    }
    return peak > 0.0 ? edge / peak : 0.0;
}

// Applies the e^{c |alpha|^2} prefactor of a transform and masks the points
// where that factor has amplified the absolute error `err` of the sum.
void amplify_and_mask(SymbolField& f, double pref, double c, double err) {
    std::vector<double> noise(f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const double amp = pref * std::exp(c * f.grid.point(i).norm2());
        f.values[i] *= amp;
        noise[i] = amp * err;
    }
    double ref = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        if (noise[i] < kMaskRatio) ref = std::max(ref, std::abs(f.values[i]));
    f.masked.assign(f.values.size(), 0);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        if (noise[i] > kMaskRatio * ref && noise[i] > kMaskLocal * std::abs(f.values[i])) f.masked[i] = 1;
}

// <-beta|rho|beta> summed in long double; the alternating sum cancels badly
// once |beta|^2 exceeds a few tens. `mag` receives the sum of term moduli.
cplx cross_element_long(const CMatrix& rho, cplx beta, double& mag) {
    using ld = long double;
    using lc = std::complex<ld>;
    const int dim = static_cast<int>(rho.rows());
    const lc b(beta.real(), beta.imag());
    std::vector<lc> u(static_cast<std::size_t>(dim));
    u[0] = std::exp(-0.5L * std::norm(b));
    for (int n = 1; n < dim; ++n) u[static_cast<std::size_t>(n)] = u[static_cast<std::size_t>(n - 1)] * b / std::sqrt(ld(n));
    lc total = 0.0L;
    ld absum = 0.0L;
    for (int m = 0; m < dim; ++m) {
        // <-beta|m> = conj((-beta)^m ...) = (-1)^m conj(u_m)
        const lc left = (m % 2 == 0 ? 1.0L : -1.0L) * std::conj(u[static_cast<std::size_t>(m)]);
        lc row = 0.0L;
        ld rabs = 0.0L;
        for (int n = 0; n < dim; ++n) {
            const lc r(rho(m, n).real(), rho(m, n).imag());
            const lc t = r * u[static_cast<std::size_t>(n)];
            row += t;
            rabs += std::abs(t);
        }
        total += left * row;
        absum += std::abs(left) * rabs;
    }
    mag = static_cast<double>(absum);
    return {static_cast<double>(total.real()), static_cast<double>(total.imag())};
}

struct ElementTable {
    detail::Table table;
    double err = 0.0;  // absolute error budget of transforms of the table
};

// Table of w(beta) = (h^2/pi) e^{g |beta|^2} <-beta|rho|beta> with its error
// budget: rounding of each element, rounding of the transform and the part of
// the integrand beyond the table.
ElementTable element_table(const CMatrix& rho, double g, double radius, double step, double edge, double spread,
                           Exec exec) {
    const double w = step * step / kPi;
    const PhaseGrid shape(radius, step);
    std::vector<double> mags(shape.size(), 0.0);
    ElementTable et{detail::make_table(radius, step, exec,
                                       [&](cplx b, std::size_t i) {
                                           const double amp = w * std::exp(g * std::norm(b));
                                           const cplx v = amp * cross_element_long(rho, b, mags[i]);
                                           mags[i] *= amp;
                                           return v;
                                       }),
                    0.0};
    double rounding = 0.0, absum = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < mags.size(); ++i) {
        rounding += 4.0 * static_cast<double>(kEpsLong) * mags[i];
        absum += std::abs(et.table.w[i]);
        peak = std::max(peak, std::abs(et.table.w[i]) / w);
    }
    const double tail = edge * peak * std::max(1.0, spread);
    et.err = rounding + 16.0 * kEps * absum + tail;
    return et;
}

}  // namespace

SymbolEvaluator::SymbolEvaluator(const FockOperator& x, double s, double alpha_max, Exec exec)
    : x_(x), s_(s), alpha_max_(alpha_max) {
    check_symbol_s(s);
    if (!(alpha_max >= 0.0) || !std::isfinite(alpha_max)) fail(ErrorKind::invalid_parameter, "alpha_max must be >= 0");
    if (s >= 0.0) return;

    const CMatrix& m = x_.mat();
    const double t = -s;
    auto envelope = [&](cplx b) { return std::exp(0.5 * t * std::norm(b)) * std::abs(trace_with_displacement(m, b)); };
    const detail::Decay decay = detail::decay_radius(envelope, kDecay, kCharAccept, kBetaCap);
    const double radius = decay.radius;
    if (!decay.decayed) {
        std::ostringstream os;
        os << "characteristic function does not decay fast enough for s = " << format_short(s)
           << " within |beta| <= " << kBetaCap;
        fail(ErrorKind::truncation, os.str());
    }
    const double omega = 2.0 * alpha_max + 2.0 * std::sqrt(2.0 * x_.dim() + 1.0);
    const double h = detail::step_for_frequency(omega);
    const double w = h * h / kPi;
    table_ = std::make_shared<const detail::Table>(detail::make_table(radius, h, exec, [&](cplx b) {
        return w * std::exp(0.5 * t * std::norm(b)) * trace_with_displacement(m, b);
    }));
}

cplx SymbolEvaluator::operator()(PhasePoint alpha) const {
    if (alpha.abs() > alpha_max_ * (1.0 + 1e-12) + 1e-12) {
        std::ostringstream os;
        os << "|alpha| = " << alpha.abs() << " beyond evaluator range " << alpha_max_;
        fail(ErrorKind::out_of_range, os.str());
    }
    if (table_) return detail::transform_at(*table_, -2.0, alpha.value());
    return 2.0 * kPi * kernel_trace(wigner_kernel(alpha, -s_), x_);
}

std::vector<cplx> SymbolEvaluator::on_grid(const PhaseGrid& grid, Exec exec) const {
    if (grid.max_abs() > alpha_max_ * (1.0 + 1e-12) + 1e-12) fail(ErrorKind::out_of_range, "grid beyond evaluator range");
    if (table_) return detail::transform(*table_, -2.0, grid, exec);
    std::vector<cplx> values(grid.size());
    const auto n = static_cast<std::size_t>(grid.side());
    for_each_index(n, exec, [&](std::size_t r) {
        for (std::size_t c = 0; c < n; ++c) values[r * n + c] = (*this)(grid.point(r * n + c));
    });
    return values;
}

cplx s_symbol(const FockOperator& x, double s, PhasePoint alpha) {
    return SymbolEvaluator(x, s, alpha.abs(), Exec::serial)(alpha);
}

cplx s_symbol(const DensityMatrix& rho, double s, PhasePoint alpha) { return s_symbol(rho.op(), s, alpha); }

SymbolField s_symbol_field(const DensityMatrix& rho, double s, const PhaseGrid& grid, Exec exec) {
    SymbolEvaluator ev(rho.op(), s, grid.max_abs(), exec);
    SymbolField f{grid, s, ev.on_grid(grid, exec), {}};
    f.masked.assign(f.values.size(), 0);
    return f;
}

Reconstruction reconstruct_from_symbol(const SymbolField& field, int dim, Exec exec) {
    check_dim(dim);
    check_reconstruct_s(field.s);
    if (field.values.size() != field.grid.size()) fail(ErrorKind::invalid_parameter, "field size does not match grid");
    const double ratio = edge_ratio(field);
    if (ratio > kGridEdgeRatio) {
        std::ostringstream os;
        os << "symbol has not decayed at the grid edge (edge/max = " << ratio << ", limit " << kGridEdgeRatio << ")";
        fail(ErrorKind::grid_too_small, os.str());
    }
    const auto n = static_cast<std::size_t>(field.grid.side());
    const double w = 2.0 * field.grid.weight();
    std::vector<CMatrix> rows(n);
    for_each_index(n, exec, [&](std::size_t r) {
        CMatrix acc = CMatrix::Zero(dim, dim);
        for (std::size_t c = 0; c < n; ++c) {
            const std::size_t i = r * n + c;
            if (!field.masked.empty() && field.masked[i]) continue;
            const cplx v = field.values[i];
            if (v == 0.0) continue;
            acc += (w * v) * realize(wigner_kernel(field.grid.point(i), field.s), dim).op.mat();
        }
        rows[r] = std::move(acc);
    });
    CMatrix sum = CMatrix::Zero(dim, dim);
    for (const auto& m : rows) sum += m;
    Reconstruction out{FockOperator(0.5 * (sum + sum.adjoint())), 0.0, 0.0, 0};
    out.asymmetry = (sum - sum.adjoint()).cwiseAbs().maxCoeff();
    out.trace = sum.trace();
    if (!field.masked.empty())
        out.masked_points = static_cast<std::size_t>(std::count(field.masked.begin(), field.masked.end(), 1));
    return out;
}

SymbolField elements_symbol_field(const DensityMatrix& rho, double s, const PhaseGrid& grid, Exec exec) {
    check_reconstruct_s(s);
    const double c3 = 2.0 / (1.0 - s);
    // Kernel exponent c3 (conj(alpha) + conj(beta))(alpha - beta) splits into
    // e^{c3|alpha|^2} e^{-c3|beta|^2} and a phase; the kernel prefactor carries e^{2|beta|^2}.
    const double g = 2.0 - c3;
    const CMatrix& m = rho.mat();
    auto envelope = [&](cplx b) {
        double mag = 0.0;
        return std::exp(g * std::norm(b)) * std::abs(cross_element_long(m, b, mag));
    };
    const detail::Decay decay = detail::decay_radius(envelope, kDecay, kElementAccept, kBetaCap);
    if (!decay.decayed) {
        std::ostringstream os;
        os << "coherent-element integrand does not decay at s = " << format_short(s) << " (floor " << decay.edge
           << " of peak)";
        if (s <= -1.0) {
            os << "; the P function of this state is singular";
            fail(ErrorKind::p_singular, os.str());
        }
        fail(ErrorKind::divergence, os.str());
    }
    const double h = detail::step_for_frequency(2.0 * c3 * grid.max_abs() + 2.0 * std::sqrt(2.0 * rho.dim() + 1.0));
    const ElementTable et = element_table(m, g, decay.radius, h, decay.edge, decay.spread, exec);
    SymbolField f{grid, s, detail::transform(et.table, -2.0 * c3, grid, exec), {}};
    amplify_and_mask(f, c3, c3, et.err);
    return f;
}

Reconstruction reconstruct_from_elements(const DensityMatrix& rho, double s, const PhaseGrid& grid, int dim, Exec exec) {
    return reconstruct_from_symbol(elements_symbol_field(rho, s, grid, exec), dim, exec);
}

namespace {

ElementTable mehta_table(const DensityMatrix& rho, const PhaseGrid& grid, Exec exec) {
    if (grid.center().re != 0.0 || grid.center().im != 0.0)
        fail(ErrorKind::invalid_parameter, "beta grid must be centred at the origin");
    ElementTable et = element_table(rho.mat(), 1.0, grid.radius(), grid.step(), 0.0, 0.0, exec);
    // Outer ring of the disk, and the ring one unit further in for the decay rate.
    const double r_out = grid.radius();
    const double r_in = r_out - 1.0;
    auto ring_max = [&](double r) {
        double m = 0.0;
        for (std::size_t i = 0; i < et.table.w.size(); ++i) {
            const double r2 = et.table.grid.point(i).norm2();
            if (r2 > (r - grid.step()) * (r - grid.step()) && r2 <= r * r) m = std::max(m, std::abs(et.table.w[i]));
        }
        return m;
    };
    double peak = 0.0;
    for (const cplx& w : et.table.w) peak = std::max(peak, std::abs(w));
    const double edge = ring_max(r_out);
    if (!(edge <= kMehtaEdgeRatio * peak)) {
        std::ostringstream os;
        os << "P-singular: |e^{|beta|^2} <-beta|rho|beta>| at the grid edge is " << (peak > 0 ? edge / peak : 0.0)
           << " of its peak (limit " << kMehtaEdgeRatio << "); P exists only as a distribution";
        fail(ErrorKind::p_singular, os.str());
    }
    double spread = r_out * r_out;
    const double inside = r_in > 0.0 ? ring_max(r_in) : 0.0;
    if (edge > 0.0 && inside > edge) spread = std::min(spread, (r_out * r_out - r_in * r_in) / std::log(inside / edge));
    // Table weights carry h^2/pi; the integrand beyond the disk is about edge * spread in those units.
    et.err += edge * kPi / grid.weight() * spread;
    return et;
}

}  // namespace

cplx mehta_p(const DensityMatrix& rho, PhasePoint z, const PhaseGrid& grid) {
    const ElementTable et = mehta_table(rho, grid, Exec::serial);
    return std::exp(z.norm2()) * detail::transform_at(et.table, -2.0, z.value());
}

SymbolField mehta_p_field(const DensityMatrix& rho, const PhaseGrid& z_grid, const PhaseGrid& grid, Exec exec) {
    const ElementTable et = mehta_table(rho, grid, exec);
    SymbolField f{z_grid, -1.0, detail::transform(et.table, -2.0, z_grid, exec), {}};
    amplify_and_mask(f, 1.0, 1.0, et.err);
    return f;
}

double completeness_deviation(double s, const PhaseGrid& grid, int dim, int block, Exec exec) {
    check_dim(dim);
    check_reconstruct_s(s);
    if (block < 1 || block > dim) fail(ErrorKind::invalid_dimension, "block must be in [1, dim]");
    const int rows_dim = std::max(block, 2);
    const auto n = static_cast<std::size_t>(grid.side());
    std::vector<CMatrix> rows(n);
    for_each_index(n, exec, [&](std::size_t r) {
        CMatrix acc = CMatrix::Zero(rows_dim, rows_dim);
        for (std::size_t c = 0; c < n; ++c) acc += realize(wigner_kernel(grid.point(r * n + c), s), rows_dim).op.mat();
        rows[r] = std::move(acc);
    });
    CMatrix sum = CMatrix::Zero(rows_dim, rows_dim);
    for (const auto& m : rows) sum += m;
    sum *= 2.0 * grid.weight();
    sum -= CMatrix::Identity(rows_dim, rows_dim);
    return sum.topLeftCorner(block, block).cwiseAbs().maxCoeff();
}

ProbeResult orthogonality_probe(double s, PhasePoint alpha_prime, double width, const PhaseGrid& grid, int dim,
                                Exec exec) {
    check_dim(dim);
    if (!std::isfinite(s) || !(s > -1.0) || !(s < 1.0)) {
        std::ostringstream os;
        os << "probe needs s in (-1, 1), got " << format_short(s);
        fail(ErrorKind::out_of_range, os.str());
    }
    if (!(width > 0.0)) fail(ErrorKind::invalid_parameter, "probe width must be > 0");
    const cplx ap = alpha_prime.value();
    auto f = [&](PhasePoint a) { return std::exp(-std::norm(a.value() - ap) / (width * width)); };
    const auto n = static_cast<std::size_t>(grid.side());

    if (s <= 0.0) {
        // Smear the bounded kernel first, then read off its symbol at alpha'.
        std::vector<CMatrix> rows(n);
        for_each_index(n, exec, [&](std::size_t r) {
            CMatrix acc = CMatrix::Zero(dim, dim);
            for (std::size_t c = 0; c < n; ++c) {
                const PhasePoint a = grid.point(r * n + c);
                const double fa = f(a);
                if (fa < 1e-300) continue;
                acc += fa * realize(wigner_kernel(a, s), dim).op.mat();
            }
            rows[r] = std::move(acc);
        });
        CMatrix sum = CMatrix::Zero(dim, dim);
        for (const auto& m : rows) sum += m;
        const FockOperator smeared(grid.weight() * sum);
        return {2.0 * SymbolEvaluator(smeared, s, alpha_prime.abs(), exec)(alpha_prime), f(alpha_prime)};
    }

    // s > 0: Delta_s is unbounded, Delta_{-s}(alpha') is not. Pair the
    // characteristic function of the latter with the transform of f.
    const CMatrix a = realize(wigner_kernel(alpha_prime, -s), dim).op.mat();
    detail::Table ftab{grid, std::vector<cplx>(grid.size())};
    for (std::size_t i = 0; i < grid.size(); ++i) ftab.w[i] = grid.weight() * f(grid.point(i));
    if (grid.center().re != 0.0 || grid.center().im != 0.0)
        fail(ErrorKind::invalid_parameter, "probe grid must be centred at the origin");
    // f-hat decays like exp(-width^2 |beta|^2).
    const double radius = std::min(kBetaCap, std::sqrt(40.0) / width);
    const double h = detail::step_for_frequency(2.0 * std::abs(ap) + 2.0 * std::sqrt(2.0 * dim + 1.0));
    const PhaseGrid bgrid(radius, h);
    const std::vector<cplx> fhat = detail::transform(ftab, 2.0, bgrid, exec);
    const auto nb = static_cast<std::size_t>(bgrid.side());
    std::vector<cplx> partial(nb);
    for_each_index(nb, exec, [&](std::size_t r) {
        cplx acc = 0.0;
        for (std::size_t c = 0; c < nb; ++c) {
            const cplx b = bgrid.point(r * nb + c).value();
            acc += std::exp(0.5 * s * std::norm(b)) * trace_with_displacement(a, b) * fhat[r * nb + c];
        }
        partial[r] = acc;
    });
    cplx total = 0.0;
    for (const cplx& p : partial) total += p;
    return {(2.0 / kPi) * bgrid.weight() * total, f(alpha_prime)};
}

FockOperator weyl_monomial(int m, int n, int dim) {
    check_dim(dim);
    if (m < 0 || n < 0) fail(ErrorKind::invalid_parameter, "monomial powers must be >= 0");
    if (m + n > 6) {
        std::ostringstream os;
        os << "monomial degree " << m + n << " exceeds 6";
        fail(ErrorKind::truncation, os.str());
    }
    // Degree-k products of tridiagonal matrices are exact on the leading block
    // when built k levels larger.
    const int big = dim + m + n;
    const Ladder l = ladder_matrices(big);
    const CMatrix& x = l.x.mat();
    const CMatrix& p = l.p.mat();
    CMatrix pn = CMatrix::Identity(big, big);
    for (int i = 0; i < n; ++i) pn = pn * p;
    std::vector<CMatrix> xpow(static_cast<std::size_t>(m + 1), CMatrix::Identity(big, big));
    for (int i = 1; i <= m; ++i) xpow[static_cast<std::size_t>(i)] = xpow[static_cast<std::size_t>(i - 1)] * x;
    CMatrix sum = CMatrix::Zero(big, big);
    double binom = 1.0;
    for (int k = 0; k <= m; ++k) {
        sum += binom * (xpow[static_cast<std::size_t>(m - k)] * pn * xpow[static_cast<std::size_t>(k)]);
        binom = binom * (m - k) / (k + 1);
    }
    sum /= std::ldexp(1.0, m);
    return FockOperator(sum.topLeftCorner(dim, dim));
}

cplx weyl_symbol_truncated(const FockOperator& x, PhasePoint alpha) {
    const double root = std::sqrt(static_cast<double>(x.dim())) - alpha.abs() - 3.0;
    if (root < 2.0) {
        std::ostringstream os;
        os << "dimension " << x.dim() << " too small for a truncated symbol at |alpha| = " << alpha.abs();
        fail(ErrorKind::truncation, os.str());
    }
    const int levels = static_cast<int>(std::floor(root * root));
    return 2.0 * kPi * kernel_trace(wigner_kernel(alpha, 0.0), x, levels);
}

void write_csv(std::ostream& os, const SymbolField& field) {
    os << "re_alpha,im_alpha,re_value,im_value\n";
    for (std::size_t i = 0; i < field.values.size(); ++i) {
        const PhasePoint a = field.grid.point(i);
        os << format_real(a.re) << ',' << format_real(a.im) << ',' << format_real(field.values[i].real()) << ','
           << format_real(field.values[i].imag()) << '\n';
    }
}

}  // namespace sorder
