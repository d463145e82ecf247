#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sorder/errors.hpp"
#include "sorder/ordering.hpp"

using namespace sorder;

namespace {

constexpr double kPi = std::numbers::pi;

FockOperator parity(int dim) {
    CMatrix m = CMatrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) m(n, n) = n % 2 == 0 ? 1.0 : -1.0;
    return FockOperator(m);
}

double coeff_distance(const SOrderedGaussian& a, const SOrderedGaussian& b) {
    REQUIRE(a.is_displaced() == b.is_displaced());
    if (a.is_displaced()) {
        const auto &x = a.displaced(), &y = b.displaced();
        return std::max({std::abs(x.order - y.order), std::abs(x.prefactor - y.prefactor),
                         std::abs(x.curvature - y.curvature), std::abs(x.center - y.center),
                         std::abs(x.center_dag - y.center_dag)});
    }
    const auto &x = a.linear(), &y = b.linear();
    return std::max({std::abs(x.order - y.order), std::abs(x.prefactor - y.prefactor), std::abs(x.c1 - y.c1),
                     std::abs(x.c2 - y.c2)});
}

}  // namespace

TEST_CASE("coherent projector converts to normal and Weyl order") {
    for (double s : {-0.9, -0.3, 0.0, 0.4, 1.0}) {
        const cplx z(0.8, -0.25);
        const auto n = reorder(coherent_projector(PhasePoint(z), s), 1.0).displaced();
        CHECK(std::abs(n.prefactor - 1.0) < 1e-14);
        CHECK(std::abs(n.curvature + 1.0) < 1e-14);
        CHECK(std::abs(n.center - z) < 1e-15);
        const auto w = reorder(coherent_projector(PhasePoint(z), s), 0.0).displaced();
        CHECK(std::abs(w.prefactor - 2.0) < 1e-14);
        CHECK(std::abs(w.curvature + 2.0) < 1e-14);
    }
    // already normal ordered
    const auto one = coherent_projector(PhasePoint(0.3, 0.0), 1.0).displaced();
    CHECK(one.prefactor == cplx(1.0));
    CHECK(one.curvature == cplx(-1.0));
}

TEST_CASE("identity conversion leaves the form unchanged") {
    const auto g = reorder(wigner_kernel(PhasePoint(0.4, -0.2), -0.35), 0.2);
    CHECK(coeff_distance(reorder(g, g.order()), g) == 0.0);
}

TEST_CASE("reorder composes: two steps equal one") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> ord(-1.0, 1.0), amp(-1.5, 1.5), lam(-0.8, 0.8);
    int tried = 0;
    for (int i = 0; i < 400; ++i) {
        const double s0 = ord(rng), s1 = ord(rng), s2 = ord(rng);
        const bool displaced = i % 2 == 0;
        const SOrderedGaussian g = displaced ? SOrderedGaussian(DisplacedGaussian{s0, {amp(rng), amp(rng)},
                                                                                 {lam(rng), lam(rng)},
                                                                                 {amp(rng), amp(rng)},
                                                                                 {amp(rng), amp(rng)}})
                                             : SOrderedGaussian(LinearGaussian{s0, {amp(rng), amp(rng)},
                                                                               {amp(rng), amp(rng)},
                                                                               {amp(rng), amp(rng)}});
        try {
            const auto two = reorder(reorder(g, s1), s2);
            const auto one = reorder(g, s2);
            ++tried;
            CHECK(coeff_distance(two, one) < 1e-9 * (1.0 + std::abs(one.prefactor())));
            // and back again
            CHECK(coeff_distance(reorder(one, s0), g) < 1e-9 * (1.0 + std::abs(g.prefactor())));
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::singular_conversion);
        }
    }
    CHECK(tried > 300);
}

TEST_CASE("singular conversion") {
    try {
        reorder(coherent_projector(PhasePoint(0.5, 0.5), 0.2), -1.0);
        FAIL("expected singular_conversion");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::singular_conversion);
    }
}

TEST_CASE("vacuum projector") {
    for (double s : {-0.5, 0.0, 0.7, 1.0}) {
        const FockOperator v = realize(vacuum_projector(s), 24).op;
        CMatrix expect = CMatrix::Zero(24, 24);
        expect(0, 0) = 1.0;
        CHECK(hs_distance(v, FockOperator(expect)) < 1e-12);
    }
    CHECK(coeff_distance(reorder(vacuum_projector(0.3), 1.0), coherent_projector(PhasePoint(0.0, 0.0), 1.0)) < 1e-15);
    const auto w = reorder(vacuum_projector(0.3), 0.0).displaced();
    CHECK(std::abs(w.prefactor - 2.0) < 1e-14);
    CHECK(std::abs(w.curvature + 2.0) < 1e-14);
    CHECK(coeff_distance(coherent_projector(PhasePoint(0.0, 0.0), -0.4), vacuum_projector(-0.4)) < 1e-15);
}

TEST_CASE("coherent projector realizes the outer product") {
    const int dim = 40;
    const CVector v = coherent_vector(PhasePoint(0.8, 0.0), dim).amplitudes();
    const FockOperator outer(v * v.adjoint());
    for (double s : {-0.85, -0.5, 0.0, 0.5, 1.0})
        CHECK(hs_distance(realize(coherent_projector(PhasePoint(0.8, 0.0), s), dim).op, outer) < 1e-10);
}

TEST_CASE("wigner kernel") {
    const int dim = 48;
    // s = 0 at the origin is parity / pi
    const FockOperator k0 = realize(wigner_kernel(PhasePoint(0.0, 0.0), 0.0), dim).op;
    CHECK(hs_distance(k0, (1.0 / kPi) * parity(dim)) < 1e-14);

    // s = -1 is the coherent projector over 2 pi
    const PhasePoint a(0.5, 0.3);
    const FockOperator k = realize(wigner_kernel(a, -1.0), dim).op;
    CHECK(hs_distance((2.0 * kPi) * k, coherent_density(a, dim).op()) < 1e-10);

    // trace 1/(2 pi) where the truncated trace converges
    for (double s : {-0.8, -0.5}) {
        const FockOperator w = realize(wigner_kernel(PhasePoint(0.3, -0.4), s), dim).op;
        CHECK(std::abs(w.trace() - 1.0 / (2.0 * kPi)) < 1e-6);
        CHECK(is_hermitian(w));
    }
    try {
        wigner_kernel(a, 1.0);
        FAIL("expected out_of_range");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::out_of_range);
    }
}

TEST_CASE("wigner kernel agrees with the displacement integral") {
    const PhaseGrid grid(5.0, 0.1);
    const FockOperator o = fourier_oracle(PhasePoint(0.0, 0.0), -1.0, grid, 16, Exec::serial);
    CMatrix expect = CMatrix::Zero(16, 16);
    expect(0, 0) = 1.0;
    CHECK(hs_distance((2.0 * kPi) * o, FockOperator(expect)) < 1e-4);
    // a radius the s = -0.5 integrand has decayed on
    const PhaseGrid wide(8.0, 0.1);
    const PhasePoint a(0.5, 0.3);
    CHECK(hs_distance(fourier_oracle(a, -0.5, wide, 16, Exec::serial), realize(wigner_kernel(a, -0.5), 16).op) < 1e-6);
    try {
        fourier_oracle(a, -0.5, grid, 16, Exec::serial);
        FAIL("expected divergence");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::divergence);
    }
}

TEST_CASE("exp(lambda N)") {
    const int dim = 48;
    CMatrix d = CMatrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) d(n, n) = 0.3 * n;
    CHECK(hs_distance(realize(exp_number(0.3, 0.4), dim).op, expm_oracle(FockOperator(d)), dim / 2) < 1e-8);

    for (double l : {-0.5, 0.2, 0.5}) {
        const double e = std::exp(l);
        const auto w = exp_number(l, 0.0).displaced();
        CHECK(std::abs(w.prefactor - 2.0 / (1.0 + e)) < 1e-15);
        CHECK(std::abs(w.curvature - 2.0 * (e - 1.0) / (1.0 + e)) < 1e-15);
        const auto an = exp_number(l, -1.0).displaced();
        CHECK(std::abs(an.prefactor - 1.0 / e) < 1e-15);
        CHECK(std::abs(an.curvature - (1.0 - 1.0 / e)) < 1e-15);
    }

    const SOrderedGaussian id = exp_number(0.0, 0.3);
    CHECK(hs_distance(realize(id, 10).op, FockOperator::identity(10)) < 1e-15);

    // 1 + s - s e^lambda + e^lambda = 0 at s = 0, lambda = i pi
    try {
        exp_number(cplx(0.0, kPi), 0.0);
        FAIL("expected singular_parameter");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::singular_parameter);
    }
}

TEST_CASE("density kernel") {
    const PhasePoint b(0.4, -0.3);
    const auto w = density_kernel(b, 0.0).displaced();
    CHECK(std::abs(w.curvature - 2.0) < 1e-15);
    CHECK(std::abs(w.center - b.value()) < 1e-15);
    CHECK(density_kernel(PhasePoint(0.0, 0.0), 0.0).displaced().prefactor == cplx(2.0));
    try {
        density_kernel(b, 1.0);
        FAIL("expected out_of_range");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::out_of_range);
    }
}

TEST_CASE("ordered displacement") {
    const PhasePoint b(0.6, 0.2);
    for (double order : {-1.0, 0.0, 0.5, 1.0}) {
        const FockOperator d = realize(displacement_ordered(b, order), 40).op;
        const FockOperator expect = std::exp(order * b.norm2() / 2.0) * displacement_matrix(b, 40);
        CHECK(hs_distance(d, expect, 20) < 1e-10);
    }
}

TEST_CASE("kernel trace matches the explicit trace") {
    const int dim = 32;
    const DensityMatrix rho = thermal_density(0.4, dim);
    for (double s : {0.0, 0.5}) {
        const auto k = wigner_kernel(PhasePoint(0.3, 0.1), -s);
        const cplx explicit_trace = (realize(k, dim).op * rho.op()).trace();
        CHECK(std::abs(kernel_trace(k, rho.op()) - explicit_trace) < 1e-12);
    }
}

TEST_CASE("render") {
    CHECK(exp_number(0.0, 0.3).render() == "1 * S[s=0.3]{ exp( 0*ad + 0*a ) }");
    CHECK(coherent_projector(PhasePoint(0.5, 0.0), 1.0).render() == "1 * S[s=1]{ exp( -1*(ad - 0.5)*(a - 0.5) ) }");
}
