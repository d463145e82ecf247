#include <doctest.h>

#include <cmath>

#include "oracle_values.hpp"
#include "sorder/errors.hpp"
#include "sorder/fock.hpp"

using namespace sorder;

namespace {

CMatrix basis(int n, int dim) {
    CMatrix v = CMatrix::Zero(dim, 1);
    v(n, 0) = 1.0;
    return v;
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::io;
}

}  // namespace

TEST_CASE("ladder matrices") {
    const int dim = 12;
    const Ladder l = ladder_matrices(dim);
    CHECK((l.a.mat() * basis(1, dim) - basis(0, dim)).norm() == doctest::Approx(0.0));
    const CMatrix n = l.adag.mat() * l.a.mat();
    for (int k = 0; k < dim; ++k) CHECK(n(k, k).real() == doctest::Approx(k));
    CHECK((n - CMatrix(n.diagonal().asDiagonal())).norm() == 0.0);

    CMatrix comm = l.a.mat() * l.adag.mat() - l.adag.mat() * l.a.mat();
    CHECK(comm(dim - 1, dim - 1).real() == doctest::Approx(-(dim - 1)));
    comm(dim - 1, dim - 1) = 1.0;
    CHECK((comm - CMatrix::Identity(dim, dim)).norm() < 1e-13);

    // P = i(a^dag - a)/sqrt 2 and [X, P] = i on the leading block
    const CMatrix xp = l.x.mat() * l.p.mat() - l.p.mat() * l.x.mat();
    CHECK(std::abs(xp(3, 3) - cplx(0.0, 1.0)) < 1e-13);
    CHECK(kind_of([] { ladder_matrices(1); }) == ErrorKind::invalid_dimension);
}

TEST_CASE("coherent vectors") {
    const FockVector v0 = coherent_vector(PhasePoint(0.0, 0.0), 10);
    CHECK(std::abs(v0[0] - 1.0) == 0.0);
    CHECK(v0.amplitudes().tail(9).norm() == 0.0);

    // <-beta|beta> = e^{-2|beta|^2}
    const CVector b = coherent_vector(PhasePoint(1.0, 0.0), 40).amplitudes();
    const CVector mb = coherent_vector(PhasePoint(-1.0, 0.0), 40).amplitudes();
    CHECK(std::abs(mb.dot(b) - std::exp(-2.0)) < 1e-12);

    for (cplx beta : {cplx(0.3, -1.1), cplx(-2.0, 0.0), cplx(1.2, 1.4)}) {
        for (cplx gamma : {cplx(0.0, 0.5), cplx(1.9, -0.2), cplx(-0.6, -1.5)}) {
            const CVector u = coherent_vector(PhasePoint(beta), 40).amplitudes();
            const CVector w = coherent_vector(PhasePoint(gamma), 40).amplitudes();
            const cplx expect = std::exp(-(std::norm(beta) + std::norm(gamma)) / 2.0 + std::conj(beta) * gamma);
            CHECK(std::abs(u.dot(w) - expect) < 1e-12);
        }
    }

    // reported tail covers the missing norm, and <N> = |alpha|^2
    const Ladder l = ladder_matrices(40);
    for (double r : {0.5, 1.5, 2.5, 3.0}) {
        const FockVector v = coherent_vector(PhasePoint(std::polar(r, 0.7)), 40);
        CHECK(1.0 - v.norm() * v.norm() <= v.tail_mass() + 1e-15);
        const cplx n = v.amplitudes().dot(l.adag.mat() * l.a.mat() * v.amplitudes());
        CHECK(std::abs(n - r * r) < 1e-8);
    }
}

TEST_CASE("displacement entries against high-precision values") {
    const CMatrix small = displacement_block(oracle::kBetaSmall, 12, 12);
    for (const auto& e : oracle::kDispSmall) CHECK(std::abs(small(e.m, e.n) - e.value) < 1e-15);
    const CMatrix big = displacement_block(oracle::kBetaBig, 48, 48);
    for (const auto& e : oracle::kDispBig) CHECK(std::abs(big(e.m, e.n) - e.value) < 1e-13 * std::max(1.0, std::abs(e.value)));
}

TEST_CASE("displacement matrix") {
    CHECK(hs_distance(displacement_matrix(PhasePoint(0.0, 0.0), 16), FockOperator::identity(16)) == 0.0);

    const PhasePoint beta(0.7, 0.2);
    const FockOperator d = displacement_matrix(beta, 50);
    const CVector col = d.mat().col(0);
    CHECK((col.head(25) - coherent_vector(beta, 50).amplitudes().head(25)).norm() < 1e-10);

    const FockOperator dm = displacement_matrix(PhasePoint(-0.7, -0.2), 50);
    CHECK(hs_distance(d * dm, FockOperator::identity(50), 25) < 1e-8);

    // against the exponential of the truncated generator on the leading half
    const int dim = 60;
    const Ladder l = ladder_matrices(dim);
    const cplx b(0.9, -0.6);
    const FockOperator gen(b * l.adag.mat() - std::conj(b) * l.a.mat());
    CHECK(hs_distance(expm_oracle(gen), displacement_matrix(PhasePoint(b), dim), dim / 2) < 1e-10);
}

TEST_CASE("thermal and fock densities") {
    const DensityMatrix t0 = thermal_density(0.0, 8);
    CHECK(hs_distance(t0.op(), fock_density(0, 8).op()) == 0.0);
    const DensityMatrix t1 = thermal_density(1.0, 40);
    CHECK(t1.mat()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(t1.mat()(1, 1).real() == doctest::Approx(0.25).epsilon(1e-15));
    for (double nb : {0.1, 0.5, 1.0}) {
        const DensityMatrix t = thermal_density(nb, 40);
        CHECK(std::abs(t.op().trace() - 1.0) < 1e-10);
        CHECK(std::abs(t.op().trace().real() + t.tail_mass() - 1.0) < 1e-14);
    }
    CHECK(kind_of([] { thermal_density(-0.1, 8); }) == ErrorKind::invalid_parameter);
}

TEST_CASE("density matrix validation") {
    CMatrix m = CMatrix::Zero(3, 3);
    m(0, 0) = 0.5;
    m(1, 1) = 0.5;
    CHECK_NOTHROW(DensityMatrix::from_operator(FockOperator(m)));
    CMatrix nh = m;
    nh(0, 1) = 0.1;
    CHECK(kind_of([&] { DensityMatrix::from_operator(FockOperator(nh)); }) == ErrorKind::invalid_state);
    CMatrix neg = m;
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK(kind_of([&] { DensityMatrix::from_operator(FockOperator(neg)); }) == ErrorKind::invalid_state);
    CMatrix half = m * 0.5;
    CHECK(kind_of([&] { DensityMatrix::from_operator(FockOperator(half)); }) == ErrorKind::invalid_state);
    CHECK_NOTHROW(DensityMatrix::from_operator(FockOperator(half), 0.5));
}

TEST_CASE("mixed dimensions are errors") {
    CHECK(kind_of([] { (void)(FockOperator::identity(3) + FockOperator::identity(4)); }) ==
          ErrorKind::dimension_mismatch);
    CHECK(kind_of([] { (void)hs_distance(FockOperator::identity(3), FockOperator::identity(4)); }) ==
          ErrorKind::dimension_mismatch);
}

TEST_CASE("cross elements") {
    const DensityMatrix vac = fock_density(0, 32);
    for (cplx b : {cplx(0.3, 0.1), cplx(-1.0, 1.2), cplx(2.0, 0.0)})
        CHECK(std::abs(cross_element(vac, PhasePoint(b)) - std::exp(-std::norm(b))) < 1e-14);
    const DensityMatrix th = thermal_density(0.7, 40);
    CHECK(std::abs(cross_element(th, PhasePoint(0.0, 0.0)) - th.mat()(0, 0)) == 0.0);
    for (cplx b : {cplx(0.3, 0.1), cplx(-1.0, 1.2), cplx(1.5, -0.5)}) {
        const cplx v = cross_element(th, PhasePoint(b));
        CHECK(v.real() > 0.0);
        CHECK(std::abs(v.imag()) < 1e-15);
        // Gaussian closed form for a thermal state, q = nbar/(1+nbar)
        const double q = 0.7 / 1.7;
        CHECK(v.real() == doctest::Approx((1.0 - q) * std::exp(-(1.0 + q) * std::norm(b))).epsilon(1e-12));
    }
}

TEST_CASE("metrics and exponential oracle") {
    const FockOperator a = displacement_matrix(PhasePoint(0.3, 0.4), 10);
    CHECK(hs_distance(a, a) == 0.0);
    CHECK(hs_distance(expm_oracle(FockOperator::zero(6)), FockOperator::identity(6)) == 0.0);
    const double lambda = -0.7;
    CMatrix d = CMatrix::Zero(20, 20);
    for (int n = 0; n < 20; ++n) d(n, n) = lambda * n;
    const FockOperator e = expm_oracle(FockOperator(d));
    for (int n = 0; n < 20; ++n) CHECK(std::abs(e(n, n) - std::exp(lambda * n)) < 1e-14 * std::max(1.0, std::exp(lambda * n)));
}
