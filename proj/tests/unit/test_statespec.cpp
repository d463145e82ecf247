#include <doctest.h>

#include <cmath>
#include <string>

#include "sorder/errors.hpp"
#include "sorder/statespec.hpp"

using namespace sorder;
using namespace sorder::spec;

namespace {

ParseError parse_error(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("accepted: " << text);
    return ParseError(ParseError::Kind::syntax, 0, "", "");
}

void check_roundtrip(const std::string& text) {
    INFO(text);
    const StateExpr e = parse(text).expr;
    const std::string r = render(e);
    const ParseResult again = parse(r);
    CHECK(same_structure(e, again.expr));
    CHECK(render(again.expr) == r);
    CHECK(again.warnings.empty());
}

}  // namespace

TEST_CASE("atoms") {
    CHECK(std::holds_alternative<Vacuum>(parse("vacuum").expr));
    CHECK(std::get<Fock>(parse("fock(7)").expr).n == 7);
    CHECK(std::get<Coherent>(parse("coherent( 1 - 0.5i )").expr).c == cplx(1.0, -0.5));
    CHECK(std::get<Coherent>(parse("coherent(-2)").expr).c == cplx(-2.0, 0.0));
    CHECK(std::get<Thermal>(parse("thermal(0.8)").expr).nbar == 0.8);
    const Cat c = std::get<Cat>(parse("cat(1.5+2i,-)").expr);
    CHECK(c.c == cplx(1.5, 2.0));
    CHECK(c.sign == -1);
}

TEST_CASE("mixtures") {
    const ParseResult r = parse("0.3*coherent(1+0.5i) + 0.7*thermal(0.8)");
    CHECK(r.warnings.empty());
    const auto& m = *std::get<std::shared_ptr<const Mix>>(r.expr);
    REQUIRE(m.parts.size() == 2);
    CHECK(m.parts[0].weight == 0.3);
    CHECK(std::get<Coherent>(m.parts[0].state).c == cplx(1.0, 0.5));
    CHECK(m.parts[1].weight == 0.7);
    CHECK(std::get<Thermal>(m.parts[1].state).nbar == 0.8);

    const ParseResult n = parse("2*vacuum + 6*fock(1)");
    CHECK(n.warnings.size() == 1);
    const auto& mn = *std::get<std::shared_ptr<const Mix>>(n.expr);
    CHECK(mn.parts[0].weight == 0.25);
    CHECK(mn.parts[1].weight == 0.75);

    const ParseResult three = parse("vacuum + fock(1) + fock(2)");
    const auto& eq = *std::get<std::shared_ptr<const Mix>>(three.expr);
    double sum = 0.0;
    for (const auto& p : eq.parts) sum += p.weight;
    CHECK(std::abs(sum - 1.0) < 1e-9);

    // parentheses around a single atom do not make a mixture
    CHECK(std::holds_alternative<Vacuum>(parse("((vacuum))").expr));
}

TEST_CASE("round trip") {
    for (const char* t : {"vacuum", "fock(0)", "fock(12)", "coherent(0)", "coherent(1e-3-2.5E+1i)", "thermal(0)",
                          "thermal(1.25)", "cat(0.3-0.1i,+)", "cat(2,-)", "0.3*coherent(1+0.5i) + 0.7*thermal(0.8)",
                          "0.5*(0.5*fock(1)+0.5*fock(2)) + 0.5*vacuum", "1*vacuum", "vacuum + cat(0+1i,+)",
                          "0.1*(0.2*(0.3*fock(1) + 0.7*fock(2)) + 0.8*vacuum) + 0.9*thermal(3)"})
        check_roundtrip(t);
}

TEST_CASE("error positions") {
    struct Case {
        const char* text;
        ParseError::Kind kind;
        std::size_t offset;
    };
    using K = ParseError::Kind;
    for (const Case& c : {Case{"thermal(-1)", K::semantic, 8}, Case{"", K::syntax, 0}, Case{"   ", K::syntax, 3},
                          Case{"fock(1.5)", K::syntax, 6}, Case{"fock(-1)", K::syntax, 5},
                          Case{"coherent(1+2)", K::syntax, 12}, Case{"coherent(1+i)", K::syntax, 11}, Case{"coherent(2i)", K::syntax, 10},
                          Case{"cat(1,*)", K::syntax, 6}, Case{"cat(1)", K::syntax, 5},
                          Case{"vacuum +", K::syntax, 8}, Case{"0*vacuum", K::semantic, 0},
                          Case{"(((((((((vacuum)))))))))", K::semantic, 8}, Case{"squeezed(1)", K::syntax, 0},
                          Case{"vacuum)", K::syntax, 6}, Case{"fock(2", K::syntax, 6}, Case{"0.5 vacuum", K::syntax, 4},
                          Case{"0.5*vacuum + -0.5*fock(1)", K::syntax, 13}}) {
        INFO(c.text);
        const ParseError e = parse_error(c.text);
        CHECK(e.kind() == c.kind);
        CHECK(e.offset() == c.offset);
        CHECK(e.offset() <= std::string(c.text).size());
    }
    const ParseError e = parse_error("thermal(-1)");
    CHECK(e.found() == "-");
    CHECK(std::string(e.what()).find("offset 8") != std::string::npos);
}

TEST_CASE("depth limit") {
    CHECK_NOTHROW(parse("((((((((vacuum))))))))"));
    CHECK(parse_error("(((((((((vacuum)))))))))").kind() == ParseError::Kind::semantic);
}

TEST_CASE("density matrices") {
    const DensityMatrix vac = build_density(parse("vacuum").expr, 8);
    CHECK(vac.mat()(0, 0) == cplx(1.0));
    CHECK(vac.mat().norm() == 1.0);

    const DensityMatrix cat0 = build_density(parse("cat(0,+)").expr, 8);
    CHECK(hs_distance(cat0.op(), vac.op()) == 0.0);
    // small amplitudes approach the vacuum without losing normalization
    const DensityMatrix small = build_density(parse("cat(1e-9,+)").expr, 8);
    CHECK(hs_distance(small.op(), vac.op()) < 1e-12);
    const DensityMatrix odd_small = build_density(parse("cat(1e-6,-)").expr, 8);
    CHECK(std::abs(odd_small.mat()(1, 1) - 1.0) < 1e-10);
    try {
        build_density(parse("cat(0,-)").expr, 8);
        FAIL("expected invalid_state");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_state);
    }

    const DensityMatrix cat = build_density(parse("cat(1.1-0.4i,-)").expr, 40);
    CHECK(std::abs(cat.op().trace() - 1.0) < 1e-10);
    for (int n = 0; n < 40; n += 2) CHECK(std::abs(cat.mat()(n, n)) < 1e-15);

    const DensityMatrix mix = build_density(parse("0.3*coherent(1+0.5i) + 0.7*thermal(0.8)").expr, 48);
    CHECK(std::abs(mix.op().trace() - 1.0) < 1e-10);
    CHECK(is_hermitian(mix.op()));
    const Eigen::SelfAdjointEigenSolver<CMatrix> es(mix.mat());
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
}
