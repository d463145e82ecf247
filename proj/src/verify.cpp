#include "sorder/verify.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "sorder/errors.hpp"
#include "sorder/fock.hpp"
#include "sorder/ordering.hpp"
#include "sorder/quasiprob.hpp"
#include "sorder/statespec.hpp"

namespace sorder {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Worst case over a parameter sweep. A case that throws counts as infinite error.
class Sweep {
public:
    void add(double err, const std::string& label) {
        if (!(err <= worst_)) {
            worst_ = std::isnan(err) ? kInf : err;
            where_ = label;
        }
    }

    void run(const std::string& label, const std::function<double()>& body) {
        try {
            add(body(), label);
        } catch (const std::exception& e) {
            add(kInf, label + ": " + e.what());
        }
    }

    CheckResult finish(std::string id, std::string anchor, double tol) const {
        CheckResult r{std::move(id), std::move(anchor), worst_, tol, worst_ <= tol, where_};
        return r;
    }

private:
    double worst_ = 0.0;
    std::string where_;
};

std::string label(std::initializer_list<std::pair<const char*, std::string>> parts) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : parts) {
        if (!first) os << ' ';
        first = false;
        os << k << '=' << v;
    }
    return os.str();
}

std::string str(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

std::string str(cplx z) {
    std::ostringstream os;
    os << z.real();
    if (z.imag() != 0.0) os << (z.imag() < 0 ? "" : "+") << z.imag() << 'i';
    return os.str();
}

double coeff_error(const SOrderedGaussian& g, cplx c, cplx c3, cplx v) {
    if (!g.is_displaced()) return kInf;
    const auto& d = g.displaced();
    return std::max({std::abs(d.prefactor - c), std::abs(d.curvature - c3), std::abs(d.center - v),
                     std::abs(d.center_dag - std::conj(v))});
}

CheckResult ordering_anchors(const VerifyOptions& o) {
    const std::vector<double> ss = o.quick ? std::vector<double>{-0.5, 0.5} : std::vector<double>{-0.9, -0.5, 0.0, 0.5, 0.9};
    const std::vector<double> lambdas = o.quick ? std::vector<double>{0.2} : std::vector<double>{-0.5, 0.2, 0.5};
    Sweep sw;
    for (double s : ss) {
        for (cplx z : {cplx(0.0, 0.0), cplx(0.8, 0.0), cplx(0.5, -0.3)}) {
            const auto p = coherent_projector(PhasePoint(z), s);
            sw.run(label({{"projector s", str(s)}, {"z", str(z)}, {"to", "1"}}),
                   [&] { return coeff_error(reorder(p, 1.0), 1.0, -1.0, z); });
            sw.run(label({{"projector s", str(s)}, {"z", str(z)}, {"to", "0"}}),
                   [&] { return coeff_error(reorder(p, 0.0), 2.0, -2.0, z); });
        }
        for (double l : lambdas) {
            const auto g = exp_number(l, s);
            const double e = std::exp(l);
            sw.run(label({{"exp_number s", str(s)}, {"lambda", str(l)}, {"to", "1"}}),
                   [&] { return coeff_error(reorder(g, 1.0), 1.0, e - 1.0, 0.0); });
            sw.run(label({{"exp_number s", str(s)}, {"lambda", str(l)}, {"to", "0"}}),
                   [&] { return coeff_error(reorder(g, 0.0), 2.0 / (1.0 + e), 2.0 * (e - 1.0) / (1.0 + e), 0.0); });
            sw.run(label({{"exp_number s", str(s)}, {"lambda", str(l)}, {"to", "-1"}}),
                   [&] { return coeff_error(reorder(g, -1.0), 1.0 / e, 1.0 - 1.0 / e, 0.0); });
        }
    }
    return sw.finish("ordering_anchors",
                     "coherent projector in normal and Weyl order; exp(lambda N) in normal, Weyl and antinormal order",
                     1e-12);
}

CheckResult exp_number_matrix(const VerifyOptions& o) {
    const std::vector<double> ss = o.quick ? std::vector<double>{-0.5, 0.5} : std::vector<double>{-0.9, -0.5, 0.0, 0.5, 0.9};
    const std::vector<double> lambdas = o.quick ? std::vector<double>{0.2} : std::vector<double>{-0.5, 0.2, 0.5};
    constexpr int dim = 48;
    Sweep sw;
    for (double s : ss) {
        for (double l : lambdas) {
            sw.run(label({{"s", str(s)}, {"lambda", str(l)}}), [&] {
                CMatrix d = CMatrix::Zero(dim, dim);
                for (int n = 0; n < dim; ++n) d(n, n) = l * n;
                return hs_distance(realize(exp_number(l, s), dim).op, expm_oracle(FockOperator(d)), dim / 2);
            });
        }
    }
    return sw.finish("exp_number_realized", "realized s-ordered exp(lambda N) against a matrix exponential, 24-block",
                     1e-8);
}

CheckResult coherent_symbol(const VerifyOptions& o) {
    constexpr int dim = 64;
    const std::vector<cplx> zs = o.quick ? std::vector<cplx>{{1.0, 0.0}, {-1.2, 1.5}}
                                         : std::vector<cplx>{{0.0, 0.0}, {1.0, 0.0}, {-1.2, 1.5}, {0.6, -1.9}};
    const std::vector<cplx> alphas = o.quick ? std::vector<cplx>{{0.5, 0.5}, {-1.9, 0.3}}
                                             : std::vector<cplx>{{0.0, 0.0}, {0.5, 0.5}, {-1.9, 0.3}, {1.4, -1.4}};
    Sweep sw;
    for (double s : {-0.5, 0.0, 0.5, 1.0}) {
        for (cplx z : zs) {
            sw.run(label({{"s", str(s)}, {"z", str(z)}}), [&] {
                const DensityMatrix rho = coherent_density(PhasePoint(z), dim);
                const SymbolEvaluator ev(rho.op(), s, 2.0, o.exec);
                double worst = 0.0;
                for (cplx a : alphas) {
                    const double expect = 2.0 / (1.0 + s) * std::exp(-2.0 * std::norm(z - a) / (1.0 + s));
                    worst = std::max(worst, std::abs(ev(PhasePoint(a)) - expect));
                }
                return worst;
            });
        }
    }
    return sw.finish("coherent_symbol", "s-symbol of a coherent state is a Gaussian of variance (1+s)/4", 1e-8);
}

CheckResult antinormal_kernel(const VerifyOptions& o) {
    constexpr int dim = 48;
    const std::vector<cplx> alphas = o.quick ? std::vector<cplx>{{0.5, 0.3}, {2.0, 0.0}}
                                             : std::vector<cplx>{{0.0, 0.0}, {0.5, 0.3}, {2.0, 0.0}, {-1.2, 1.5}};
    Sweep sw;
    for (cplx a : alphas) {
        sw.run(label({{"alpha", str(a)}}), [&] {
            const CMatrix k = 2.0 * std::numbers::pi * realize(wigner_kernel(PhasePoint(a), -1.0), dim).op.mat();
            return hs_distance(FockOperator(k), coherent_density(PhasePoint(a), dim).op());
        });
    }
    return sw.finish("kernel_at_s_minus_1", "2 pi Delta_{-1}(alpha) is the coherent projector", 1e-10);
}

CheckResult fourier_vs_closed(const VerifyOptions& o) {
    constexpr int dim = 32;
    const PhaseGrid grid(5.0, 0.1);
    const std::vector<double> ss = o.quick ? std::vector<double>{-1.0} : std::vector<double>{-1.0, -0.5};
    Sweep sw;
    for (double s : ss) {
        for (cplx a : {cplx(0.0, 0.0), cplx(0.5, 0.3)}) {
            sw.run(label({{"s", str(s)}, {"alpha", str(a)}}), [&] {
                return hs_distance(fourier_oracle(PhasePoint(a), s, grid, dim, o.exec),
                                   realize(wigner_kernel(PhasePoint(a), s), dim).op);
            });
        }
    }
    return sw.finish("fourier_vs_closed_form", "displacement integral against the closed-form kernel, R=5 h=0.1",
                     1e-4);
}

CheckResult completeness(const VerifyOptions& o) {
    const PhaseGrid grid(6.0, 0.1);
    Sweep sw;
    for (double s : {-1.0, -0.5, 0.0})
        sw.run(label({{"s", str(s)}}), [&] { return completeness_deviation(s, grid, 32, 8, o.exec); });
    return sw.finish("completeness", "2 sum h^2 Delta_s is the identity on the 8-block, R=6 h=0.1", 1e-3);
}

DensityMatrix named_state(const std::string& name, int dim) {
    return spec::build_density(spec::parse(name).expr, dim);
}

CheckResult symbol_roundtrip(const VerifyOptions& o) {
    constexpr int dim = 48;
    const PhaseGrid grid(5.0, 0.1);
    const std::vector<std::string> states =
        o.quick ? std::vector<std::string>{"thermal(0.5)"} : std::vector<std::string>{"vacuum", "thermal(0.5)"};
    Sweep sw;
    for (const auto& st : states) {
        for (double s : {-0.5, 0.0}) {
            sw.run(label({{"state", st}, {"s", str(s)}}), [&] {
                const DensityMatrix rho = named_state(st, dim);
                const Reconstruction r = reconstruct_from_symbol(s_symbol_field(rho, s, grid, o.exec), dim, o.exec);
                return hs_distance(r.rho, rho.op());
            });
        }
    }
    return sw.finish("symbol_roundtrip", "symbol field then reconstruction returns the state, R=5 h=0.1", 1e-3);
}

CheckResult element_route(const VerifyOptions& o) {
    constexpr int dim = 64;
    const PhaseGrid grid(5.0, 0.1);
    // The s = -1 symbol is P itself; its beta sum needs room for thermal(0.5).
    const PhaseGrid beta_grid(7.0, 0.13);
    struct Case {
        std::string state;
        double s;
    };
    std::vector<Case> cases;
    if (o.quick) {
        cases = {{"thermal(0.5)", -1.0}, {"thermal(0.5)", 0.0}, {"coherent(0.8)", -0.5}};
    } else {
        for (const char* st : {"vacuum", "thermal(0.5)", "coherent(0.8)"})
            for (double s : {-1.0, -0.5, 0.0}) cases.push_back({st, s});
    }
    Sweep sw;
    for (const auto& c : cases) {
        sw.run(label({{"state", c.state}, {"s", str(c.s)}}), [&] {
            const DensityMatrix rho = named_state(c.state, dim);
            const Reconstruction e = reconstruct_from_elements(rho, c.s, grid, dim, o.exec);
            const SymbolField f =
                c.s > -1.0 ? s_symbol_field(rho, c.s, grid, o.exec) : mehta_p_field(rho, grid, beta_grid, o.exec);
            const Reconstruction r = reconstruct_from_symbol(f, dim, o.exec);
            return std::max(hs_distance(e.rho, rho.op()), hs_distance(e.rho, r.rho));
        });
    }
    return sw.finish("element_route",
                     "reconstruction from <-beta|rho|beta>, against the state and the symbol route, dim 64", 2e-3);
}

CheckResult mehta(const VerifyOptions& o) {
    constexpr int dim = 48;
    const PhaseGrid grid(5.0, 0.1);
    Sweep sw;
    const DensityMatrix th = thermal_density(1.0, dim);
    sw.run("P(0) of thermal(1)", [&] { return std::abs(mehta_p(th, PhasePoint(0.0, 0.0), grid) - 1.0); });
    if (!o.quick) {
        // The reassembly sums P over the whole z grid, so the beta sum needs a
        // wider disk than P(0) and the room that dim 64 leaves before truncation shows.
        sw.run("thermal(1) reassembled from P", [&] {
            constexpr int big = 64;
            const DensityMatrix th64 = thermal_density(1.0, big);
            const SymbolField f = mehta_p_field(th64, grid, PhaseGrid(5.5, 0.1), o.exec);
            return hs_distance(reconstruct_from_symbol(f, big, o.exec).rho, th64.op());
        });
    }
    sw.run("vacuum is P-singular", [&] {
        try {
            mehta_p(fock_density(0, dim), PhasePoint(0.0, 0.0), grid);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::p_singular) return 0.0;
            throw;
        }
        return kInf;
    });
    return sw.finish("mehta_p", "P from coherent elements: thermal(1) at the origin, vacuum diagnosed", 1e-3);
}

CheckResult weyl_monomials(const VerifyOptions& o) {
    constexpr int dim = 64;
    const std::vector<double> xs = o.quick ? std::vector<double>{-1.5, 1.5} : std::vector<double>{-1.5, 0.0, 1.5};
    Sweep sw;
    for (int m = 0; m <= 4; ++m) {
        for (int n = 0; m + n <= 4; ++n) {
            sw.run(label({{"m", std::to_string(m)}, {"n", std::to_string(n)}}), [&] {
                const FockOperator x = weyl_monomial(m, n, dim);
                double worst = 0.0;
                for (double q : xs)
                    for (double p : xs) {
                        const cplx v = weyl_symbol_truncated(x, PhasePoint::from_xp(q, p));
                        worst = std::max(worst, std::abs(v - std::pow(q, m) * std::pow(p, n)));
                    }
                return worst;
            });
        }
    }
    return sw.finish("weyl_monomials", "Wigner symbol of Weyl-ordered x^m p^n is x^m p^n", 1e-4);
}

CheckResult probe(const VerifyOptions& o) {
    const PhaseGrid grid(5.0, 0.1);
    const std::vector<double> ss = o.quick ? std::vector<double>{0.0, 0.5} : std::vector<double>{-0.5, 0.0, 0.5};
    Sweep sw;
    for (double s : ss) {
        for (double a : {0.0, 0.5}) {
            sw.run(label({{"s", str(s)}, {"alpha'", str(a)}}), [&] {
                const ProbeResult r = orthogonality_probe(s, PhasePoint(a, 0.0), 1.0, grid, 48, o.exec);
                return std::abs(r.value - r.expected);
            });
        }
    }
    return sw.finish("orthogonality_probe", "Delta_s and Delta_{-s} are dual: smeared pairing returns f(alpha')",
                     1e-2);
}

struct ParseCase {
    const char* input;
    bool ok;
    spec::ParseError::Kind kind = spec::ParseError::Kind::syntax;
    std::size_t offset = 0;
};

// 1 per failing case.
double parse_case_error(const ParseCase& c, std::string& why) {
    try {
        const spec::ParseResult r = spec::parse(c.input);
        if (!c.ok) {
            why = "accepted";
            return 1.0;
        }
        const std::string text = spec::render(r.expr);
        const spec::ParseResult again = spec::parse(text);
        if (!spec::same_structure(r.expr, again.expr) || spec::render(again.expr) != text) {
            why = "round trip changed '" + text + "'";
            return 1.0;
        }
        return 0.0;
    } catch (const spec::ParseError& e) {
        if (c.ok || e.kind() != c.kind || e.offset() != c.offset) {
            why = e.what();
            return 1.0;
        }
        return 0.0;
    }
}

CheckResult parser(const VerifyOptions&) {
    using K = spec::ParseError::Kind;
    static const ParseCase cases[] = {
        {"vacuum", true},
        {"fock(3)", true},
        {"coherent(1+0.5i)", true},
        {"coherent(-0.25)", true},
        {"coherent(1e-3-2.5E+1i)", true},
        {"thermal(0.8)", true},
        {"thermal(0)", true},
        {"cat(1.5-0.5i,+)", true},
        {"cat(2,-)", true},
        {"0.3*coherent(1+0.5i) + 0.7*thermal(0.8)", true},
        {"  ( vacuum )  ", true},
        {"0.5*(0.5*fock(1)+0.5*fock(2)) + 0.5*vacuum", true},
        {"2*vacuum + 2*fock(1)", true},
        {"vacuum + fock(1) + thermal(0.1)", true},
        {"((((((((vacuum))))))))", true},
        {"thermal(-1)", false, K::semantic, 8},
        {"", false, K::syntax, 0},
        {"fock(1.5)", false, K::syntax, 6},
        {"coherent(1+2)", false, K::syntax, 12},
        {"cat(1,*)", false, K::syntax, 6},
        {"vacuum +", false, K::syntax, 8},
        {"0*vacuum", false, K::semantic, 0},
        {"(((((((((vacuum)))))))))", false, K::semantic, 8},
        {"squeezed(1)", false, K::syntax, 0},
        {"vacuum)", false, K::syntax, 6},
        {"fock(2", false, K::syntax, 6},
        {"0.5 vacuum", false, K::syntax, 4},
        {"coherent(1+i)", false, K::syntax, 11},
    };
    Sweep sw;
    double failed = 0.0;
    for (const auto& c : cases) {
        std::string why;
        const double e = parse_case_error(c, why);
        if (e > 0.0) sw.add(e, std::string("'") + c.input + "': " + why);
        failed += e;
    }
    CheckResult r = sw.finish("parser", "state grammar round trip and error positions", 0.0);
    r.measured_error = failed;
    r.passed = failed == 0.0;
    if (r.passed) r.detail = std::to_string(std::size(cases)) + " cases";
    return r;
}

}  // namespace

CheckResult run_check(int criterion, const VerifyOptions& opts) {
    switch (criterion) {
        case 1: return ordering_anchors(opts);
        case 2: return exp_number_matrix(opts);
        case 3: return coherent_symbol(opts);
        case 4: return antinormal_kernel(opts);
        case 5: return fourier_vs_closed(opts);
        case 6: return completeness(opts);
        case 7: return symbol_roundtrip(opts);
        case 8: return element_route(opts);
        case 9: return mehta(opts);
        case 10: return weyl_monomials(opts);
        case 11: return probe(opts);
        case 12: return parser(opts);
        default: fail(ErrorKind::invalid_parameter, "criterion must be in [1, 12]");
    }
}

VerifyReport run_verify(const VerifyOptions& opts) {
    VerifyReport rep;
    for (int c = 1; c <= kCriteria; ++c)
        if (opts.only == 0 || opts.only == c) rep.checks.push_back(run_check(c, opts));
    rep.passed = !rep.checks.empty();
    for (const auto& c : rep.checks) rep.passed = rep.passed && c.passed;
    return rep;
}

}  // namespace sorder
