#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sorder/errors.hpp"
#include "sorder/format.hpp"
#include "sorder/ordering.hpp"
#include "sorder/quasiprob.hpp"
#include "sorder/statespec.hpp"
#include "sorder/verify.hpp"

namespace {

using namespace sorder;
using nlohmann::ordered_json;

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumeric = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string one_line(std::string s) {
    for (char& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    return s;
}

int report(const char* kind, const std::string& msg, int code) {
    std::cerr << "sorder: error kind=" << kind << ": " << one_line(msg) << '\n';
    return code;
}

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::invalid_dimension:
        case ErrorKind::invalid_parameter:
        case ErrorKind::out_of_range:
        case ErrorKind::dimension_mismatch:
        case ErrorKind::invalid_state:
        case ErrorKind::io:
            return kUsage;
        default:
            return kNumeric;
    }
}

DensityMatrix load_state(const std::string& text, int dim) {
    spec::ParseResult r = spec::parse(text);
    for (const auto& w : r.warnings) std::cerr << "sorder: warning: " << w << '\n';
    return spec::build_density(r.expr, dim);
}

cplx parse_cnum(const std::string& text) {
    // Reuse the state grammar: coherent(<cnum>) accepts exactly a cnum.
    spec::ParseResult r = spec::parse("coherent(" + text + ")");
    const auto* c = std::get_if<spec::Coherent>(&r.expr);
    if (!c) throw UsageError("not a complex number: " + text);
    return c->c;
}

// Writes to `path`, or stdout for "-".
template <class F>
void emit(const std::string& path, F&& write) {
    if (path == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::io, "cannot open " + path);
    write(out);
    if (!out) fail(ErrorKind::io, "write failed: " + path);
}

struct Common {
    std::string state;
    double s = 0.0;
    double radius = 5.0;
    double step = 0.1;
    int dim = kDefaultDim;
    std::string out = "-";
};

void add_grid_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--radius", c.radius, "grid half-width R")->capture_default_str();
    cmd->add_option("--step", c.step, "grid spacing h")->capture_default_str();
    cmd->add_option("--dim", c.dim, "Fock dimension")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"s-ordered phase-space quasiprobabilities"};
    app.require_subcommand(1);
    bool serial = false;
    app.add_flag("--serial", serial, "run grid sweeps on one thread");

    Common c;
    auto* grid = app.add_subcommand("grid", "write the s-symbol of a state on a grid as CSV");
    grid->add_option("--state", c.state, "state specification")->required();
    grid->add_option("--s", c.s, "ordering parameter")->capture_default_str();
    add_grid_flags(grid, c);
    grid->add_option("--out", c.out, "output path, - for stdout")->capture_default_str();

    std::string route = "symbol";
    auto* recon = app.add_subcommand("reconstruct", "reconstruct a state from its symbol or coherent elements");
    recon->add_option("--state", c.state, "state specification")->required();
    recon->add_option("--s", c.s, "ordering parameter")->capture_default_str();
    recon->add_option("--route", route, "symbol or elements")
        ->check(CLI::IsMember({"symbol", "elements"}))
        ->capture_default_str();
    add_grid_flags(recon, c);
    recon->add_option("--out", c.out, "JSON output path, - for stdout")->capture_default_str();

    std::string z_text = "0";
    auto* mehta = app.add_subcommand("mehta", "evaluate the P function at one point");
    mehta->add_option("--state", c.state, "state specification")->required();
    mehta->add_option("--z", z_text, "phase-space point, e.g. 0.5-0.2i")->capture_default_str();
    add_grid_flags(mehta, c);

    std::string op = "exp_number";
    double lambda = 0.0;
    auto* expand = app.add_subcommand("expand", "print an s-ordered expansion and its other orderings");
    expand->add_option("--op", op, "operator")->check(CLI::IsMember({"exp_number"}))->capture_default_str();
    expand->add_option("--lambda", lambda, "exponent of exp(lambda N)")->required();
    expand->add_option("--s", c.s, "ordering parameter")->capture_default_str();

    bool quick = false;
    auto* verify = app.add_subcommand("verify", "run the acceptance suite and print a JSON report");
    verify->add_flag("--quick", quick, "reduced sweeps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report("usage", e.what(), kUsage);
    }
    const Exec exec = serial ? Exec::serial : Exec::parallel;

    try {
        if (*grid) {
            const DensityMatrix rho = load_state(c.state, c.dim);
            const SymbolField f = s_symbol_field(rho, c.s, PhaseGrid(c.radius, c.step), exec);
            emit(c.out, [&](std::ostream& os) { write_csv(os, f); });
        } else if (*recon) {
            const DensityMatrix rho = load_state(c.state, c.dim);
            const PhaseGrid g(c.radius, c.step);
            const Reconstruction r = route == "symbol"
                                         ? reconstruct_from_symbol(s_symbol_field(rho, c.s, g, exec), c.dim, exec)
                                         : reconstruct_from_elements(rho, c.s, g, c.dim, exec);
            ordered_json j;
            j["schema"] = 1;
            j["route"] = route;
            j["s"] = c.s;
            j["hs_error"] = hs_distance(r.rho, rho.op());
            j["trace"] = {{"re", r.trace.real()}, {"im", r.trace.imag()}};
            j["tail_mass"] = rho.tail_mass();
            j["masked_points"] = r.masked_points;
            j["dim"] = c.dim;
            j["grid"] = {{"radius", g.radius()}, {"step", g.step()}, {"side", g.side()}};
            emit(c.out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
        } else if (*mehta) {
            const DensityMatrix rho = load_state(c.state, c.dim);
            const cplx p = mehta_p(rho, PhasePoint(parse_cnum(z_text)), PhaseGrid(c.radius, c.step));
            std::cout << format_complex(p) << '\n';
        } else if (*expand) {
            const SOrderedGaussian g = exp_number(lambda, c.s);
            std::cout << "s=" << format_short(c.s) << ": " << g.render() << '\n';
            for (double t : {1.0, 0.0, -1.0}) {
                std::cout << "s=" << format_short(t) << ": ";
                try {
                    std::cout << reorder(g, t).render() << '\n';
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::singular_conversion) throw;
                    std::cout << "none (" << one_line(e.what()) << ")\n";
                }
            }
        } else if (*verify) {
            VerifyOptions opts;
            opts.quick = quick;
            opts.exec = exec;
            const VerifyReport rep = run_verify(opts);
            ordered_json j;
            j["schema"] = rep.schema;
            j["quick"] = quick;
            j["passed"] = rep.passed;
            j["checks"] = ordered_json::array();
            for (const auto& ch : rep.checks) {
                ordered_json e;
                e["check_id"] = ch.check_id;
                e["anchor"] = ch.anchor;
                if (std::isfinite(ch.measured_error))
                    e["measured_error"] = ch.measured_error;
                else
                    e["measured_error"] = nullptr;
                e["tolerance"] = ch.tolerance;
                e["passed"] = ch.passed;
                e["detail"] = ch.detail;
                j["checks"].push_back(std::move(e));
            }
            std::cout << j.dump(2) << '\n';
            if (!rep.passed) return report("verification", "one or more checks failed", kVerifyFailed);
        }
    } catch (const spec::ParseError& e) {
        return report("parse", e.what(), kUsage);
    } catch (const UsageError& e) {
        return report("usage", e.what(), kUsage);
    } catch (const Error& e) {
        return report(std::string(to_string(e.kind())).c_str(), e.what(), exit_code(e.kind()));
    }
    return kOk;
}
