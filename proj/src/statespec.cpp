#include "sorder/statespec.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "sorder/errors.hpp"
#include "sorder/format.hpp"

namespace sorder::spec {

ParseError::ParseError(Kind kind, std::size_t offset, std::string expected, std::string found)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << (kind == Kind::syntax ? "syntax" : "semantic") << " error at offset " << offset << ": expected "
             << expected << ", found " << (found.empty() ? "end of input" : "'" + found + "'");
          return os.str();
      }()),
      kind_(kind),
      offset_(offset),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

class Parser {
public:
    explicit Parser(std::string_view in) : in_(in) {}

    ParseResult run() {
        ParseResult r{expr(0), {}};
        skip();
        if (pos_ < in_.size()) syntax("'+' or end of input");
        r.warnings = std::move(warnings_);
        return r;
    }

private:
    std::string_view in_;
    std::size_t pos_ = 0;
    std::vector<std::string> warnings_;

    void skip() {
        while (pos_ < in_.size() && std::isspace(static_cast<unsigned char>(in_[pos_]))) ++pos_;
    }

    char peek() {
        skip();
        return pos_ < in_.size() ? in_[pos_] : '\0';
    }

    std::string found_at(std::size_t at) const {
        if (at >= in_.size()) return {};
        std::size_t end = at + 1;
        if (std::isalnum(static_cast<unsigned char>(in_[at])) || in_[at] == '.') {
            while (end < in_.size() && (std::isalnum(static_cast<unsigned char>(in_[end])) || in_[end] == '.')) ++end;
        }
        return std::string(in_.substr(at, end - at));
    }

    [[noreturn]] void syntax(const std::string& expected) {
        skip();
        throw ParseError(ParseError::Kind::syntax, pos_, expected, found_at(pos_));
    }

    [[noreturn]] void semantic(std::size_t at, const std::string& expected) {
        throw ParseError(ParseError::Kind::semantic, at, expected, found_at(at));
    }

    void expect(char c) {
        if (peek() != c) syntax(std::string("'") + c + "'");
        ++pos_;
    }

    static bool starts_number(char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '.'; }

    // Unsigned decimal with optional fraction and exponent.
    double number() {
        skip();
        const std::size_t start = pos_;
        std::size_t p = pos_;
        auto digits = [&] {
            const std::size_t s = p;
            while (p < in_.size() && std::isdigit(static_cast<unsigned char>(in_[p]))) ++p;
            return p - s;
        };
        std::size_t nd = digits();
        if (p < in_.size() && in_[p] == '.') {
            ++p;
            nd += digits();
        }
        if (nd == 0) syntax("number");
        if (p < in_.size() && (in_[p] == 'e' || in_[p] == 'E')) {
            std::size_t q = p + 1;
            if (q < in_.size() && (in_[q] == '+' || in_[q] == '-')) ++q;
            if (q < in_.size() && std::isdigit(static_cast<unsigned char>(in_[q]))) {
                p = q;
                digits();
            }
        }
        double v = 0.0;
        const auto res = std::from_chars(in_.data() + start, in_.data() + p, v);
        if (res.ec != std::errc() || !std::isfinite(v)) semantic(start, "finite number");
        pos_ = p;
        return v;
    }

    double real() {
        double sign = 1.0;
        const char c = peek();
        if (c == '-' || c == '+') {
            if (c == '-') sign = -1.0;
            ++pos_;
        }
        return sign * number();
    }

    cplx cnum() {
        const double re = real();
        const char c = peek();
        if (c != '+' && c != '-') return {re, 0.0};
        ++pos_;
        const double im = number();
        if (peek() != 'i') syntax("'i'");
        ++pos_;
        return {re, c == '-' ? -im : im};
    }

    int nat() {
        skip();
        const std::size_t start = pos_;
        std::size_t p = pos_;
        while (p < in_.size() && std::isdigit(static_cast<unsigned char>(in_[p]))) ++p;
        if (p == start) syntax("natural number");
        int v = 0;
        const auto res = std::from_chars(in_.data() + start, in_.data() + p, v);
        if (res.ec != std::errc()) semantic(start, "Fock level that fits in an int");
        pos_ = p;
        return v;
    }

    StateExpr expr(int depth) {
        std::vector<Component> parts;
        std::vector<bool> explicit_weight;
        do {
            double w = 1.0;
            bool weighted = false;
            if (starts_number(peek())) {
                const std::size_t at = pos_;
                w = number();
                if (!(w > 0.0)) semantic(at, "positive weight");
                expect('*');
                weighted = true;
            }
            parts.push_back({w, atom(depth)});
            explicit_weight.push_back(weighted);
        } while (peek() == '+' && (++pos_, true));

        if (parts.size() == 1 && !explicit_weight[0]) return parts[0].state;
        double sum = 0.0;
        for (const auto& c : parts) sum += c.weight;
        if (std::abs(sum - 1.0) > 1e-12) {
            std::ostringstream os;
            os << "mixture weights sum to " << format_short(sum) << "; normalized to 1";
            warnings_.push_back(os.str());
            for (auto& c : parts) c.weight /= sum;
        }
        return std::make_shared<const Mix>(Mix{std::move(parts)});
    }

    StateExpr atom(int depth) {
        const char c = peek();
        const std::size_t at = pos_;
        if (c == '(') {
            if (depth + 1 > kMaxDepth) semantic(at, "nesting depth at most 8");
            ++pos_;
            StateExpr e = expr(depth + 1);
            expect(')');
            return e;
        }
        std::size_t p = pos_;
        while (p < in_.size() && std::isalpha(static_cast<unsigned char>(in_[p]))) ++p;
        const std::string_view word = in_.substr(pos_, p - pos_);
        if (word.empty()) syntax("state (vacuum, fock, coherent, thermal, cat or '(')");
        if (word == "vacuum") {
            pos_ = p;
            return Vacuum{};
        }
        if (word != "fock" && word != "coherent" && word != "thermal" && word != "cat")
            syntax("state (vacuum, fock, coherent, thermal, cat or '(')");
        pos_ = p;
        expect('(');
        StateExpr out;
        if (word == "fock") {
            out = Fock{nat()};
        } else if (word == "coherent") {
            out = Coherent{cnum()};
        } else if (word == "thermal") {
            skip();
            const std::size_t num_at = pos_;
            const double nbar = real();
            if (nbar < 0.0) semantic(num_at, "non-negative thermal occupation");
            out = Thermal{nbar};
        } else {
            const cplx v = cnum();
            expect(',');
            const char sg = peek();
            if (sg != '+' && sg != '-') syntax("'+' or '-'");
            ++pos_;
            out = Cat{v, sg == '+' ? 1 : -1};
        }
        expect(')');
        return out;
    }
};

std::string render_cnum(cplx c) {
    std::string s = format_short(c.real());
    if (c.imag() != 0.0) {
        s += c.imag() < 0.0 ? "-" : "+";
        s += format_short(std::abs(c.imag()));
        s += "i";
    }
    return s;
}

struct Renderer {
    std::string operator()(const Vacuum&) const { return "vacuum"; }
    std::string operator()(const Fock& f) const { return "fock(" + std::to_string(f.n) + ")"; }
    std::string operator()(const Coherent& c) const { return "coherent(" + render_cnum(c.c) + ")"; }
    std::string operator()(const Thermal& t) const { return "thermal(" + format_short(t.nbar) + ")"; }
    std::string operator()(const Cat& c) const {
        return "cat(" + render_cnum(c.c) + "," + (c.sign > 0 ? "+" : "-") + ")";
    }
    std::string operator()(const std::shared_ptr<const Mix>& m) const {
        std::string out;
        for (std::size_t i = 0; i < m->parts.size(); ++i) {
            if (i) out += " + ";
            const auto& part = m->parts[i];
            out += format_short(part.weight) + "*";
            const std::string inner = std::visit(*this, part.state);
            if (std::holds_alternative<std::shared_ptr<const Mix>>(part.state))
                out += "(" + inner + ")";
            else
                out += inner;
        }
        return out;
    }
};

}  // namespace

ParseResult parse(std::string_view input) { return Parser(input).run(); }

std::string render(const StateExpr& expr) { return std::visit(Renderer{}, expr); }

bool same_structure(const StateExpr& a, const StateExpr& b) {
    if (a.index() != b.index()) return false;
    if (const auto* f = std::get_if<Fock>(&a)) return f->n == std::get<Fock>(b).n;
    if (const auto* c = std::get_if<Coherent>(&a)) return c->c == std::get<Coherent>(b).c;
    if (const auto* t = std::get_if<Thermal>(&a)) return t->nbar == std::get<Thermal>(b).nbar;
    if (const auto* c = std::get_if<Cat>(&a)) {
        const auto& d = std::get<Cat>(b);
        return c->c == d.c && c->sign == d.sign;
    }
    if (const auto* m = std::get_if<std::shared_ptr<const Mix>>(&a)) {
        const auto& n = std::get<std::shared_ptr<const Mix>>(b);
        if ((*m)->parts.size() != n->parts.size()) return false;
        for (std::size_t i = 0; i < n->parts.size(); ++i) {
            if ((*m)->parts[i].weight != n->parts[i].weight) return false;
            if (!same_structure((*m)->parts[i].state, n->parts[i].state)) return false;
        }
    }
    return true;
}

namespace {

DensityMatrix cat_density(cplx c, int sign, int dim) {
    const double x = std::norm(c);
    if (x == 0.0) {
        if (sign > 0) return fock_density(0, dim);
        fail(ErrorKind::invalid_state, "odd cat state with amplitude 0 does not exist");
    }
    const double n2 = sign > 0 ? 1.0 / (2.0 + 2.0 * std::exp(-2.0 * x)) : 1.0 / (-2.0 * std::expm1(-2.0 * x));
    const double norm = std::sqrt(n2);
    CVector amp = CVector::Zero(dim);
    cplx term = std::exp(-0.5 * x);
    for (int n = 0; n < dim; ++n) {
        if (n > 0) term *= c / std::sqrt(static_cast<double>(n));
        const bool even = n % 2 == 0;
        if ((sign > 0) == even) amp(n) = 2.0 * norm * term;
    }
    const double tail = std::max(0.0, 1.0 - amp.squaredNorm());
    return DensityMatrix::from_pure(FockVector(std::move(amp), tail));
}

DensityMatrix build(const StateExpr& e, int dim) {
    if (std::holds_alternative<Vacuum>(e)) return fock_density(0, dim);
    if (const auto* f = std::get_if<Fock>(&e)) return fock_density(f->n, dim);
    if (const auto* c = std::get_if<Coherent>(&e)) return coherent_density(PhasePoint(c->c), dim);
    if (const auto* t = std::get_if<Thermal>(&e)) return thermal_density(t->nbar, dim);
    if (const auto* c = std::get_if<Cat>(&e)) return cat_density(c->c, c->sign, dim);
    const auto& mix = *std::get<std::shared_ptr<const Mix>>(e);
    CMatrix m = CMatrix::Zero(dim, dim);
    double tail = 0.0;
    for (const auto& part : mix.parts) {
        const DensityMatrix d = build(part.state, dim);
        m += part.weight * d.mat();
        tail += part.weight * d.tail_mass();
    }
    return DensityMatrix::from_operator(FockOperator(std::move(m)), std::min(tail, 1.0));
}

}  // namespace

DensityMatrix build_density(const StateExpr& expr, int dim) {
    check_dim(dim);
    return build(expr, dim);
}

}  // namespace sorder::spec
