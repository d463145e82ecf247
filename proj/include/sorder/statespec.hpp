#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sorder/fock.hpp"

namespace sorder::spec {

struct Vacuum {};
struct Fock {
    int n = 0;
};
struct Coherent {
    cplx c;
};
struct Thermal {
    double nbar = 0.0;
};
struct Cat {
    cplx c;
    int sign = 1;
};
struct Mix;

using StateExpr = std::variant<Vacuum, Fock, Coherent, Thermal, Cat, std::shared_ptr<const Mix>>;

struct Component {
    double weight;
    StateExpr state;
};

struct Mix {
    std::vector<Component> parts;
};

inline constexpr int kMaxDepth = 8;

class ParseError : public std::runtime_error {
public:
    enum class Kind { syntax, semantic };

    ParseError(Kind kind, std::size_t offset, std::string expected, std::string found);

    Kind kind() const { return kind_; }
    std::size_t offset() const { return offset_; }
    const std::string& expected() const { return expected_; }
    const std::string& found() const { return found_; }

private:
    Kind kind_;
    std::size_t offset_;
    std::string expected_;
    std::string found_;
};

struct ParseResult {
    StateExpr expr;
    // Set when mixture weights did not sum to 1 and were rescaled.
    std::vector<std::string> warnings;
};

ParseResult parse(std::string_view input);
std::string render(const StateExpr& expr);
bool same_structure(const StateExpr& a, const StateExpr& b);

DensityMatrix build_density(const StateExpr& expr, int dim);

}  // namespace sorder::spec
