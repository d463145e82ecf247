#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sorder {

enum class ErrorKind {
    invalid_dimension,
    invalid_parameter,
    out_of_range,
    singular_parameter,
    dimension_mismatch,
    invalid_state,
    singular_conversion,
    boundedness,
    divergence,
    truncation,
    p_singular,
    grid_too_small,
    io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace sorder
