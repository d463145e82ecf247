#include "sorder/errors.hpp"

namespace sorder {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_dimension: return "invalid_dimension";
        case ErrorKind::invalid_parameter: return "invalid_parameter";
        case ErrorKind::out_of_range: return "out_of_range";
        case ErrorKind::singular_parameter: return "singular_parameter";
        case ErrorKind::dimension_mismatch: return "dimension_mismatch";
        case ErrorKind::invalid_state: return "invalid_state";
        case ErrorKind::singular_conversion: return "singular_conversion";
        case ErrorKind::boundedness: return "boundedness";
        case ErrorKind::divergence: return "divergence";
        case ErrorKind::truncation: return "truncation";
        case ErrorKind::p_singular: return "p_singular";
        case ErrorKind::grid_too_small: return "grid_too_small";
        case ErrorKind::io: return "io";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace sorder
