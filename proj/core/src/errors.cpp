#include "loewner/errors.hpp"

namespace loewner {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_parameter: return "invalid-parameter";
        case ErrorKind::pole_input: return "pole-input";
        case ErrorKind::curve_through_origin: return "curve-through-origin";
        case ErrorKind::open_curve: return "open-curve";
        case ErrorKind::not_star_like: return "not-star-like";
        case ErrorKind::no_convergence: return "no-convergence";
        case ErrorKind::non_univalent: return "non-univalent";
        case ErrorKind::out_of_radius: return "out-of-radius";
        case ErrorKind::nonzero_constant_term: return "nonzero-constant-term";
        case ErrorKind::mismatched_curve: return "mismatched-curve";
        case ErrorKind::non_finite_sample: return "non-finite-sample";
        case ErrorKind::degenerate_map: return "degenerate-map";
        case ErrorKind::origin_input: return "origin-input";
        case ErrorKind::vanishing_derivative: return "vanishing-derivative";
        case ErrorKind::stencil_out_of_domain: return "stencil-out-of-domain";
        case ErrorKind::io: return "io";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace loewner
