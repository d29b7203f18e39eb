#pragma once

#include <stdexcept>
#include <string>

namespace loewner {

enum class ErrorKind {
    invalid_parameter,
    pole_input,
    curve_through_origin,
    open_curve,
    not_star_like,
    no_convergence,
    non_univalent,
    out_of_radius,
    nonzero_constant_term,
    mismatched_curve,
    non_finite_sample,
    degenerate_map,
    origin_input,
    vanishing_derivative,
    stencil_out_of_domain,
    io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace loewner
