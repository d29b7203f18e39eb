#include "loewner/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "loewner/errors.hpp"

namespace loewner {

double SpherePoint::norm() const { return std::sqrt(x * x + y * y + z * z); }

SpherePoint inverse_stereographic(cplx z) {
    const double r2 = std::norm(z);
    const double d = 1.0 + r2;
    return {2.0 * z.real() / d, 2.0 * z.imag() / d, (r2 - 1.0) / d};
}

double inverse_stereographic_gradient_norm(cplx z) {
    // Conformal with factor 2/(1+|z|^2) in each of the two directions.
    return 2.0 * std::sqrt(2.0) / (1.0 + std::norm(z));
}

cplx stereographic(const SpherePoint& p) {
    const double d = 1.0 - p.z;
    if (std::abs(d) <= 1e-12) {
        throw Error(ErrorKind::pole_input, "stereographic projection of the north pole");
    }
    return {p.x / d, p.y / d};
}

const char* to_string(CurveKind kind) noexcept {
    switch (kind) {
        case CurveKind::circle: return "circle";
        case CurveKind::ellipse: return "ellipse";
        case CurveKind::power_series_image: return "power_series_image";
        case CurveKind::fourier_boundary: return "fourier_boundary";
        case CurveKind::spiral_arc: return "spiral_arc";
    }
    return "unknown";
}

CurveKind curve_kind_from_string(const std::string& name) {
    for (auto kind : {CurveKind::circle, CurveKind::ellipse, CurveKind::power_series_image,
                      CurveKind::fourier_boundary, CurveKind::spiral_arc}) {
        if (name == to_string(kind)) return kind;
    }
    throw Error(ErrorKind::invalid_parameter, "unknown curve kind '" + name + "'");
}

bool is_power_of_two(std::size_t n) noexcept { return n >= 1 && (n & (n - 1)) == 0; }

namespace {

void require_sample_count(std::size_t n) {
    if (!is_power_of_two(n) || n < 8) {
        throw Error(ErrorKind::invalid_parameter,
                    "sample count must be a power of two >= 8, got " + std::to_string(n));
    }
}

// Value and derivative of a polynomial by Horner's rule.
std::pair<cplx, cplx> horner(const std::vector<cplx>& a, cplx z) {
    cplx p{0.0, 0.0};
    cplx dp{0.0, 0.0};
    for (std::size_t k = a.size(); k-- > 0;) {
        dp = dp * z + p;
        p = p * z + a[k];
    }
    return {p, dp};
}

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool segments_intersect(cplx p1, cplx p2, cplx q1, cplx q2) {
    if (std::max(p1.real(), p2.real()) < std::min(q1.real(), q2.real()) ||
        std::max(q1.real(), q2.real()) < std::min(p1.real(), p2.real()) ||
        std::max(p1.imag(), p2.imag()) < std::min(q1.imag(), q2.imag()) ||
        std::max(q1.imag(), q2.imag()) < std::min(p1.imag(), p2.imag())) {
        return false;
    }
    const double d1 = cross(p2 - p1, q1 - p1);
    const double d2 = cross(p2 - p1, q2 - p1);
    const double d3 = cross(q2 - q1, p1 - q1);
    const double d4 = cross(q2 - q1, p2 - q1);
    return ((d1 > 0) != (d2 > 0) || d1 == 0 || d2 == 0) &&
           ((d3 > 0) != (d4 > 0) || d3 == 0 || d4 == 0);
}

void check_finite(const std::vector<cplx>& samples) {
    for (const auto& s : samples) {
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
            throw Error(ErrorKind::invalid_parameter, "curve produces non-finite samples");
        }
    }
}

void validate_jordan(const ParametricCurve& c) {
    check_finite(c.samples());
    if (has_self_intersection(c.samples())) {
        throw Error(ErrorKind::invalid_parameter,
                    std::string(to_string(c.kind())) + " curve self-intersects at N=" +
                        std::to_string(c.sample_count()));
    }
}

// Zeros of p' in the closed disk make the polynomial non-univalent there.
void validate_univalent_polynomial(const std::vector<cplx>& taylor, std::size_t n) {
    if (taylor.size() < 2 || std::abs(taylor[1]) < 1e-12) {
        throw Error(ErrorKind::non_univalent, "polynomial map has vanishing derivative at 0");
    }
    const std::size_t m = 4 * n;
    std::vector<cplx> derivative_loop(m);
    double min_modulus = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m; ++k) {
        const cplx z = std::polar(1.0, two_pi * static_cast<double>(k) / static_cast<double>(m));
        derivative_loop[k] = horner(taylor, z).second;
        min_modulus = std::min(min_modulus, std::abs(derivative_loop[k]));
    }
    if (min_modulus < 1e-8 * std::abs(taylor[1])) {
        throw Error(ErrorKind::non_univalent,
                    "derivative of the polynomial map vanishes on the unit circle");
    }
    if (winding_number(derivative_loop, cplx{0.0, 0.0}) != 0) {
        throw Error(ErrorKind::non_univalent,
                    "derivative of the polynomial map vanishes inside the unit disk");
    }
}

std::string format_real(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

double ParametricCurve::period() const {
    return kind_ == CurveKind::spiral_arc ? parameters_.at(0) : two_pi;
}

double ParametricCurve::sample_parameter(std::size_t k) const {
    const double n = static_cast<double>(samples_.size());
    if (kind_ == CurveKind::spiral_arc) return period() * (static_cast<double>(k) + 0.5) / n;
    return two_pi * static_cast<double>(k) / n;
}

CurvePoint ParametricCurve::base_at(double s) const {
    switch (kind_) {
        case CurveKind::circle: {
            const double r = parameters_.empty() ? 1.0 : parameters_[0];
            const cplx e = std::polar(1.0, s);
            return {r * e, cplx{0.0, r} * e};
        }
        case CurveKind::ellipse: {
            const double rho = parameters_[0];
            const cplx e = std::polar(1.0, s);
            const cplx ei = std::conj(e);
            return {e + rho * ei, cplx{0.0, 1.0} * (e - rho * ei)};
        }
        case CurveKind::power_series_image: {
            const cplx e = std::polar(1.0, s);
            const auto [p, dp] = horner(coefficients_, e);
            return {p, dp * cplx{0.0, 1.0} * e};
        }
        case CurveKind::fourier_boundary: {
            const int k_max = static_cast<int>(coefficients_.size() / 2);
            cplx value{0.0, 0.0};
            cplx tangent{0.0, 0.0};
            for (int j = 0; j < static_cast<int>(coefficients_.size()); ++j) {
                const int k = j - k_max;
                const cplx term = coefficients_[j] * std::polar(1.0, k * s);
                value += term;
                tangent += cplx{0.0, static_cast<double>(k)} * term;
            }
            return {value, tangent};
        }
        case CurveKind::spiral_arc: {
            // Boundary trace of z e^{i log log z} from the upper half-plane: log log t = log|log t| + i pi.
            const cplx lt{std::log(s), 0.0};
            const cplx llt{std::log(std::abs(lt.real())), pi};
            const cplx rot = std::exp(cplx{0.0, 1.0} * llt);
            return {s * rot, (1.0 + cplx{0.0, 1.0} / lt) * rot};
        }
    }
    return {};
}

CurvePoint ParametricCurve::at(double s) const {
    CurvePoint p = base_at(s);
    for (const auto& t : transforms_) {
        if (t.op == CurveTransform::Op::affine) {
            p.position = t.scale * p.position + t.shift;
            p.tangent = t.scale * p.tangent;
        } else {
            const cplx inv = 1.0 / p.position;
            p.tangent = -p.tangent * inv * inv;
            p.position = inv;
        }
    }
    return p;
}

void ParametricCurve::refresh_samples(std::size_t n) {
    samples_.assign(n, cplx{});
    for (std::size_t k = 0; k < n; ++k) samples_[k] = point(sample_parameter(k));
    positively_oriented_ = !closed() || signed_area(samples_) > 0.0;
}

ParametricCurve ParametricCurve::resampled(std::size_t n) const {
    require_sample_count(n);
    ParametricCurve c = *this;
    c.refresh_samples(n);
    return c;
}

std::string ParametricCurve::id() const {
    std::ostringstream out;
    out << to_string(kind_) << '(';
    for (std::size_t i = 0; i < parameters_.size(); ++i) {
        out << (i ? "," : "") << format_real(parameters_[i]);
    }
    out << ')';
    if (!coefficients_.empty()) {
        out << '[';
        for (std::size_t i = 0; i < coefficients_.size(); ++i) {
            out << (i ? ";" : "") << format_real(coefficients_[i].real()) << ','
                << format_real(coefficients_[i].imag());
        }
        out << ']';
    }
    for (const auto& t : transforms_) {
        if (t.op == CurveTransform::Op::invert) {
            out << "|inv";
        } else {
            out << "|aff(" << format_real(t.scale.real()) << ',' << format_real(t.scale.imag())
                << ',' << format_real(t.shift.real()) << ',' << format_real(t.shift.imag()) << ')';
        }
    }
    return out.str();
}

std::optional<std::vector<cplx>> ParametricCurve::taylor_map() const {
    std::vector<cplx> p;
    if (kind_ == CurveKind::circle) {
        p = {cplx{0.0, 0.0}, cplx{parameters_.empty() ? 1.0 : parameters_[0], 0.0}};
    } else if (kind_ == CurveKind::power_series_image) {
        p = coefficients_;
    } else {
        return std::nullopt;
    }
    for (const auto& t : transforms_) {
        if (t.op == CurveTransform::Op::invert) return std::nullopt;
        for (auto& a : p) a *= t.scale;
        p[0] += t.shift;
    }
    return p;
}

ParametricCurve make_family(CurveKind kind, const std::vector<double>& params, std::size_t n) {
    require_sample_count(n);
    ParametricCurve c;
    c.kind_ = kind;
    switch (kind) {
        case CurveKind::circle:
            if (params.size() > 1 || (params.size() == 1 && !(params[0] > 0.0))) {
                throw Error(ErrorKind::invalid_parameter, "circle takes an optional positive radius");
            }
            c.parameters_ = params;
            break;
        case CurveKind::ellipse:
            if (params.size() != 1 || !(params[0] >= 0.0 && params[0] < 1.0)) {
                throw Error(ErrorKind::invalid_parameter, "ellipse requires 0 <= rho < 1");
            }
            c.parameters_ = params;
            break;
        case CurveKind::power_series_image: {
            if (params.size() != 2 || !std::isfinite(params[0]) || params[1] < 2.0 ||
                params[1] != std::floor(params[1])) {
                throw Error(ErrorKind::invalid_parameter,
                            "power-series image requires (eps, n) with integer n >= 2");
            }
            const auto degree = static_cast<std::size_t>(params[1]);
            std::vector<cplx> taylor(degree + 1, cplx{0.0, 0.0});
            taylor[1] = 1.0;
            taylor[degree] += params[0];
            c = make_power_series_curve(std::move(taylor), n);
            c.parameters_ = params;
            return c;
        }
        case CurveKind::fourier_boundary:
            throw Error(ErrorKind::invalid_parameter, "use make_fourier_curve for Fourier boundaries");
        case CurveKind::spiral_arc:
            if (params.size() != 1 || !(params[0] > 0.0 && params[0] < 1.0)) {
                throw Error(ErrorKind::invalid_parameter, "spiral arc requires 0 < eps < 1");
            }
            c.parameters_ = params;
            c.refresh_samples(n);
            check_finite(c.samples_);
            return c;
    }
    c.refresh_samples(n);
    validate_jordan(c);
    return c;
}

ParametricCurve make_power_series_curve(std::vector<cplx> taylor, std::size_t n) {
    require_sample_count(n);
    while (taylor.size() > 2 && taylor.back() == cplx{0.0, 0.0}) taylor.pop_back();
    validate_univalent_polynomial(taylor, n);
    ParametricCurve c;
    c.kind_ = CurveKind::power_series_image;
    c.coefficients_ = std::move(taylor);
    c.refresh_samples(n);
    validate_jordan(c);
    return c;
}

ParametricCurve make_fourier_curve(std::vector<cplx> coefficients, std::size_t n) {
    require_sample_count(n);
    if (coefficients.size() % 2 != 1) {
        throw Error(ErrorKind::invalid_parameter,
                    "Fourier coefficients must cover frequencies -K..K (odd count)");
    }
    ParametricCurve c;
    c.kind_ = CurveKind::fourier_boundary;
    c.coefficients_ = std::move(coefficients);
    c.refresh_samples(n);
    validate_jordan(c);
    if (std::abs(signed_area(c.samples_)) < 1e-14) {
        throw Error(ErrorKind::invalid_parameter, "Fourier curve encloses no area");
    }
    return c;
}

ParametricCurve transform_curve(const ParametricCurve& c, cplx scale, cplx shift) {
    if (std::abs(scale) == 0.0) throw Error(ErrorKind::invalid_parameter, "zero scale");
    ParametricCurve out = c;
    out.transforms_.push_back({CurveTransform::Op::affine, scale, shift});
    out.refresh_samples(c.sample_count());
    return out;
}

ParametricCurve translate_curve(const ParametricCurve& c, cplx shift) {
    return transform_curve(c, cplx{1.0, 0.0}, shift);
}

ParametricCurve invert_curve(const ParametricCurve& c) {
    if (min_distance(c.samples(), cplx{0.0, 0.0}) <= 1e-9) {
        throw Error(ErrorKind::curve_through_origin, "cannot invert a curve passing through 0");
    }
    ParametricCurve out = c;
    // Undo a previous inversion exactly instead of stacking a second one.
    if (!out.transforms_.empty() && out.transforms_.back().op == CurveTransform::Op::invert) {
        out.transforms_.pop_back();
    } else {
        out.transforms_.push_back({CurveTransform::Op::invert, cplx{1.0, 0.0}, cplx{0.0, 0.0}});
    }
    out.refresh_samples(c.sample_count());
    return out;
}

bool has_self_intersection(const std::vector<cplx>& loop) {
    const std::size_t n = loop.size();
    if (n < 4) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx p1 = loop[i];
        const cplx p2 = loop[(i + 1) % n];
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue;
            if (segments_intersect(p1, p2, loop[j], loop[(j + 1) % n])) return true;
        }
    }
    return false;
}

double signed_area(const std::vector<cplx>& loop) {
    double a = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        a += cross(loop[i], loop[(i + 1) % loop.size()]);
    }
    return 0.5 * a;
}

cplx area_centroid(const std::vector<cplx>& loop) {
    double a = 0.0;
    cplx c{0.0, 0.0};
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const cplx p = loop[i];
        const cplx q = loop[(i + 1) % loop.size()];
        const double w = cross(p, q);
        a += w;
        c += w * (p + q);
    }
    return c / (3.0 * a);
}

int winding_number(const std::vector<cplx>& loop, cplx about) {
    double total = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        total += std::arg((loop[(i + 1) % loop.size()] - about) / (loop[i] - about));
    }
    return static_cast<int>(std::lround(total / two_pi));
}

double min_distance(const std::vector<cplx>& loop, cplx about) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& p : loop) d = std::min(d, std::abs(p - about));
    return d;
}

}  // namespace loewner
