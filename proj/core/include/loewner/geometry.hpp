#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace loewner {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

struct SpherePoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
    double dot(const SpherePoint& other) const { return x * other.x + y * other.y + z * other.z; }
};

// Inverse stereographic projection from the north pole: 0 goes to (0,0,-1).
SpherePoint inverse_stereographic(cplx z);

// Frobenius norm of the differential of inverse_stereographic at z.
double inverse_stereographic_gradient_norm(cplx z);

// (x + iy) / (1 - z); throws pole_input at the north pole.
cplx stereographic(const SpherePoint& p);

enum class CurveKind { circle, ellipse, power_series_image, fourier_boundary, spiral_arc };

const char* to_string(CurveKind kind) noexcept;
CurveKind curve_kind_from_string(const std::string& name);

struct CurvePoint {
    cplx position;
    cplx tangent;
};

// One step of the planar transform chain applied after the base parametrization.
struct CurveTransform {
    enum class Op { affine, invert };
    Op op = Op::affine;
    cplx scale{1.0, 0.0};
    cplx shift{0.0, 0.0};
};

// A Jordan curve (or, for spiral_arc, an open arc) with a closed-form parametrization
// over [0, period()) and a cache of sample_count() uniformly spaced samples.
class ParametricCurve {
public:
    static constexpr std::size_t default_samples = 1024;

    CurveKind kind() const { return kind_; }
    const std::vector<double>& parameters() const { return parameters_; }
    // fourier_boundary: coefficients of e^{iks}, k = -K..K. power_series_image: Taylor a_0..a_M.
    const std::vector<cplx>& coefficients() const { return coefficients_; }
    const std::vector<CurveTransform>& transforms() const { return transforms_; }

    bool positively_oriented() const { return positively_oriented_; }
    bool closed() const { return kind_ != CurveKind::spiral_arc; }
    double period() const;

    std::size_t sample_count() const { return samples_.size(); }
    const std::vector<cplx>& samples() const { return samples_; }
    double sample_parameter(std::size_t k) const;

    CurvePoint at(double s) const;
    cplx point(double s) const { return at(s).position; }

    // Canonical description, stable across runs; used to match maps solved for the same curve.
    std::string id() const;

    // Explicit univalent polynomial whose image of the unit circle is this curve, when known.
    std::optional<std::vector<cplx>> taylor_map() const;

    // Same curve resampled at n points.
    ParametricCurve resampled(std::size_t n) const;

private:
    friend ParametricCurve make_family(CurveKind, const std::vector<double>&, std::size_t);
    friend ParametricCurve make_power_series_curve(std::vector<cplx>, std::size_t);
    friend ParametricCurve make_fourier_curve(std::vector<cplx>, std::size_t);
    friend ParametricCurve transform_curve(const ParametricCurve&, cplx, cplx);
    friend ParametricCurve invert_curve(const ParametricCurve&);

    CurvePoint base_at(double s) const;
    void refresh_samples(std::size_t n);

    CurveKind kind_ = CurveKind::circle;
    std::vector<double> parameters_;
    std::vector<cplx> coefficients_;
    std::vector<CurveTransform> transforms_;
    std::vector<cplx> samples_;
    bool positively_oriented_ = true;
};

// Built-in families. circle: {} or {radius}; ellipse: {rho}, boundary e^{is} + rho e^{-is};
// power_series_image: {eps, n}, image of z + eps z^n; spiral_arc: {eps}, t e^{i log log t} on (0, eps).
ParametricCurve make_family(CurveKind kind, const std::vector<double>& params,
                            std::size_t n = ParametricCurve::default_samples);
ParametricCurve make_power_series_curve(std::vector<cplx> taylor,
                                        std::size_t n = ParametricCurve::default_samples);
ParametricCurve make_fourier_curve(std::vector<cplx> coefficients,
                                   std::size_t n = ParametricCurve::default_samples);

// scale * gamma + shift.
ParametricCurve transform_curve(const ParametricCurve& c, cplx scale, cplx shift);
ParametricCurve translate_curve(const ParametricCurve& c, cplx shift);
// s -> 1 / gamma(s).
ParametricCurve invert_curve(const ParametricCurve& c);

// Polyline helpers on closed sample loops.
bool has_self_intersection(const std::vector<cplx>& loop);
double signed_area(const std::vector<cplx>& loop);
cplx area_centroid(const std::vector<cplx>& loop);
int winding_number(const std::vector<cplx>& loop, cplx about);
double min_distance(const std::vector<cplx>& loop, cplx about);

bool is_power_of_two(std::size_t n) noexcept;

}  // namespace loewner
