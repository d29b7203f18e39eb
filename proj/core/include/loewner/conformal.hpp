#pragma once

#include <complex>
#include <string>
#include <vector>

#include "loewner/geometry.hpp"

namespace loewner {

enum class MapRole { interior, inverted_exterior };

const char* to_string(MapRole role) noexcept;

// f, f', f'' at one point, plus the coefficient-tail truncation bound of the series.
struct MapValue {
    cplx value;
    cplx first;
    cplx second;
    double tail_bound = 0.0;
};

struct SolverOptions {
    std::size_t nodes = 1024;
    double tol = 1e-10;
    int max_iterations = 200;
};

// Univalent map of the unit disk held as Taylor coefficients a_0..a_M.
class AnalyticDiskMap {
public:
    static constexpr double default_radius = 1.0 - 1e-6;

    AnalyticDiskMap() = default;
    // An explicit polynomial map. Its tail bound is zero.
    explicit AnalyticDiskMap(std::vector<cplx> taylor, MapRole role = MapRole::interior,
                             std::string curve_id = {});

    const std::vector<cplx>& taylor() const { return taylor_; }
    cplx center() const { return taylor_.empty() ? cplx{} : taylor_[0]; }
    cplx derivative_at_center() const { return taylor_.size() > 1 ? taylor_[1] : cplx{}; }
    bool derivative_real_positive() const;
    MapRole role() const { return role_; }
    const std::string& curve_id() const { return curve_id_; }

    // Increasing lift u(t_k), t_k = 2 pi k / N, in the positively oriented curve parameter;
    // the curve's own parameter is orientation_sign() * u. Empty for explicit maps.
    const std::vector<double>& boundary_correspondence() const { return correspondence_; }
    int orientation_sign() const { return orientation_sign_; }

    double boundary_residual() const { return residual_; }
    double tail_bound() const { return tail_bound_; }
    int iterations() const { return iterations_; }
    bool has_correspondence() const { return !correspondence_.empty(); }

    // Checked evaluation inside |z| <= r_max.
    MapValue eval(cplx z, double r_max = default_radius) const;
    // Unchecked evaluation of the truncated series (used on the boundary circle).
    MapValue series(cplx z) const noexcept;

    // f(z)/z and f'(z)/f(z) - 1/z, both regular at 0; require f(0) = 0.
    cplx quotient(cplx z) const;
    cplx log_derivative_remainder(cplx z) const;

    // z -> f(e^{i alpha} z).
    AnalyticDiskMap rotated(double alpha) const;
    // z -> f(z) + shift.
    AnalyticDiskMap translated(cplx shift) const;

    // Assembled by the solver and the exchange-format reader.
    static AnalyticDiskMap assemble(std::vector<cplx> taylor, MapRole role, std::string curve_id,
                                    std::vector<double> correspondence, int orientation_sign,
                                    double residual, double tail_bound, int iterations);

private:
    std::vector<cplx> taylor_;
    std::vector<double> correspondence_;
    MapRole role_ = MapRole::interior;
    std::string curve_id_;
    int orientation_sign_ = 1;
    double residual_ = 0.0;
    double tail_bound_ = 0.0;
    int iterations_ = 0;
};

MapValue eval(const AnalyticDiskMap& map, cplx z, double r_max = AnalyticDiskMap::default_radius);

// Samples at uniform angles t_k = 2 pi k / N with their normalized DFT
// fhat_n = (1/N) sum_k b_k e^{-i n t_k}, stored in standard DFT order.
class BoundaryFunction {
public:
    BoundaryFunction() = default;
    explicit BoundaryFunction(std::vector<cplx> samples);
    static BoundaryFunction from_real(const std::vector<double>& samples);

    std::size_t size() const { return samples_.size(); }
    const std::vector<cplx>& samples() const { return samples_; }
    const std::vector<cplx>& fourier() const { return fourier_; }
    int frequency(std::size_t index) const;
    cplx coefficient(int n) const;

private:
    std::vector<cplx> samples_;
    std::vector<cplx> fourier_;
};

struct Welding {
    // e^{i tau(t_k)}.
    BoundaryFunction homeomorphism;
    // Strictly increasing lift tau(t_k).
    std::vector<double> lift;
    // w' and log w' at the nodes.
    std::vector<double> derivative;
    BoundaryFunction log_derivative;
};

// Theodorsen fixed point for a curve star-like about center; f(0) = center, f'(0) > 0.
AnalyticDiskMap solve_interior_map(const ParametricCurve& c, cplx center,
                                   const SolverOptions& options = {});

// g~ = interior map of the inverted curve, so the exterior map is g(z) = 1/g~(1/z).
AnalyticDiskMap solve_exterior_via_inversion(const ParametricCurve& c,
                                             const SolverOptions& options = {});

// Map known in closed form for curves entered as explicit Taylor maps.
AnalyticDiskMap interior_map_from_taylor(const ParametricCurve& c);

// f_eps(z) = f((1 - eps) z) / (1 - eps); requires f(0) = 0.
AnalyticDiskMap shrink_map(const AnalyticDiskMap& map, double eps);

// w = theta_g^{-1} o theta_f on the unit circle.
Welding welding(const AnalyticDiskMap& interior, const AnalyticDiskMap& inverted_exterior);

// Winding of f' on the unit circle, minimum of |f'| there, and a boundary self-intersection scan.
struct UnivalenceCheck {
    int derivative_zeros = 0;
    double min_derivative = 0.0;
    bool boundary_simple = true;
    bool ok() const { return derivative_zeros == 0 && min_derivative > 1e-10 && boundary_simple; }
};
UnivalenceCheck check_univalence(const AnalyticDiskMap& map, std::size_t samples = 2048);

}  // namespace loewner
