#include "loewner/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

// The Boost 1.74 pchip header calls isnan unqualified.
#include <math.h>
#include <boost/math/interpolators/pchip.hpp>

#include "loewner/errors.hpp"
#include "spectral.hpp"

namespace loewner {

const char* to_string(MapRole role) noexcept {
    return role == MapRole::interior ? "interior" : "inverted_exterior";
}

namespace {

constexpr cplx zero{0.0, 0.0};

void require_centred(const std::vector<cplx>& a) {
    const double scale = a.size() > 1 ? std::abs(a[1]) : 1.0;
    if (a.empty() || std::abs(a[0]) > 1e-12 * std::max(1.0, scale)) {
        throw Error(ErrorKind::nonzero_constant_term, "operation requires f(0) = 0");
    }
}

// Geometric extrapolation of the last ten coefficient magnitudes beyond the truncation.
double geometric_tail(const std::vector<cplx>& a, double floor) {
    const std::size_t m = a.size();
    if (m < 12) return 0.0;
    std::vector<double> xs;
    std::vector<double> ys;
    bool above_floor = false;
    for (std::size_t n = m - 10; n < m; ++n) {
        const double mag = std::abs(a[n]);
        if (mag > floor) above_floor = true;
        if (mag > 0.0) {
            xs.push_back(static_cast<double>(n));
            ys.push_back(std::log(mag));
        }
    }
    if (!above_floor || xs.size() < 2) return 0.0;
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = sxy / sxx;
    const double q = std::exp(slope);
    if (!(q < 1.0)) return std::numeric_limits<double>::infinity();
    const double last = std::exp(my + slope * (static_cast<double>(m - 1) - mx));
    return last * q / (1.0 - q);
}

// Unwrapped argument of gamma(sign * u) - center on a fine table, with Newton inversion.
class ArgumentInverse {
public:
    ArgumentInverse(const ParametricCurve& c, cplx center, int sign, std::size_t table_size)
        : curve_(c), center_(center), sign_(sign), table_(table_size + 1) {
        const double step = two_pi / static_cast<double>(table_size);
        table_[0] = std::arg(c.point(0.0) - center);
        double previous_log = std::log(std::abs(c.point(0.0) - center));
        for (std::size_t j = 1; j <= table_size; ++j) {
            const cplx p = c.point(sign * step * static_cast<double>(j)) - center;
            const double a = std::arg(p);
            table_[j] = a + two_pi * std::round((table_[j - 1] - a) / two_pi);
            if (!(table_[j] > table_[j - 1])) {
                throw Error(ErrorKind::not_star_like,
                            "argument about the center is not monotone along the curve");
            }
            const double log_r = std::log(std::abs(p));
            slope_ = std::max(slope_, std::abs(log_r - previous_log) / (table_[j] - table_[j - 1]));
            previous_log = log_r;
        }
        if (std::abs(table_.back() - table_.front() - two_pi) > 1e-6) {
            throw Error(ErrorKind::not_star_like, "curve does not wind once around the center");
        }
        step_ = step;
    }

    // max |d log r / d theta| of the curve in polar form about the center.
    double slope() const { return slope_; }

    // u with unwrapped arg(gamma(sign u) - center) = phi, continuous in phi.
    double operator()(double phi) const {
        const double base = table_.front();
        const double wraps = std::floor((phi - base) / two_pi);
        const double target = phi - two_pi * wraps;
        auto it = std::upper_bound(table_.begin(), table_.end(), target);
        std::size_t j = static_cast<std::size_t>(std::distance(table_.begin(), it));
        j = std::clamp<std::size_t>(j == 0 ? 0 : j - 1, 0, table_.size() - 2);
        double lo = step_ * static_cast<double>(j);
        double hi = lo + step_;
        const double reference = 0.5 * (table_[j] + table_[j + 1]);
        double u = lo + step_ * (target - table_[j]) / (table_[j + 1] - table_[j]);
        for (int iter = 0; iter < 60; ++iter) {
            const CurvePoint p = curve_.at(sign_ * u);
            const cplx d = p.position - center_;
            double a = std::arg(d);
            a += two_pi * std::round((reference - a) / two_pi);
            const double h = a - target;
            if (h == 0.0) break;
            if (h < 0.0) {
                lo = u;
            } else {
                hi = u;
            }
            const double slope = std::imag(static_cast<double>(sign_) * p.tangent / d);
            double next = slope > 0.0 ? u - h / slope : 0.5 * (lo + hi);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            if (std::abs(next - u) <= 4e-16 * (1.0 + std::abs(u))) {
                u = next;
                break;
            }
            u = next;
        }
        return u + two_pi * wraps;
    }

private:
    const ParametricCurve& curve_;
    cplx center_;
    int sign_;
    std::vector<double> table_;
    double step_ = 0.0;
    double slope_ = 0.0;
};

}  // namespace

AnalyticDiskMap::AnalyticDiskMap(std::vector<cplx> taylor, MapRole role, std::string curve_id)
    : taylor_(std::move(taylor)), role_(role), curve_id_(std::move(curve_id)) {
    while (taylor_.size() > 2 && taylor_.back() == zero) taylor_.pop_back();
    if (taylor_.size() < 2 || std::abs(taylor_[1]) < 1e-12) {
        throw Error(ErrorKind::degenerate_map, "map needs a nonzero derivative at 0");
    }
}

AnalyticDiskMap AnalyticDiskMap::assemble(std::vector<cplx> taylor, MapRole role,
                                          std::string curve_id, std::vector<double> correspondence,
                                          int orientation_sign, double residual, double tail_bound,
                                          int iterations) {
    AnalyticDiskMap m(std::move(taylor), role, std::move(curve_id));
    m.correspondence_ = std::move(correspondence);
    m.orientation_sign_ = orientation_sign;
    m.residual_ = residual;
    m.tail_bound_ = tail_bound;
    m.iterations_ = iterations;
    return m;
}

bool AnalyticDiskMap::derivative_real_positive() const {
    const cplx a1 = derivative_at_center();
    return a1.imag() == 0.0 && a1.real() > 0.0;
}

MapValue AnalyticDiskMap::series(cplx z) const noexcept {
    cplx p = zero;
    cplx d1 = zero;
    cplx d2 = zero;
    for (std::size_t k = taylor_.size(); k-- > 0;) {
        d2 = d2 * z + d1;
        d1 = d1 * z + p;
        p = p * z + taylor_[k];
    }
    return {p, d1, 2.0 * d2, tail_bound_};
}

MapValue AnalyticDiskMap::eval(cplx z, double r_max) const {
    // Points built as r e^{it} may overshoot r by a few ulps.
    if (!(std::abs(z) <= r_max * (1.0 + 1e-14))) {
        throw Error(ErrorKind::out_of_radius,
                    "evaluation at |z| = " + std::to_string(std::abs(z)) + " beyond radius " +
                        std::to_string(r_max));
    }
    return series(z);
}

MapValue eval(const AnalyticDiskMap& map, cplx z, double r_max) { return map.eval(z, r_max); }

cplx AnalyticDiskMap::quotient(cplx z) const {
    require_centred(taylor_);
    cplx q = zero;
    for (std::size_t k = taylor_.size(); k-- > 1;) q = q * z + taylor_[k];
    return q;
}

cplx AnalyticDiskMap::log_derivative_remainder(cplx z) const {
    require_centred(taylor_);
    // (f' - f/z) / f = [sum_{n>=2} (n-1) a_n z^{n-2}] / [sum_{n>=1} a_n z^{n-1}].
    cplx num = zero;
    cplx den = zero;
    for (std::size_t k = taylor_.size(); k-- > 1;) {
        den = den * z + taylor_[k];
        if (k >= 2) num = num * z + static_cast<double>(k - 1) * taylor_[k];
    }
    return num / den;
}

AnalyticDiskMap AnalyticDiskMap::rotated(double alpha) const {
    AnalyticDiskMap m = *this;
    for (std::size_t k = 0; k < m.taylor_.size(); ++k) {
        m.taylor_[k] *= std::polar(1.0, alpha * static_cast<double>(k));
    }
    m.correspondence_.clear();
    return m;
}

AnalyticDiskMap AnalyticDiskMap::translated(cplx shift) const {
    AnalyticDiskMap m = *this;
    m.taylor_[0] += shift;
    m.correspondence_.clear();
    m.curve_id_.clear();
    return m;
}

BoundaryFunction::BoundaryFunction(std::vector<cplx> samples) : samples_(std::move(samples)) {
    fourier_ = spectral::forward(samples_);
    const double n = static_cast<double>(samples_.size());
    for (auto& c : fourier_) c /= n;
}

BoundaryFunction BoundaryFunction::from_real(const std::vector<double>& samples) {
    return BoundaryFunction(std::vector<cplx>(samples.begin(), samples.end()));
}

int BoundaryFunction::frequency(std::size_t index) const {
    return spectral::frequency(index, samples_.size());
}

cplx BoundaryFunction::coefficient(int n) const {
    const auto size = static_cast<int>(samples_.size());
    if (size == 0 || std::abs(n) > size / 2) return zero;
    return fourier_[static_cast<std::size_t>(((n % size) + size) % size)];
}

AnalyticDiskMap solve_interior_map(const ParametricCurve& c, cplx center,
                                   const SolverOptions& options) {
    if (!c.closed()) throw Error(ErrorKind::open_curve, "cannot map the interior of an open arc");
    const std::size_t n = options.nodes;
    if (!is_power_of_two(n) || n < 16) {
        throw Error(ErrorKind::invalid_parameter, "solver node count must be a power of two >= 16");
    }
    if (!(options.tol > 0.0) || options.max_iterations < 1) {
        throw Error(ErrorKind::invalid_parameter, "solver needs tol > 0 and max_iterations >= 1");
    }
    if (winding_number(c.samples(), center) == 0 || min_distance(c.samples(), center) < 1e-12) {
        throw Error(ErrorKind::invalid_parameter, "center is not strictly inside the curve");
    }
    const int sign = c.positively_oriented() ? 1 : -1;
    const ArgumentInverse invert(c, center, sign, 4 * std::max(n, c.sample_count()));

    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k) t[k] = two_pi * static_cast<double>(k) / static_cast<double>(n);

    // Theodorsen: phi = t + K[log |gamma(phi) - center|], K the circle conjugation operator.
    // The linearized update has spectrum in [-i eps, i eps] with eps the polar slope bound, so
    // relaxing by 1/(1 + eps^2) contracts at rate eps/sqrt(1 + eps^2) for every star-like curve.
    const double eps = invert.slope();
    const double relax = 1.0 / (1.0 + eps * eps);
    std::vector<double> phi = t;
    std::vector<double> u(n);
    std::vector<double> log_radius(n);
    double change = std::numeric_limits<double>::infinity();
    double previous_change = change;
    int iterations = 0;
    bool converged = false;
    while (iterations < options.max_iterations) {
        ++iterations;
        for (std::size_t k = 0; k < n; ++k) {
            u[k] = invert(phi[k]);
            log_radius[k] = std::log(std::abs(c.point(sign * u[k]) - center));
        }
        const auto conj = spectral::conjugate(log_radius);
        change = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double step = t[k] + conj[k] - phi[k];
            change = std::max(change, std::abs(step));
            phi[k] += relax * step;
        }
        // Stop at the rounding floor: tiny updates that no longer shrink.
        if (change < 1e-14 || (change < 1e-12 && change >= 0.7 * previous_change)) {
            converged = true;
            break;
        }
        previous_change = change;
    }
    if (!converged && change > options.tol) {
        throw Error(ErrorKind::no_convergence,
                    "Theodorsen iteration did not converge in " + std::to_string(iterations) +
                        " iterations (last update " + std::to_string(change) + ")");
    }

    std::vector<cplx> boundary(n);
    for (std::size_t k = 0; k < n; ++k) {
        u[k] = invert(phi[k]);
        boundary[k] = c.point(sign * u[k]);
    }
    for (std::size_t k = 1; k < n; ++k) {
        if (!(u[k] > u[k - 1])) {
            throw Error(ErrorKind::no_convergence, "boundary correspondence is not monotone");
        }
    }

    auto spectrum = spectral::forward(boundary);
    for (auto& s : spectrum) s /= static_cast<double>(n);
    const std::size_t m = n / 2 - 1;
    std::vector<cplx> taylor(spectrum.begin(), spectrum.begin() + static_cast<std::ptrdiff_t>(m + 1));
    taylor[0] = center;
    taylor[1] = {taylor[1].real(), 0.0};

    double amax = 0.0;
    for (std::size_t k = 1; k < taylor.size(); ++k) amax = std::max(amax, std::abs(taylor[k]));
    const double floor = 1e-15 * amax;
    double tail = geometric_tail(taylor, 10.0 * floor);
    while (taylor.size() > 2 && std::abs(taylor.back()) <= floor) {
        tail += std::abs(taylor.back());
        taylor.pop_back();
    }

    std::vector<cplx> truncated(n, zero);
    std::copy(taylor.begin(), taylor.end(), truncated.begin());
    const auto values = spectral::inverse(truncated);
    double residual = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        residual = std::max(residual, std::abs(values[k] * static_cast<double>(n) - boundary[k]));
    }
    if (residual > options.tol) {
        throw Error(ErrorKind::no_convergence,
                    "boundary residual " + std::to_string(residual) + " exceeds tolerance " +
                        std::to_string(options.tol) + " at N=" + std::to_string(n));
    }
    return AnalyticDiskMap::assemble(std::move(taylor), MapRole::interior, c.id(), std::move(u),
                                     sign, residual, tail, iterations);
}

AnalyticDiskMap solve_exterior_via_inversion(const ParametricCurve& c, const SolverOptions& options) {
    if (!c.closed()) throw Error(ErrorKind::open_curve, "cannot map the exterior of an open arc");
    const ParametricCurve inverted = invert_curve(c);
    if (winding_number(c.samples(), zero) == 0) {
        throw Error(ErrorKind::invalid_parameter, "0 must lie inside the curve; recentre first");
    }
    const AnalyticDiskMap g = solve_interior_map(inverted, zero, options);
    return AnalyticDiskMap::assemble(g.taylor(), MapRole::inverted_exterior, c.id(),
                                     g.boundary_correspondence(), g.orientation_sign(),
                                     g.boundary_residual(), g.tail_bound(), g.iterations());
}

AnalyticDiskMap interior_map_from_taylor(const ParametricCurve& c) {
    const auto taylor = c.taylor_map();
    if (!taylor) {
        throw Error(ErrorKind::invalid_parameter,
                    std::string(to_string(c.kind())) + " curve has no explicit Taylor map");
    }
    // The curve is parametrized as p(e^{is}), so the correspondence is the identity.
    const std::size_t n = c.sample_count();
    std::vector<double> u(n);
    for (std::size_t k = 0; k < n; ++k) u[k] = c.sample_parameter(k);
    return AnalyticDiskMap::assemble(*taylor, MapRole::interior, c.id(), std::move(u), 1, 0.0, 0.0, 0);
}

AnalyticDiskMap shrink_map(const AnalyticDiskMap& map, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw Error(ErrorKind::invalid_parameter, "shrink parameter must satisfy 0 < eps < 1");
    }
    require_centred(map.taylor());
    std::vector<cplx> a = map.taylor();
    double scale = 1.0;
    for (std::size_t k = 1; k < a.size(); ++k) {
        a[k] *= scale;
        scale *= 1.0 - eps;
    }
    return AnalyticDiskMap::assemble(std::move(a), map.role(), {}, {}, 1, 0.0, map.tail_bound(), 0);
}

Welding welding(const AnalyticDiskMap& interior, const AnalyticDiskMap& inverted_exterior) {
    const auto& uf = interior.boundary_correspondence();
    const auto& ug = inverted_exterior.boundary_correspondence();
    if (interior.role() != MapRole::interior || inverted_exterior.role() != MapRole::inverted_exterior) {
        throw Error(ErrorKind::mismatched_curve, "welding needs an interior and an inverted-exterior map");
    }
    if (uf.empty() || ug.empty() || uf.size() != ug.size()) {
        throw Error(ErrorKind::mismatched_curve, "boundary correspondences missing or of different size");
    }
    if (interior.curve_id() != inverted_exterior.curve_id() ||
        interior.orientation_sign() * inverted_exterior.orientation_sign() != -1) {
        throw Error(ErrorKind::mismatched_curve, "maps were solved for different curves");
    }
    const std::size_t n = uf.size();

    // Exterior correspondence: g(e^{i tau}) = 1/g~(e^{-i tau}), read in the interior orientation.
    std::vector<double> xg(n);
    for (std::size_t k = 0; k < n; ++k) {
        xg[k] = k == 0 ? -ug[0] : -ug[n - k] + two_pi;
    }
    constexpr std::size_t pad = 3;
    std::vector<double> xs;
    std::vector<double> ys;
    xs.reserve(n + 2 * pad);
    ys.reserve(n + 2 * pad);
    auto tau = [n](std::size_t k) { return two_pi * static_cast<double>(k) / static_cast<double>(n); };
    for (std::size_t k = n - pad; k < n; ++k) {
        xs.push_back(xg[k] - two_pi);
        ys.push_back(tau(k) - two_pi);
    }
    for (std::size_t k = 0; k < n; ++k) {
        xs.push_back(xg[k]);
        ys.push_back(tau(k));
    }
    for (std::size_t k = 0; k < pad; ++k) {
        xs.push_back(xg[k] + two_pi);
        ys.push_back(tau(k) + two_pi);
    }
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] > xs[i - 1])) {
            throw Error(ErrorKind::no_convergence, "exterior correspondence is not monotone");
        }
    }
    const double base = xg[0];
    boost::math::interpolators::pchip<std::vector<double>> inverse(std::move(xs), std::move(ys));

    Welding w;
    w.lift.resize(n);
    std::vector<cplx> samples(n);
    std::vector<double> periodic(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double x = uf[k];
        const double wraps = std::floor((x - base) / two_pi);
        w.lift[k] = inverse(x - two_pi * wraps) + two_pi * wraps;
        samples[k] = std::polar(1.0, w.lift[k]);
        periodic[k] = w.lift[k] - tau(k);
    }
    w.homeomorphism = BoundaryFunction(std::move(samples));
    const auto slope = spectral::derivative(periodic);
    w.derivative.resize(n);
    std::vector<double> logs(n);
    for (std::size_t k = 0; k < n; ++k) {
        w.derivative[k] = 1.0 + slope[k];
        if (!(w.derivative[k] > 0.0)) {
            throw Error(ErrorKind::no_convergence, "welding derivative is not positive at node " +
                                                       std::to_string(k));
        }
        logs[k] = std::log(w.derivative[k]);
    }
    w.log_derivative = BoundaryFunction::from_real(logs);
    return w;
}

UnivalenceCheck check_univalence(const AnalyticDiskMap& map, std::size_t samples) {
    UnivalenceCheck out;
    std::vector<cplx> derivative(samples);
    std::vector<cplx> boundary(samples);
    out.min_derivative = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < samples; ++k) {
        const cplx z = std::polar(1.0, two_pi * static_cast<double>(k) / static_cast<double>(samples));
        const MapValue v = map.series(z);
        derivative[k] = v.first;
        boundary[k] = v.value;
        out.min_derivative = std::min(out.min_derivative, std::abs(v.first));
    }
    out.derivative_zeros = out.min_derivative > 0.0 ? winding_number(derivative, zero) : -1;
    out.boundary_simple = !has_self_intersection(boundary);
    return out;
}

}  // namespace loewner
