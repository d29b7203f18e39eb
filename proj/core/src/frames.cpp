#include "loewner/frames.hpp"

#include <algorithm>
#include <cmath>

#include "loewner/errors.hpp"
#include "loewner/quadrature.hpp"

namespace loewner {

namespace {

constexpr cplx I{0.0, 1.0};

void require_nonvanishing(const MapValue& v) {
    if (!(std::abs(v.first) > 1e-14)) {
        throw Error(ErrorKind::vanishing_derivative, "f' vanishes at the evaluation point");
    }
}

SpherePoint real_part(const NullVector& a) { return {a[0].real(), a[1].real(), a[2].real()}; }
SpherePoint imag_part(const NullVector& a) { return {a[0].imag(), a[1].imag(), a[2].imag()}; }

struct FrameDerivatives {
    NullVector phi;
    NullVector dz;     // d_z phi
    NullVector dzbar;  // d_zbar phi
};

FrameDerivatives frame_derivatives(cplx z, const MapValue& v, int branch) {
    if (std::abs(z) < frame_exclusion_radius) {
        throw Error(ErrorKind::origin_input, "frames are undefined at the marked point z = 0");
    }
    require_nonvanishing(v);
    const cplx q = z * v.first;
    const cplx chi = static_cast<double>(branch) * std::conj(q) / std::abs(q);
    const cplx f = v.value;
    const double d = 1.0 + std::norm(f);
    const NullVector p{1.0 - f * f, I * (1.0 + f * f), 2.0 * f};
    const NullVector dp{-2.0 * f, 2.0 * I * f, cplx{2.0, 0.0}};

    const cplx log_q = 1.0 / z + v.second / v.first;
    const cplx dchi = -0.5 * log_q * chi;
    const cplx dbarchi = 0.5 * std::conj(log_q) * chi;

    FrameDerivatives out;
    for (int k = 0; k < 3; ++k) {
        const cplx psi = p[k] / d;
        const cplx dpsi = dp[k] * v.first / d - p[k] * v.first * std::conj(f) / (d * d);
        const cplx dbarpsi = -p[k] * f * std::conj(v.first) / (d * d);
        out.phi[k] = chi * psi;
        out.dz[k] = dchi * psi + chi * dpsi;
        out.dzbar[k] = dbarchi * psi + chi * dbarpsi;
    }
    return out;
}

double mu_at(const AnalyticDiskMap& f, cplx z) { return mu_from_values(f.eval(z)); }

}  // namespace

NullVector null_vector(cplx w) {
    const double d = 1.0 + std::norm(w);
    return {(1.0 - w * w) / d, I * (1.0 + w * w) / d, 2.0 * w / d};
}

cplx bilinear(const NullVector& a, const NullVector& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

cplx hermitian(const NullVector& a, const NullVector& b) {
    return a[0] * std::conj(b[0]) + a[1] * std::conj(b[1]) + a[2] * std::conj(b[2]);
}

double mu_from_values(const MapValue& v) {
    require_nonvanishing(v);
    return std::log(std::abs(v.first)) - std::log1p(std::norm(v.value)) + std::log(2.0);
}

double mu_of(const AnalyticDiskMap& f, cplx z) { return mu_at(f, z); }

FrameSample frame_from_values(cplx z, const MapValue& v, int branch) {
    const FrameDerivatives d = frame_derivatives(z, v, branch);
    FrameSample s;
    s.z = z;
    s.v = real_part(d.phi);
    s.u = imag_part(d.phi);
    s.n = inverse_stereographic(v.value);
    s.mu = mu_from_values(v);

    // d_z of the real vector v = Re phi is (d_z phi + conj(d_zbar phi)) / 2.
    const double uk[3] = {s.u.x, s.u.y, s.u.z};
    cplx cartan{0.0, 0.0};
    for (int k = 0; k < 3; ++k) cartan += uk[k] * 0.5 * (d.dz[k] + std::conj(d.dzbar[k]));
    s.cartan = cartan;

    const cplx expected = -0.5 * I *
                          (v.second / v.first -
                           2.0 * v.first * std::conj(v.value) / (1.0 + std::norm(v.value)) + 1.0 / z);
    s.residuals.cartan = std::abs(cartan - expected);
    s.residuals.orthonormality = std::max({std::abs(s.u.norm() - 1.0), std::abs(s.v.norm() - 1.0),
                                           std::abs(s.n.norm() - 1.0), std::abs(s.u.dot(s.v)),
                                           std::abs(s.u.dot(s.n)), std::abs(s.v.dot(s.n))});
    return s;
}

FrameSample frame_at(const AnalyticDiskMap& f, cplx z, int branch) {
    return frame_from_values(z, f.eval(z), branch);
}

cplx cartan_residual(const AnalyticDiskMap& f, cplx z) {
    const MapValue v = f.eval(z);
    const FrameSample s = frame_from_values(z, v, 1);
    return s.cartan +
           0.5 * I *
               (v.second / v.first - 2.0 * v.first * std::conj(v.value) / (1.0 + std::norm(v.value)) +
                1.0 / z);
}

NullVector frame_vector(const AnalyticDiskMap& f, cplx z, int branch) {
    return frame_derivatives(z, f.eval(z), branch).phi;
}

std::vector<double> liouville_residual(const AnalyticDiskMap& f, const std::vector<cplx>& points,
                                       double h) {
    if (!(h > 0.0)) throw Error(ErrorKind::invalid_parameter, "grid spacing must be positive");
    std::vector<double> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const cplx z = points[i];
        if (std::abs(z) + h > AnalyticDiskMap::default_radius) {
            throw Error(ErrorKind::out_of_radius, "Liouville stencil leaves the evaluation radius");
        }
        const double centre = mu_at(f, z);
        const double lap = (mu_at(f, z + h) + mu_at(f, z - h) + mu_at(f, z + I * h) +
                            mu_at(f, z - I * h) - 4.0 * centre) /
                           (h * h);
        out[i] = lap + std::exp(2.0 * centre);
    }
    return out;
}

HarmonicityResidual harmonicity_residuals(const AnalyticDiskMap& f, cplx z, double h, int branch) {
    if (!(h > 0.0) || std::abs(z) < 10.0 * h || std::abs(z) + h > AnalyticDiskMap::default_radius) {
        throw Error(ErrorKind::stencil_out_of_domain,
                    "harmonicity stencil must stay inside the disk and 10h away from 0");
    }
    const NullVector c = frame_vector(f, z, branch);
    const NullVector e = frame_vector(f, z + h, branch);
    const NullVector w = frame_vector(f, z - h, branch);
    const NullVector n = frame_vector(f, z + I * h, branch);
    const NullVector s = frame_vector(f, z - I * h, branch);
    NullVector lap;
    for (int k = 0; k < 3; ++k) lap[k] = (e[k] + w[k] + n[k] + s[k] - 4.0 * c[k]) / (h * h);
    const cplx with_phi = bilinear(lap, c);
    const cplx with_conj = hermitian(lap, c);
    return {with_phi.imag(), with_conj.imag(), with_conj.real()};
}

std::vector<FrameSample> frame_grid(const AnalyticDiskMap& f, const std::vector<cplx>& points,
                                    double h) {
    std::vector<FrameSample> out(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        FrameSample s = frame_at(f, points[i]);
        s.residuals.liouville = std::abs(liouville_residual(f, {points[i]}, h)[0]);
        const HarmonicityResidual hr = harmonicity_residuals(f, points[i], h);
        s.residuals.harmonicity_phi = std::abs(hr.phi);
        s.residuals.harmonicity_phi_bar = std::abs(hr.phi_bar);
        out[i] = s;
    });
    return out;
}

namespace {

void require_eval_radius(double r) {
    if (!(r > 0.0 && r <= AnalyticDiskMap::default_radius)) {
        throw Error(ErrorKind::out_of_radius, "evaluation radius must lie in (0, 1 - 1e-6]");
    }
}

double curvature_at(const AnalyticDiskMap& f, cplx z) {
    const MapValue v = f.eval(z);
    require_nonvanishing(v);
    return (z * v.second / v.first - 2.0 * z * v.first * std::conj(v.value) / (1.0 + std::norm(v.value)))
               .real() +
           1.0;
}

}  // namespace

CurvatureTrace geodesic_curvature_disk(const AnalyticDiskMap& f, std::size_t n_angles,
                                       double r_eval) {
    require_eval_radius(r_eval);
    if (n_angles < 2) throw Error(ErrorKind::invalid_parameter, "need at least two angles");
    CurvatureTrace trace;
    trace.radius = r_eval;
    trace.angles.resize(n_angles);
    trace.k.resize(n_angles);
    for (std::size_t j = 0; j < n_angles; ++j) {
        const double theta = two_pi * static_cast<double>(j) / static_cast<double>(n_angles);
        trace.angles[j] = theta;
        trace.k[j] = curvature_at(f, std::polar(r_eval, theta));
    }
    trace.sobolev_minus_half = sobolev_seminorm(BoundaryFunction::from_real(trace.k), -0.5);
    return trace;
}

std::vector<double> geodesic_curvature_halfplane(const std::vector<cplx>& pre_schwarzian) {
    std::vector<double> k(pre_schwarzian.size());
    std::transform(pre_schwarzian.begin(), pre_schwarzian.end(), k.begin(),
                   [](cplx p) { return p.imag(); });
    return k;
}

std::vector<double> neumann_residual(const AnalyticDiskMap& f, std::size_t n_angles, double r_eval,
                                     double h) {
    if (!(h > 0.0) || !(r_eval > 0.0) || r_eval + 2.0 * h > AnalyticDiskMap::default_radius) {
        throw Error(ErrorKind::out_of_radius, "Neumann stencil r, r+h, r+2h must stay inside the disk");
    }
    std::vector<double> out(n_angles);
    for (std::size_t j = 0; j < n_angles; ++j) {
        const cplx e = std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(n_angles));
        const double m0 = mu_at(f, r_eval * e);
        const double m1 = mu_at(f, (r_eval + h) * e);
        const double m2 = mu_at(f, (r_eval + 2.0 * h) * e);
        const double dr = (-3.0 * m0 + 4.0 * m1 - m2) / (2.0 * h);
        // d_r mu = (k - 1) / r holds on every circle, and is the Neumann condition at r = 1.
        out[j] = dr - (curvature_at(f, r_eval * e) - 1.0) / r_eval;
    }
    return out;
}

cplx spiral_pre_schwarzian(cplx z) {
    const cplx l = std::log(z);
    return I * (l + I - 1.0) / (z * l * (l + I));
}

double spiral_pre_schwarzian_norm2(cplx z) {
    const double lr = std::log(std::abs(z));
    const double a = std::arg(z);
    const double num = (lr - 1.0) * (lr - 1.0) + (1.0 + a) * (1.0 + a);
    const double den = std::norm(z) * (lr * lr + a * a) * (lr * lr + (1.0 + a) * (1.0 + a));
    return num / den;
}

double spiral_curvature(double t) {
    const double l = std::log(t);
    return 1.0 / (t * l) - 1.0 / (t * (1.0 + l * l));
}

double spiral_bound() {
    const double l2 = std::log(2.0);
    return 4.0 * pi / l2 + 4.0 * pi / (3.0 * l2 * l2);
}

double spiral_diagnostics(double eps) {
    if (!(eps > 0.0 && eps <= 0.5)) {
        throw Error(ErrorKind::invalid_parameter, "spiral diagnostics require 0 < eps <= 1/2");
    }
    // r = e^s turns dA into r^2 ds dtheta and spreads the 1/(r log r)^2 growth evenly in s.
    const double s_lo = std::log(1e-8);
    const double s_hi = std::log(eps);
    constexpr int panels = 32;
    std::vector<double> sx;
    std::vector<double> sw;
    std::vector<double> tx;
    std::vector<double> tw;
    gauss_legendre(64, 0.0, pi, tx, tw);
    CompensatedSum sum;
    for (int p = 0; p < panels; ++p) {
        const double a = s_lo + (s_hi - s_lo) * p / panels;
        const double b = s_lo + (s_hi - s_lo) * (p + 1) / panels;
        gauss_legendre(16, a, b, sx, sw);
        for (std::size_t i = 0; i < sx.size(); ++i) {
            const double r = std::exp(sx[i]);
            for (std::size_t j = 0; j < tx.size(); ++j) {
                const cplx z = std::polar(r, tx[j]);
                sum.add(sw[i] * tw[j] * r * r * std::norm(spiral_pre_schwarzian(z)));
            }
        }
    }
    return sum.value();
}

}  // namespace loewner
