#pragma once

#include <array>
#include <complex>
#include <limits>
#include <vector>

#include "loewner/conformal.hpp"
#include "loewner/geometry.hpp"

namespace loewner {

inline constexpr double frame_exclusion_radius = 1e-6;

struct FrameResiduals {
    // max of ||u|-1|, ||v|-1|, ||n|-1|, |<u,v>|, |<u,n>|, |<v,n>|.
    double orthonormality = 0.0;
    double cartan = 0.0;
    // Finite-difference residuals; NaN until computed on a grid.
    double liouville = std::numeric_limits<double>::quiet_NaN();
    double harmonicity_phi = std::numeric_limits<double>::quiet_NaN();
    double harmonicity_phi_bar = std::numeric_limits<double>::quiet_NaN();
};

// Moving frame (u, v) with normal n at one disk point, pushed to the sphere by the map.
struct FrameSample {
    cplx z;
    SpherePoint u;
    SpherePoint v;
    SpherePoint n;
    double mu = 0.0;
    // <u, d_z v>.
    cplx cartan;
    FrameResiduals residuals;
};

using NullVector = std::array<cplx, 3>;

// ((1 - w^2), i (1 + w^2), 2 w) / (1 + |w|^2): <psi, psi> = 0 and |psi|^2 = 2.
NullVector null_vector(cplx w);
// Complex bilinear pairing sum a_k b_k.
cplx bilinear(const NullVector& a, const NullVector& b);
// Hermitian pairing sum a_k conj(b_k).
cplx hermitian(const NullVector& a, const NullVector& b);

// log|f'| - log(1 + |f|^2) + log 2.
double mu_of(const AnalyticDiskMap& f, cplx z);
double mu_from_values(const MapValue& v);

// branch = +1 or -1 selects chi or -chi.
FrameSample frame_at(const AnalyticDiskMap& f, cplx z, int branch = 1);
FrameSample frame_from_values(cplx z, const MapValue& v, int branch = 1);

// <u, d_z v> + (i/2)(f''/f' - 2 f' conj(f)/(1+|f|^2) + 1/z).
cplx cartan_residual(const AnalyticDiskMap& f, cplx z);

// phi = chi psi(f) as a complex 3-vector.
NullVector frame_vector(const AnalyticDiskMap& f, cplx z, int branch = 1);

// Five-point Laplacian of mu plus e^{2 mu} at each point.
std::vector<double> liouville_residual(const AnalyticDiskMap& f, const std::vector<cplx>& points,
                                       double h);

struct HarmonicityResidual {
    double phi = 0.0;      // Im <Lap phi, phi>
    double phi_bar = 0.0;  // Im <Lap phi, conj phi>
    double re_phi_bar = 0.0;
};
HarmonicityResidual harmonicity_residuals(const AnalyticDiskMap& f, cplx z, double h, int branch = 1);

// Frames on a set of points with every residual populated.
std::vector<FrameSample> frame_grid(const AnalyticDiskMap& f, const std::vector<cplx>& points,
                                    double h);

struct CurvatureTrace {
    double radius = 0.0;
    std::vector<double> angles;
    std::vector<double> k;
    double sobolev_minus_half = 0.0;
};

// k = Re(z f''/f' - 2 z f' conj(f)/(1 + |f|^2)) + 1 on the circle |z| = r_eval.
CurvatureTrace geodesic_curvature_disk(const AnalyticDiskMap& f, std::size_t n_angles,
                                       double r_eval = AnalyticDiskMap::default_radius);

// Boundary curvature of the image of a half-plane: Im(f''/f') at real points.
std::vector<double> geodesic_curvature_halfplane(const std::vector<cplx>& pre_schwarzian);

// One-sided second-order d_r mu minus (k - 1)/r at each angle.
std::vector<double> neumann_residual(const AnalyticDiskMap& f, std::size_t n_angles, double r_eval,
                                     double h);

// The spiral z e^{i log log z} on the upper half-plane.
cplx spiral_pre_schwarzian(cplx z);
// |f''/f'|^2 from the moduli of log z, log z + i and log z + i - 1.
double spiral_pre_schwarzian_norm2(cplx z);
// Im(f''/f') on the positive axis.
double spiral_curvature(double t);
// 4 pi / log 2 + 4 pi / (3 log^2 2).
double spiral_bound();
// Integral of |f''/f'|^2 over {1e-8 < |z| < eps, 0 < arg z < pi}.
double spiral_diagnostics(double eps);

}  // namespace loewner
