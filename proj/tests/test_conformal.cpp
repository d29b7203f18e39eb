#include <cmath>

#include <gtest/gtest.h>

#include "loewner/conformal.hpp"
#include "loewner/energy.hpp"
#include "loewner/errors.hpp"
#include "loewner/quadrature.hpp"

using namespace loewner;

namespace {

template <typename F>
void expect_error(ErrorKind kind, F&& fn) {
    try {
        fn();
        ADD_FAILURE() << "expected " << to_string(kind);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

SolverOptions tight() {
    SolverOptions o;
    o.tol = 1e-12;
    return o;
}

}  // namespace

TEST(Eval, IdentityMap) {
    const AnalyticDiskMap id({0.0, 1.0});
    const MapValue v = eval(id, 0.3);
    EXPECT_NEAR(std::abs(v.value - 0.3), 0.0, 1e-16);
    EXPECT_NEAR(std::abs(v.first - 1.0), 0.0, 1e-16);
    EXPECT_NEAR(std::abs(v.second), 0.0, 1e-16);
    EXPECT_EQ(v.tail_bound, 0.0);
}

TEST(Eval, CubicPerturbation) {
    const AnalyticDiskMap f({0.0, 1.0, 0.0, 0.1});
    const MapValue v = eval(f, 0.5);
    EXPECT_NEAR(std::abs(v.value - 0.5125), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(v.first - 1.075), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(v.second - 0.3), 0.0, 1e-15);
}

TEST(Eval, OutsideRadiusRejected) {
    const AnalyticDiskMap id({0.0, 1.0});
    expect_error(ErrorKind::out_of_radius, [&] { eval(id, 1.0); });
    expect_error(ErrorKind::out_of_radius, [&] { eval(id, 0.6, 0.5); });
}

TEST(Eval, DeflatedQuotientsAreRegularAtZero) {
    const AnalyticDiskMap f({0.0, 2.0, 0.3, 0.1});
    // f/z -> a1 and f'/f - 1/z -> a2/a1 at 0.
    EXPECT_NEAR(std::abs(f.quotient(0.0) - 2.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f.log_derivative_remainder(0.0) - 0.15), 0.0, 1e-15);
    const cplx z{0.3, -0.4};
    const MapValue v = f.eval(z);
    EXPECT_NEAR(std::abs(f.log_derivative_remainder(z) - (v.first / v.value - 1.0 / z)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(f.quotient(z) - v.value / z), 0.0, 1e-15);
    const AnalyticDiskMap off({0.5, 1.0});
    expect_error(ErrorKind::nonzero_constant_term, [&] { off.log_derivative_remainder(0.1); });
}

TEST(Solver, CircleAboutZeroIsIdentity) {
    const AnalyticDiskMap f = solve_interior_map(make_family(CurveKind::circle, {}), 0.0);
    ASSERT_GE(f.taylor().size(), 2u);
    EXPECT_NEAR(std::abs(f.taylor()[1] - 1.0), 0.0, 1e-12);
    for (std::size_t k = 0; k < f.taylor().size(); ++k) {
        if (k != 1) EXPECT_LT(std::abs(f.taylor()[k]), 1e-12) << "k = " << k;
    }
    // Only rounding noise is dropped from the series.
    EXPECT_LT(f.tail_bound(), 1e-14);
}

TEST(Solver, TranslatedCircleAboutItsCenter) {
    const cplx c{1.0, 1.0};
    const ParametricCurve curve = translate_curve(make_family(CurveKind::circle, {}), c);
    const AnalyticDiskMap f = solve_interior_map(curve, c);
    EXPECT_NEAR(std::abs(f.center() - c), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(f.taylor()[1] - 1.0), 0.0, 1e-12);
    for (std::size_t k = 2; k < f.taylor().size(); ++k) EXPECT_LT(std::abs(f.taylor()[k]), 1e-12);
}

TEST(Solver, EllipseBoundaryResidual) {
    const ParametricCurve curve = make_family(CurveKind::ellipse, {0.2});
    const AnalyticDiskMap f = solve_interior_map(curve, 0.0);
    EXPECT_LT(f.boundary_residual(), 1e-10);
    EXPECT_TRUE(f.derivative_real_positive());
    // Independent check against the curve's own parametrization.
    const auto& u = f.boundary_correspondence();
    ASSERT_EQ(u.size(), 1024u);
    double worst = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const cplx on_circle = f.series(std::polar(1.0, two_pi * k / u.size())).value;
        worst = std::max(worst, std::abs(on_circle - curve.point(f.orientation_sign() * u[k])));
    }
    EXPECT_LT(worst, 1e-10);
}

TEST(Solver, CorrespondenceStrictlyIncreasing) {
    // rho = 0.5 crowds enough that its series needs N = 8192 to reach 1e-8 on the boundary.
    for (const auto& [rho, n] : {std::pair{0.1, 1024}, std::pair{0.3, 1024}, std::pair{0.5, 8192}}) {
        const auto nodes = static_cast<std::size_t>(n);
        const AnalyticDiskMap f =
            solve_interior_map(make_family(CurveKind::ellipse, {rho}, nodes), 0.0, {nodes, 1e-8, 200});
        const auto& u = f.boundary_correspondence();
        for (std::size_t k = 1; k < u.size(); ++k) EXPECT_GT(u[k], u[k - 1]);
        EXPECT_LT(u.back() - u.front(), two_pi);
    }
}

TEST(Solver, RecoversExplicitPolynomial) {
    const std::vector<cplx> p{0.0, 1.0, cplx{0.05, 0.02}, 0.0, cplx{-0.03, 0.01}};
    const ParametricCurve curve = make_power_series_curve(p);
    const AnalyticDiskMap f = solve_interior_map(curve, 0.0, tight());
    // The solved map is normalized with f'(0) > 0, so p is already in that normalization.
    for (std::size_t k = 0; k < p.size(); ++k) {
        EXPECT_NEAR(std::abs(f.taylor()[k] - p[k]), 0.0, 1e-8) << "k = " << k;
    }
    for (std::size_t k = p.size(); k < f.taylor().size(); ++k) EXPECT_LT(std::abs(f.taylor()[k]), 1e-8);
}

TEST(Solver, CenterOutsideRejected) {
    const ParametricCurve curve = make_family(CurveKind::circle, {});
    expect_error(ErrorKind::invalid_parameter, [&] { solve_interior_map(curve, 2.0); });
}

TEST(Solver, IterationCapReported) {
    SolverOptions o;
    o.max_iterations = 2;
    expect_error(ErrorKind::no_convergence,
                 [&] { solve_interior_map(make_family(CurveKind::ellipse, {0.4}), 0.0, o); });
}

TEST(Solver, NotStarLikeRejected) {
    // A thin crescent-like curve whose radial function about this center is multivalued.
    std::vector<cplx> coeffs(9, 0.0);
    coeffs[4 + 1] = 1.0;
    coeffs[4 - 2] = 0.45;
    const ParametricCurve curve = make_fourier_curve(coeffs, 1024);
    expect_error(ErrorKind::not_star_like, [&] { solve_interior_map(curve, cplx{-0.5, 0.0}); });
}

TEST(Exterior, UnitCircleGivesIdentity) {
    const AnalyticDiskMap g = solve_exterior_via_inversion(make_family(CurveKind::circle, {}));
    EXPECT_EQ(g.role(), MapRole::inverted_exterior);
    EXPECT_NEAR(std::abs(g.taylor()[1] - 1.0), 0.0, 1e-12);
    EXPECT_LT(std::abs(g.center()), 1e-14);
}

TEST(Exterior, CircleOfRadiusTwo) {
    const AnalyticDiskMap g = solve_exterior_via_inversion(make_family(CurveKind::circle, {2.0}));
    EXPECT_NEAR(std::abs(g.derivative_at_center()), 0.5, 1e-12);
    EXPECT_NEAR(1.0 / std::abs(g.derivative_at_center()), 2.0, 1e-12);
}

TEST(Exterior, EllipseMatchesJoukowskiInverse) {
    // g(z) = z + rho/z, so g~(w) = w / (1 + rho w^2) = sum (-rho)^k w^{2k+1}.
    const double rho = 0.2;
    const AnalyticDiskMap g = solve_exterior_via_inversion(make_family(CurveKind::ellipse, {rho}), tight());
    EXPECT_NEAR(1.0 / std::abs(g.derivative_at_center()), 1.0, 1e-8);
    double expected = 1.0;
    for (std::size_t k = 1; k < 30 && k < g.taylor().size(); k += 2) {
        EXPECT_NEAR(std::abs(g.taylor()[k] - expected), 0.0, 1e-10) << "k = " << k;
        if (k + 1 < g.taylor().size()) EXPECT_LT(std::abs(g.taylor()[k + 1]), 1e-10);
        expected *= -rho;
    }
}

TEST(Exterior, CurveThroughOriginRejected) {
    const ParametricCurve c = translate_curve(make_family(CurveKind::circle, {}), 1.0);
    expect_error(ErrorKind::curve_through_origin, [&] { solve_exterior_via_inversion(c); });
}

TEST(Exterior, PreSchwarzianIdentityThroughInversion) {
    // Left: disk integral of |g~''/g~'|^2. Right: exterior integral of |g''/g' - 2g'/g + 2/z|^2 with
    // g = 1/g~(1/z) differentiated by the chain rule here, independently of the energy module.
    const ParametricCurve curve = make_family(CurveKind::ellipse, {0.3});
    const AnalyticDiskMap g = solve_exterior_via_inversion(curve);
    const DiskQuadrature rule = disk_rule();
    const double left = integrate_disk(
        [&](cplx w) {
            const MapValue v = g.eval(w, 1.0);
            return std::norm(v.second / v.first);
        },
        rule);
    const double right = integrate_exterior(
        [&](cplx z) {
            const cplx w = 1.0 / z;
            const MapValue v = g.eval(w, 1.0);
            const cplx G = v.value, G1 = v.first, G2 = v.second;
            const cplx gz = 1.0 / G;
            const cplx g1 = G1 * w * w / (G * G);
            const cplx g2 = -w * w * (G2 * w * w / (G * G) + 2.0 * w * G1 / (G * G) - 2.0 * G1 * G1 * w * w / (G * G * G));
            return std::norm(g2 / g1 - 2.0 * g1 / gz + 2.0 / z);
        },
        rule);
    EXPECT_NEAR(left, right, 1e-6 * std::abs(left));
    EXPECT_GT(left, 0.0);
}

TEST(Shrink, IdentityIsFixed) {
    const AnalyticDiskMap f = shrink_map(AnalyticDiskMap({0.0, 1.0}), 0.1);
    ASSERT_EQ(f.taylor().size(), 2u);
    EXPECT_EQ(f.taylor()[1], cplx(1.0));
}

TEST(Shrink, CoefficientScaling) {
    const AnalyticDiskMap f = shrink_map(AnalyticDiskMap({0.0, 1.0, 0.0, 0.0, 0.0, 0.1}), 0.01);
    EXPECT_NEAR(std::abs(f.taylor()[5] - 0.1 * std::pow(0.99, 4)), 0.0, 1e-16);
    EXPECT_EQ(f.derivative_at_center(), cplx(1.0));
}

TEST(Shrink, NonzeroConstantRejected) {
    expect_error(ErrorKind::nonzero_constant_term, [] { shrink_map(AnalyticDiskMap({0.2, 1.0}), 0.1); });
}

TEST(Welding, CircleIsRigidRotation) {
    const ParametricCurve c = make_family(CurveKind::circle, {});
    const AnalyticDiskMap f = solve_interior_map(c, 0.0);
    const AnalyticDiskMap g = solve_exterior_via_inversion(c);
    const Welding w = welding(f, g);
    ASSERT_EQ(w.lift.size(), 1024u);
    const double offset = w.lift[0];
    for (std::size_t k = 0; k < w.lift.size(); ++k) {
        EXPECT_NEAR(w.lift[k] - two_pi * k / 1024.0, offset, 1e-10);
    }
    EXPECT_LT(sobolev_seminorm(w.log_derivative, 0.5), 1e-10);
}

TEST(Welding, EllipseLiftIncreasing) {
    const ParametricCurve c = make_family(CurveKind::ellipse, {0.2});
    const Welding w = welding(solve_interior_map(c, 0.0), solve_exterior_via_inversion(c));
    for (std::size_t k = 1; k < w.lift.size(); ++k) EXPECT_GT(w.lift[k], w.lift[k - 1]);
    EXPECT_NEAR(w.lift.back() - w.lift.front(), two_pi * (1.0 - 1.0 / w.lift.size()), 0.5);
    for (const double d : w.derivative) EXPECT_GT(d, 0.0);
    const double s = sobolev_seminorm(w.log_derivative, 0.5);
    EXPECT_TRUE(std::isfinite(s));
    EXPECT_GT(s, 0.0);
}

TEST(Welding, MismatchedCurvesRejected) {
    const ParametricCurve a = make_family(CurveKind::ellipse, {0.2});
    const ParametricCurve b = make_family(CurveKind::ellipse, {0.3});
    expect_error(ErrorKind::mismatched_curve,
                 [&] { welding(solve_interior_map(a, 0.0), solve_exterior_via_inversion(b)); });
}

TEST(Univalence, SolvedEllipsePasses) {
    const UnivalenceCheck check = check_univalence(solve_interior_map(make_family(CurveKind::ellipse, {0.3}), 0.0));
    EXPECT_TRUE(check.ok());
    EXPECT_EQ(check.derivative_zeros, 0);
}

TEST(Univalence, DerivativeZeroInsideDetected) {
    const UnivalenceCheck check = check_univalence(AnalyticDiskMap({0.0, 1.0, 1.0}));
    EXPECT_FALSE(check.ok());
    EXPECT_EQ(check.derivative_zeros, 1);
}

TEST(Solver, DoublingNodesMovesS1WithinTailBound) {
    const ParametricCurve c = make_family(CurveKind::ellipse, {0.2});
    EnergyConfig a;
    EnergyConfig b;
    b.solver.nodes = 2048;
    const EnergyReport ra = full_report(c, a);
    const EnergyReport rb = full_report(c.resampled(2048), b);
    const double tail = std::max(ra.metadata.interior.tail_bound, ra.metadata.exterior.tail_bound);
    EXPECT_LT(std::abs(ra.s1 - rb.s1), 10.0 * tail);
}
