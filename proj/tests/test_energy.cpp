#include <cmath>

#include <gtest/gtest.h>

#include "loewner/energy.hpp"
#include "loewner/errors.hpp"

using namespace loewner;

namespace {

const double ln2 = std::log(2.0);

template <typename F>
void expect_error(ErrorKind kind, F&& fn) {
    try {
        fn();
        ADD_FAILURE() << "expected " << to_string(kind);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

const DiskQuadrature& rule() {
    static const DiskQuadrature r = disk_rule();
    return r;
}

CurveMaps maps_for(const ParametricCurve& c) { return solve_curve_maps(c); }

// Interior pre-Schwarzian integral of z + eps z^n in closed form: -(n-1) pi log(1 - n^2 eps^2).
double power_interior_oracle(double eps, int n) { return -(n - 1) * pi * std::log(1.0 - n * n * eps * eps); }

double sum_of_terms(const FormulaResult& r) {
    double s = 0.0;
    for (const auto& t : r.terms) s += t.value;
    return s;
}

}  // namespace

TEST(S1, CircleIsZero) {
    const AnalyticDiskMap f({0.0, 1.0});
    const AnalyticDiskMap g({0.0, 1.0}, MapRole::inverted_exterior);
    const FormulaResult r = s1(f, g, rule());
    EXPECT_EQ(r.value, 0.0);
}

TEST(S1, ScaledCircleIsZero) {
    const double radius = 2.0;
    const AnalyticDiskMap f({0.0, radius});
    const AnalyticDiskMap g({0.0, 1.0 / radius}, MapRole::inverted_exterior);
    const FormulaResult r = s1(f, g, rule());
    EXPECT_NEAR(r.term("log_derivative_interior"), 4.0 * pi * std::log(radius), 1e-14);
    EXPECT_NEAR(r.term("log_derivative_infinity"), -4.0 * pi * std::log(radius), 1e-14);
    EXPECT_NEAR(r.value, 0.0, 1e-14);
}

TEST(S1, EllipseExteriorTermMatchesClosedForm) {
    const CurveMaps m = maps_for(make_family(CurveKind::ellipse, {0.3}));
    const FormulaResult r = s1(m.interior, m.inverted_exterior, rule());
    EXPECT_NEAR(r.term("exterior_pre_schwarzian"), -two_pi * std::log(1.0 - 0.09), 1e-8);
    // |g'(infinity)| = 1 for the Joukowski map.
    EXPECT_NEAR(r.term("log_derivative_infinity"), 0.0, 1e-8);
}

TEST(S1, PowerSeriesInteriorTermMatchesClosedForm) {
    for (const auto& [eps, n] : {std::pair{0.05, 2}, std::pair{0.1, 3}}) {
        const CurveMaps m = maps_for(make_family(CurveKind::power_series_image, {eps, double(n)}));
        const FormulaResult r = s1(m.interior, m.inverted_exterior, rule());
        EXPECT_NEAR(r.term("interior_pre_schwarzian"), power_interior_oracle(eps, n), 1e-10);
        EXPECT_EQ(r.term("log_derivative_interior"), 0.0);
    }
}

TEST(S1Inverted, CircleIsZero) {
    const AnalyticDiskMap f({0.0, 1.0});
    const AnalyticDiskMap g({0.0, 1.0}, MapRole::inverted_exterior);
    EXPECT_EQ(s1_inverted(f, g, rule()).value, 0.0);
}

TEST(S1Inverted, AgreesWithS1) {
    for (const ParametricCurve& c : {make_family(CurveKind::power_series_image, {0.05, 2}),
                                     make_family(CurveKind::ellipse, {0.2})}) {
        const CurveMaps m = maps_for(c);
        EXPECT_NEAR(s1_inverted(m.interior, m.inverted_exterior, rule()).value,
                    s1(m.interior, m.inverted_exterior, rule()).value, 1e-6);
    }
}

TEST(S1Inverted, RequiresCentredMap) {
    const AnalyticDiskMap f({0.1, 1.0});
    const AnalyticDiskMap g({0.0, 1.0}, MapRole::inverted_exterior);
    expect_error(ErrorKind::nonzero_constant_term, [&] { s1_inverted(f, g, rule()); });
}

TEST(S3, CircleIsZero) {
    const AnalyticDiskMap f({0.0, 1.0});
    const AnalyticDiskMap g({0.0, 1.0}, MapRole::inverted_exterior);
    EXPECT_NEAR(s3(f, g, rule()).value, 0.0, 1e-9);
}

TEST(S3, AgreesWithS1) {
    for (const ParametricCurve& c : {make_family(CurveKind::ellipse, {0.2}),
                                     make_family(CurveKind::power_series_image, {0.1, 3})}) {
        const CurveMaps m = maps_for(c);
        EXPECT_NEAR(s3(m.interior, m.inverted_exterior, rule()).value,
                    s1(m.interior, m.inverted_exterior, rule()).value, 1e-6);
    }
}

TEST(S3, CenterCorrectionForUncentredMap) {
    // The unit circle seen through f(z) = z + c is not a centred map; the constant term
    // -4 pi log(1 + |f(0)|^2) is then active but the total is not asserted.
    const AnalyticDiskMap f({0.2, 1.0});
    const AnalyticDiskMap g({0.0, 1.0}, MapRole::inverted_exterior);
    const FormulaResult r = s3(f, g, rule());
    EXPECT_NEAR(r.term("center_correction"), -4.0 * pi * std::log(1.04), 1e-14);
}

TEST(E0Spherical, CircleBreakdown) {
    const AnalyticDiskMap f({0.0, 1.0});
    const AnalyticDiskMap g({0.0, 1.0}, MapRole::inverted_exterior);
    const FormulaResult r = e0_spherical(f, g, rule());
    for (const char* side : {"interior", "exterior"}) {
        const std::string s = side;
        EXPECT_NEAR(r.term("dirichlet_" + s), 4.0 * pi * ln2 - 2.0 * pi, 1e-10);
        EXPECT_NEAR(r.term("green_" + s), -4.0 * pi * ln2, 1e-9);
        EXPECT_NEAR(r.term("area_" + s), two_pi, 1e-12);
        EXPECT_NEAR(r.term("log_gradient_" + s), 6.0 * pi * ln2, 1e-13);
    }
    EXPECT_NEAR(r.term("normalization"), -12.0 * pi * ln2, 1e-13);
    EXPECT_NEAR(r.value, 0.0, 1e-8);
}

TEST(E0Spherical, AgreesWithS1AndCoversTheSphere) {
    const CurveMaps m = maps_for(make_family(CurveKind::ellipse, {0.2}));
    const FormulaResult r = e0_spherical(m.interior, m.inverted_exterior, rule());
    EXPECT_NEAR(r.value, s1(m.interior, m.inverted_exterior, rule()).value, 1e-5);
    EXPECT_NEAR(r.term("area_interior") + r.term("area_exterior"), 4.0 * pi, 1e-8);
}

TEST(FrameEnergy, CircleIsZeroWithDoubledGreenTerm) {
    const AnalyticDiskMap f({0.0, 1.0});
    const AnalyticDiskMap g({0.0, 1.0}, MapRole::inverted_exterior);
    const FormulaResult r = frame_energy_form(f, g, rule());
    EXPECT_NEAR(r.term("frame_green_interior"), -4.0 * pi * ln2, 1e-9);
    EXPECT_NEAR(r.term("frame_dirichlet_interior"), 4.0 * pi * ln2 - 2.0 * pi, 1e-10);
    EXPECT_NEAR(r.value, 0.0, 1e-8);
}

TEST(FrameEnergy, AgreesWithSpherical) {
    const CurveMaps m = maps_for(make_family(CurveKind::ellipse, {0.2}));
    EXPECT_NEAR(frame_energy_form(m.interior, m.inverted_exterior, rule()).value,
                e0_spherical(m.interior, m.inverted_exterior, rule()).value, 1e-6);
}

TEST(Grunsky, IdentityVanishes) {
    const AnalyticDiskMap f({0.0, 1.0});
    const AnalyticDiskMap g({0.0, 1.0}, MapRole::inverted_exterior);
    EXPECT_LT(std::abs(grunsky_residual(f, g, rule())), 1e-9);
    for (const ParametricCurve& c : {make_family(CurveKind::ellipse, {0.2}),
                                     make_family(CurveKind::power_series_image, {0.05, 2})}) {
        const CurveMaps m = maps_for(c);
        EXPECT_LT(std::abs(grunsky_residual(m.interior, m.inverted_exterior, rule())), 1e-6);
    }
}

TEST(Formulas, ValuesAreSumsOfTerms) {
    const CurveMaps m = maps_for(make_family(CurveKind::ellipse, {0.3}));
    const EnergyContext ctx(m.interior, m.inverted_exterior, rule());
    for (const FormulaResult& r : {s1(ctx), s1_inverted(ctx), s3(ctx), e0_spherical(ctx), frame_energy_form(ctx),
                                   grunsky_identity(ctx)}) {
        EXPECT_EQ(r.value, sum_of_terms(r)) << r.name;
    }
}

TEST(Formulas, MissingTermRejected) {
    const AnalyticDiskMap f({0.0, 1.0});
    const AnalyticDiskMap g({0.0, 1.0}, MapRole::inverted_exterior);
    EXPECT_THROW(s1(f, g, rule()).term("nope"), Error);
}

TEST(Formulas, RotationInvarianceTermByTerm) {
    const CurveMaps m = maps_for(make_family(CurveKind::power_series_image, {0.1, 3}));
    const AnalyticDiskMap rotated = m.interior.rotated(0.7);
    const EnergyContext a(m.interior, m.inverted_exterior, rule());
    const EnergyContext b(rotated, m.inverted_exterior, rule());
    const auto fa = {s1(a), s1_inverted(a), s3(a), e0_spherical(a), frame_energy_form(a)};
    const auto fb = {s1(b), s1_inverted(b), s3(b), e0_spherical(b), frame_energy_form(b)};
    auto ib = fb.begin();
    for (const auto& ra : fa) {
        const auto& rb = *ib++;
        ASSERT_EQ(ra.terms.size(), rb.terms.size());
        for (std::size_t i = 0; i < ra.terms.size(); ++i) {
            EXPECT_NEAR(ra.terms[i].value, rb.terms[i].value, 1e-10) << ra.name << " " << ra.terms[i].name;
        }
    }
}

TEST(Formulas, DegenerateAndMismatchedMapsRejected) {
    const AnalyticDiskMap g({0.0, 1.0}, MapRole::inverted_exterior);
    expect_error(ErrorKind::degenerate_map, [&] { AnalyticDiskMap({0.0, 1e-13}); });
    expect_error(ErrorKind::mismatched_curve, [&] { s1(g, g, rule()); });
    const ParametricCurve a = make_family(CurveKind::ellipse, {0.2});
    const ParametricCurve b = make_family(CurveKind::ellipse, {0.3});
    expect_error(ErrorKind::mismatched_curve,
                 [&] { s1(maps_for(a).interior, maps_for(b).inverted_exterior, rule()); });
    const AnalyticDiskMap uncentred({0.1, 1.0}, MapRole::inverted_exterior);
    expect_error(ErrorKind::nonzero_constant_term, [&] { s1(AnalyticDiskMap({0.0, 1.0}), uncentred, rule()); });
}

TEST(Report, CircleAllZero) {
    const EnergyReport r = full_report(make_family(CurveKind::circle, {}));
    for (const double v : {r.s1, r.s1_inverted, r.s3, r.e0_spherical, r.frame_energy_form}) EXPECT_LT(std::abs(v), 1e-8);
    EXPECT_LT(r.max_residual(), 1e-8);
    EXPECT_EQ(r.residuals.size(), 10u);
}

TEST(Report, EllipseResidualsAndMetadata) {
    const ParametricCurve c = make_family(CurveKind::ellipse, {0.2});
    const EnergyReport r = full_report(c);
    EXPECT_LT(r.max_residual(), 1e-5);
    for (const auto& res : r.residuals) {
        EXPECT_GE(res.value, 0.0);
        const double back = std::abs(r.formula(res.second).value - r.formula(res.first).value);
        EXPECT_EQ(res.value, back);
    }
    EXPECT_EQ(r.metadata.curve_id, c.id());
    EXPECT_EQ(r.metadata.interior.method, "theodorsen");
    EXPECT_EQ(r.metadata.quadrature.n_theta, 512);
    EXPECT_NEAR(r.metadata.spherical_area, 4.0 * pi, 1e-8);
}

TEST(Report, OpenArcRejected) {
    expect_error(ErrorKind::open_curve, [] { full_report(make_family(CurveKind::spiral_arc, {0.5})); });
}

TEST(Report, ExplicitMapUsesTaylorData) {
    const EnergyReport r = full_report(make_family(CurveKind::power_series_image, {0.1, 3}));
    EXPECT_EQ(r.metadata.interior.method, "explicit");
    EXPECT_EQ(r.metadata.interior.degree, 3u);
}

TEST(Report, CenterIndependenceOfSphericalEnergy) {
    const ParametricCurve c = make_family(CurveKind::ellipse, {0.2});
    double first = 0.0;
    bool have = false;
    for (const cplx p : {cplx{0.0, 0.0}, cplx{0.3, 0.0}, cplx{-0.2, 0.1}}) {
        EnergyConfig config;
        config.center = p;
        const double v = full_report(c, config).e0_spherical;
        if (!have) {
            first = v;
            have = true;
        }
        EXPECT_NEAR(v, first, 1e-5);
    }
}

TEST(Report, SmoothingFamilyConverges) {
    const CurveMaps m = maps_for(make_family(CurveKind::power_series_image, {0.1, 3}));
    const double limit = s1(m.interior, m.inverted_exterior, rule()).value;
    double previous = 1e300;
    for (const double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const AnalyticDiskMap fe = shrink_map(m.interior, eps);
        const ParametricCurve image = make_power_series_curve(fe.taylor());
        const AnalyticDiskMap f = interior_map_from_taylor(image);
        const AnalyticDiskMap g = solve_exterior_via_inversion(image);
        const double d = std::abs(s1(f, g, rule()).value - limit);
        EXPECT_LT(d, previous) << "eps = " << eps;
        previous = d;
    }
}

TEST(Report, MobiusInvariance) {
    const ParametricCurve c = translate_curve(make_family(CurveKind::ellipse, {0.2}), 3.0);
    EXPECT_LT(std::abs(full_report(c).s1 - full_report(invert_curve(c)).s1), 1e-5);
}
