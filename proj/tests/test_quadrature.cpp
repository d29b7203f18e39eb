#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "loewner/conformal.hpp"
#include "loewner/errors.hpp"
#include "loewner/frames.hpp"
#include "loewner/quadrature.hpp"

using namespace loewner;

namespace {

const double ln2 = std::log(2.0);

double hemisphere_density(cplx z) {
    const double d = 1.0 + std::norm(z);
    return 4.0 / (d * d);
}

}  // namespace

TEST(DiskRule, InvariantsHold) {
    const DiskQuadrature rule = disk_rule();
    CompensatedSum total;
    for (const auto& n : rule.nodes()) {
        total.add(n.weight);
        EXPECT_GT(std::abs(n.z), 0.0);
        EXPECT_LT(std::abs(n.z), 1.0);
    }
    EXPECT_NEAR(total.value(), pi, 1e-12);
    EXPECT_EQ(rule.size(), 8u * 16u * 512u);
    EXPECT_EQ(rule.panels().size(), 8u);
}

TEST(DiskRule, PanelsGradedTowardBothEnds) {
    const DiskQuadrature rule = disk_rule();
    const auto& p = rule.panels();
    EXPECT_DOUBLE_EQ(p.front().lo, 0.0);
    EXPECT_DOUBLE_EQ(p.front().hi, 1.0 / 16.0);
    EXPECT_DOUBLE_EQ(p.back().hi, 1.0);
    EXPECT_DOUBLE_EQ(p.back().lo, 1.0 - 1.0 / 16.0);
    for (std::size_t i = 1; i < p.size(); ++i) EXPECT_DOUBLE_EQ(p[i].lo, p[i - 1].hi);
}

TEST(DiskRule, InvalidCountsRejected) {
    EXPECT_THROW(disk_rule(0, 16, 512), Error);
    EXPECT_THROW(disk_rule(8, 0, 512), Error);
    EXPECT_THROW(disk_rule(8, 16, 0), Error);
}

TEST(IntegrateDisk, Constant) {
    EXPECT_NEAR(integrate_disk([](cplx) { return 1.0; }, disk_rule()), pi, 1e-12);
}

TEST(IntegrateDisk, HemisphereArea) {
    EXPECT_NEAR(integrate_disk(hemisphere_density, disk_rule()), two_pi, 1e-12);
}

TEST(IntegrateDisk, SphericalDirichletConstant) {
    const double v = integrate_disk(
        [](cplx z) {
            const double d = 1.0 + std::norm(z);
            return 4.0 * std::norm(z) / (d * d);
        },
        disk_rule());
    EXPECT_NEAR(v, 4.0 * pi * ln2 - 2.0 * pi, 1e-10);
}

TEST(IntegrateDisk, RadialMoments) {
    const DiskQuadrature rule = disk_rule();
    for (int k = 1; k <= 5; ++k) {
        const double v = integrate_disk([k](cplx z) { return std::pow(std::norm(z), k); }, rule);
        EXPECT_NEAR(v, pi / (k + 1), 1e-12) << "k = " << k;
    }
}

TEST(IntegrateDisk, MonomialExactness) {
    const DiskQuadrature rule = disk_rule();
    for (int j = 0; j <= 15; ++j) {
        for (int k = 0; j + k <= 31; ++k) {
            const double re = integrate_disk([&](cplx z) { return (std::pow(z, j) * std::pow(std::conj(z), k)).real(); }, rule);
            const double expected = j == k ? pi / (j + 1) : 0.0;
            EXPECT_NEAR(re, expected, 1e-12) << j << "," << k;
        }
    }
}

TEST(IntegrateDisk, PreSchwarzianMatchesRefinedRule) {
    const AnalyticDiskMap f({0.0, 1.0, 0.05});
    auto integrand = [&](cplx z) {
        const MapValue v = f.eval(z, 1.0);
        return std::norm(v.second / v.first);
    };
    const double base = integrate_disk(integrand, disk_rule());
    const double refined = integrate_disk(integrand, disk_rule(32, 16, 2048));
    EXPECT_NEAR(base, refined, 1e-9);
    // Closed form: the series of |2 eps / (1 + 2 eps z)|^2 sums to -pi log(1 - 4 eps^2).
    EXPECT_NEAR(base, -pi * std::log(1.0 - 4.0 * 0.05 * 0.05), 1e-12);
}

TEST(IntegrateDisk, NonFiniteSampleReportsNode) {
    try {
        integrate_disk([](cplx z) { return z.real() > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0; },
                       disk_rule());
        ADD_FAILURE() << "expected non-finite-sample";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::non_finite_sample);
        EXPECT_NE(std::string(e.what()).find("z ="), std::string::npos);
    }
}

TEST(IntegrateDisk, DeterministicAcrossWorkerCounts) {
    auto f = [](cplx z) { return std::exp(z.real()) * std::cos(3.0 * z.imag()) / (1.0 + std::norm(z)); };
    set_worker_count(1);
    const double one = integrate_disk(f, disk_rule());
    set_worker_count(4);
    const double four = integrate_disk(f, disk_rule());
    set_worker_count(0);
    EXPECT_EQ(one, four);
}

TEST(IntegrateLogWeighted, HemisphereGreenConstant) {
    EXPECT_NEAR(integrate_log_weighted(hemisphere_density, disk_rule()), -2.0 * pi * ln2, 1e-9);
}

TEST(IntegrateLogWeighted, Constant) {
    EXPECT_NEAR(integrate_log_weighted([](cplx) { return 1.0; }, disk_rule()), -pi / 2.0, 1e-9);
}

TEST(IntegrateLogWeighted, DoubledDensity) {
    const double v = integrate_log_weighted([](cplx z) { return 2.0 * hemisphere_density(z); }, disk_rule());
    EXPECT_NEAR(v, -4.0 * pi * ln2, 1e-9);
}

TEST(IntegrateExterior, InversePower) {
    EXPECT_NEAR(integrate_exterior([](cplx z) { return std::pow(std::abs(z), -6.0); }, disk_rule()), pi / 2.0, 1e-12);
}

TEST(IntegrateExterior, GreenTermChangesSign) {
    const double v = integrate_exterior(
        [](cplx z) { return std::log(std::abs(z)) * hemisphere_density(z); }, disk_rule());
    EXPECT_NEAR(v, 2.0 * pi * ln2, 1e-9);
}

TEST(IntegrateExterior, JoukowskiPreSchwarzian) {
    const double rho = 0.3;
    const double v = integrate_exterior(
        [rho](cplx z) { return std::norm(2.0 * rho / (z * (z * z - rho))); }, disk_rule());
    // Laurent oracle: sum_k 4 rho^{2k+2} 2 pi / (4k + 4).
    double laurent = 0.0;
    for (int k = 0; k < 200; ++k) laurent += 4.0 * std::pow(rho, 2 * k + 2) * two_pi / (4.0 * k + 4.0);
    EXPECT_NEAR(v, laurent, 1e-8);
    EXPECT_NEAR(v, -two_pi * std::log(1.0 - rho * rho), 1e-8);
}

TEST(IntegrateExterior, RandomRationalIntegrands) {
    // |z|^{-2p} (1 + c Re(z^m)/|z|^m) has exterior integral 2 pi / (2p - 2) for p >= 2.
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> pd(3, 8);
    std::uniform_int_distribution<int> md(1, 6);
    std::uniform_real_distribution<double> cd(-1.0, 1.0);
    const DiskQuadrature rule = disk_rule();
    for (int i = 0; i < 20; ++i) {
        const int p = pd(rng);
        const int m = md(rng);
        const double c = cd(rng);
        auto F = [=](cplx z) {
            const double r = std::abs(z);
            return std::pow(r, -2.0 * p) * (1.0 + c * std::pow(z, m).real() / std::pow(r, m));
        };
        const double outer = integrate_exterior(F, rule);
        // Same integral written directly as a disk integral after w = 1/z.
        const double inner = integrate_disk([&](cplx w) { return F(1.0 / w) / std::pow(std::abs(w), 4.0); }, rule);
        EXPECT_NEAR(outer, inner, 1e-10);
        EXPECT_NEAR(outer, two_pi / (2.0 * p - 2.0), 1e-10) << "p = " << p << " m = " << m;
    }
}

TEST(Sobolev, ConstantHasZeroSeminorm) {
    const BoundaryFunction b = BoundaryFunction::from_real(std::vector<double>(64, 3.0));
    EXPECT_EQ(sobolev_seminorm(b, 0.5), 0.0);
    EXPECT_EQ(sobolev_seminorm(b, -0.5), 0.0);
}

TEST(Sobolev, SingleMode) {
    std::vector<cplx> s(64);
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = std::polar(1.0, two_pi * k / 64.0);
    EXPECT_NEAR(sobolev_seminorm(BoundaryFunction(s), 0.5), 1.0, 1e-14);
}

TEST(Sobolev, EllipseCurvatureStableUnderDoubling) {
    const ParametricCurve c = make_family(CurveKind::ellipse, {0.2});
    const AnalyticDiskMap f = solve_interior_map(c, 0.0);
    const AnalyticDiskMap f2 = solve_interior_map(c.resampled(2048), 0.0, {2048, 1e-10, 200});
    const double a = geodesic_curvature_disk(f, 1024).sobolev_minus_half;
    const double b = geodesic_curvature_disk(f2, 2048).sobolev_minus_half;
    EXPECT_TRUE(std::isfinite(a));
    EXPECT_NEAR(a, b, 1e-6 * std::abs(b));
}

TEST(GaussLegendre, IntegratesPolynomials) {
    std::vector<double> x, w;
    gauss_legendre(8, 0.0, 2.0, x, w);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], 15);
    EXPECT_NEAR(s, std::pow(2.0, 16) / 16.0, 1e-9);
}
