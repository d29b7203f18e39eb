#include "loewner/energy.hpp"

#include <chrono>
#include <cmath>

#include "loewner/errors.hpp"
#include "loewner/frames.hpp"

namespace loewner {

namespace {

constexpr cplx I{0.0, 1.0};
const double log2 = std::log(2.0);

FormulaResult assemble(std::string name, std::vector<Term> terms) {
    FormulaResult r{std::move(name), 0.0, std::move(terms)};
    for (const auto& t : r.terms) r.value += t.value;
    return r;
}

bool is_centred(const AnalyticDiskMap& h) {
    return std::abs(h.center()) <= 1e-12 * std::max(1.0, std::abs(h.derivative_at_center()));
}

void require_centred_interior(const EnergyContext& ctx) {
    if (!ctx.interior_centred()) {
        throw Error(ErrorKind::nonzero_constant_term, "this formula requires f(0) = 0");
    }
}

// Quantities of the exterior map g(z) = 1/g~(1/z) at z = 1/w, from the g~ sample at w.
struct ExteriorPoint {
    cplx log_derivative;  // g'/g
    cplx pre_schwarzian;  // g''/g'
    double inv_abs2 = 0.0;  // 1/|g|^2 = |g~|^2
    double density = 0.0;   // |g'|^2 / (1 + |g|^2)^2
};

ExteriorPoint exterior_point(const EnergyContext::Sample& s, cplx w) {
    ExteriorPoint p;
    p.log_derivative = w * (1.0 + w * s.remainder);
    p.pre_schwarzian = -w * w * (s.pre_schwarzian - 2.0 * s.remainder);
    p.inv_abs2 = std::norm(s.value);
    const double w2 = std::norm(w);
    p.density = w2 * w2 * s.density;
    return p;
}

double log_abs_derivative_interior(const EnergyContext& ctx) {
    return std::log(std::abs(ctx.interior().derivative_at_center()));
}

// log|g'(infinity)| = -log|g~'(0)|.
double log_abs_derivative_at_infinity(const EnergyContext& ctx) {
    return -std::log(std::abs(ctx.inverted_exterior().derivative_at_center()));
}

}  // namespace

double FormulaResult::term(const std::string& term_name) const {
    for (const auto& t : terms) {
        if (t.name == term_name) return t.value;
    }
    throw Error(ErrorKind::invalid_parameter, "formula " + name + " has no term " + term_name);
}

EnergyContext::EnergyContext(const AnalyticDiskMap& interior, const AnalyticDiskMap& inverted_exterior,
                             const DiskQuadrature& rule)
    : interior_(&interior), exterior_(&inverted_exterior), rule_(&rule) {
    if (interior.role() != MapRole::interior || inverted_exterior.role() != MapRole::inverted_exterior) {
        throw Error(ErrorKind::mismatched_curve, "expected an interior map and an inverted-exterior map");
    }
    if (!interior.curve_id().empty() && !inverted_exterior.curve_id().empty() &&
        interior.curve_id() != inverted_exterior.curve_id()) {
        throw Error(ErrorKind::mismatched_curve, "maps were solved for different curves");
    }
    for (const auto* h : {&interior, &inverted_exterior}) {
        if (std::abs(h->derivative_at_center()) < 1e-12) {
            throw Error(ErrorKind::degenerate_map, "derivative at the center below 1e-12");
        }
    }
    if (!is_centred(inverted_exterior)) {
        throw Error(ErrorKind::nonzero_constant_term, "the inverted exterior map must fix 0");
    }
    interior_centred_ = is_centred(interior);

    const auto& nodes = rule.nodes();
    f_.resize(nodes.size());
    g_.resize(nodes.size());
    auto fill = [](const AnalyticDiskMap& h, cplx z, bool centred, Sample& s) {
        // Quadrature nodes lie strictly inside the unit disk, where the series converges.
        const MapValue v = h.eval(z, 1.0);
        s.value = v.value;
        s.first = v.first;
        s.second = v.second;
        s.pre_schwarzian = v.second / v.first;
        if (centred) {
            s.quotient = h.quotient(z);
            s.remainder = h.log_derivative_remainder(z);
        }
        const double d = 1.0 + std::norm(v.value);
        s.density = std::norm(v.first) / (d * d);
    };
    parallel_for(nodes.size(), [&](std::size_t i) {
        fill(interior, nodes[i].z, interior_centred_, f_[i]);
        fill(inverted_exterior, nodes[i].z, true, g_[i]);
    });
}

FormulaResult s1(const EnergyContext& ctx) {
    const auto& rule = ctx.rule();
    const auto& f = ctx.interior_samples();
    const auto& g = ctx.exterior_samples();
    const auto& nodes = rule.nodes();
    const double inner = integrate_disk_nodes([&](std::size_t i) { return std::norm(f[i].pre_schwarzian); }, rule);
    const double outer = integrate_exterior_nodes(
        [&](std::size_t i) { return std::norm(exterior_point(g[i], nodes[i].z).pre_schwarzian); }, rule);
    return assemble("s1", {{"interior_pre_schwarzian", inner},
                           {"exterior_pre_schwarzian", outer},
                           {"log_derivative_interior", 4.0 * pi * log_abs_derivative_interior(ctx)},
                           {"log_derivative_infinity", -4.0 * pi * log_abs_derivative_at_infinity(ctx)}});
}

FormulaResult s1_inverted(const EnergyContext& ctx) {
    require_centred_interior(ctx);
    const auto& rule = ctx.rule();
    const auto& f = ctx.interior_samples();
    const auto& g = ctx.exterior_samples();
    const auto& nodes = rule.nodes();
    // f''/f' - 2 f'/f + 2/z = pre - 2 (f'/f - 1/z), regular at 0.
    const double inner = integrate_disk_nodes(
        [&](std::size_t i) { return std::norm(f[i].pre_schwarzian - 2.0 * f[i].remainder); }, rule);
    const double outer = integrate_exterior_nodes(
        [&](std::size_t i) {
            const cplx w = nodes[i].z;
            const ExteriorPoint p = exterior_point(g[i], w);
            return std::norm(p.pre_schwarzian - 2.0 * p.log_derivative + 2.0 * w);
        },
        rule);
    return assemble("s1_inverted",
                    {{"interior_inverted_pre_schwarzian", inner},
                     {"exterior_inverted_pre_schwarzian", outer},
                     {"log_derivative_interior", 4.0 * pi * log_abs_derivative_interior(ctx)},
                     {"log_derivative_infinity", -4.0 * pi * log_abs_derivative_at_infinity(ctx)}});
}

FormulaResult s3(const EnergyContext& ctx) {
    const auto& rule = ctx.rule();
    const auto& f = ctx.interior_samples();
    const auto& g = ctx.exterior_samples();
    const auto& nodes = rule.nodes();
    const double inner = integrate_disk_nodes(
        [&](std::size_t i) {
            const auto& s = f[i];
            return std::norm(s.pre_schwarzian -
                             2.0 * s.first * std::conj(s.value) / (1.0 + std::norm(s.value)));
        },
        rule);
    const double outer = integrate_exterior_nodes(
        [&](std::size_t i) {
            const cplx w = nodes[i].z;
            const ExteriorPoint p = exterior_point(g[i], w);
            // (g'/g) |g|^2 / (1 + |g|^2) = (g'/g) / (1 + 1/|g|^2).
            return std::norm(p.pre_schwarzian - 2.0 * p.log_derivative / (1.0 + p.inv_abs2) + 2.0 * w);
        },
        rule);
    const double green_inner =
        2.0 * integrate_log_weighted_nodes([&](std::size_t i) { return 4.0 * f[i].density; }, rule);
    // On |z| > 1, log|z| = -log|w|.
    const double green_outer =
        -2.0 * integrate_exterior_nodes(
                   [&](std::size_t i) {
                       const cplx w = nodes[i].z;
                       return -std::log(std::abs(w)) * 4.0 * exterior_point(g[i], w).density;
                   },
                   rule);
    const cplx f0 = ctx.interior().center();
    return assemble("s3", {{"interior_spherical_pre_schwarzian", inner},
                           {"exterior_spherical_pre_schwarzian", outer},
                           {"interior_green", green_inner},
                           {"exterior_green", green_outer},
                           {"constant", 4.0 * pi},
                           {"log_derivative_interior", 4.0 * pi * log_abs_derivative_interior(ctx)},
                           {"log_derivative_infinity", -4.0 * pi * log_abs_derivative_at_infinity(ctx)},
                           {"center_correction", -4.0 * pi * std::log1p(std::norm(f0))}});
}

namespace {

// Per-domain pieces of the spherical assembly for the disk map h.
void spherical_domain_terms(const std::vector<EnergyContext::Sample>& h, const AnalyticDiskMap& map,
                            const DiskQuadrature& rule, const std::string& suffix,
                            std::vector<Term>& terms) {
    const double dirichlet = integrate_disk_nodes(
        [&](std::size_t i) {
            const auto& s = h[i];
            return std::norm(s.pre_schwarzian -
                             2.0 * s.first * std::conj(s.value) / (1.0 + std::norm(s.value)));
        },
        rule);
    // |grad f_j|^2 = 8 |h'|^2 / (1 + |h|^2)^2 and the spherical area element is half of it.
    const double green = integrate_log_weighted_nodes([&](std::size_t i) { return 8.0 * h[i].density; }, rule);
    const double area = integrate_disk_nodes([&](std::size_t i) { return 4.0 * h[i].density; }, rule);
    const double gradient = inverse_stereographic_gradient_norm(map.center()) *
                            std::abs(map.derivative_at_center());
    terms.push_back({"dirichlet_" + suffix, dirichlet});
    terms.push_back({"green_" + suffix, green});
    terms.push_back({"area_" + suffix, area});
    terms.push_back({"log_gradient_" + suffix, 4.0 * pi * std::log(gradient)});
}

void frame_domain_terms(const std::vector<EnergyContext::Sample>& h, const AnalyticDiskMap& map,
                        const DiskQuadrature& rule, const std::string& suffix,
                        std::vector<Term>& terms) {
    const auto& nodes = rule.nodes();
    const double dirichlet = integrate_disk_nodes(
        [&](std::size_t i) {
            const auto& s = h[i];
            const cplx z = nodes[i].z;
            if (std::abs(z) < frame_exclusion_radius) {
                return std::norm(s.pre_schwarzian -
                                 2.0 * s.first * std::conj(s.value) / (1.0 + std::norm(s.value)));
            }
            // d_z mu = i <u, d_z v> - 1/(2z), and |grad mu|^2 = 4 |d_z mu|^2.
            const FrameSample frame = frame_from_values(z, {s.value, s.first, s.second, 0.0});
            return 4.0 * std::norm(I * frame.cartan - 0.5 / z);
        },
        rule);
    auto conformal_factor = [&](std::size_t i) {
        const auto& s = h[i];
        return std::exp(2.0 * mu_from_values({s.value, s.first, s.second, 0.0}));
    };
    // Green term 2 int G K dvol pulls back to int log|z| |grad f_j|^2 = int log|z| 2 e^{2 mu}.
    const double green =
        integrate_log_weighted_nodes([&](std::size_t i) { return 2.0 * conformal_factor(i); }, rule);
    const double area = integrate_disk_nodes(conformal_factor, rule);
    const double mu0 = mu_from_values(map.eval(cplx{0.0, 0.0}));
    terms.push_back({"frame_dirichlet_" + suffix, dirichlet});
    terms.push_back({"frame_green_" + suffix, green});
    terms.push_back({"frame_area_" + suffix, area});
    // log|grad f_j(0)| = mu(0) + (1/2) log 2.
    terms.push_back({"frame_log_gradient_" + suffix, 4.0 * pi * (mu0 + 0.5 * log2)});
}

}  // namespace

FormulaResult e0_spherical(const EnergyContext& ctx) {
    std::vector<Term> terms;
    spherical_domain_terms(ctx.interior_samples(), ctx.interior(), ctx.rule(), "interior", terms);
    spherical_domain_terms(ctx.exterior_samples(), ctx.inverted_exterior(), ctx.rule(), "exterior", terms);
    terms.push_back({"normalization", -12.0 * pi * log2});
    return assemble("e0_spherical", std::move(terms));
}

FormulaResult frame_energy_form(const EnergyContext& ctx) {
    std::vector<Term> terms;
    frame_domain_terms(ctx.interior_samples(), ctx.interior(), ctx.rule(), "interior", terms);
    frame_domain_terms(ctx.exterior_samples(), ctx.inverted_exterior(), ctx.rule(), "exterior", terms);
    terms.push_back({"normalization", -12.0 * pi * log2});
    return assemble("frame_energy_form", std::move(terms));
}

FormulaResult grunsky_identity(const EnergyContext& ctx) {
    require_centred_interior(ctx);
    const auto& rule = ctx.rule();
    const auto& f = ctx.interior_samples();
    const auto& g = ctx.exterior_samples();
    const auto& nodes = rule.nodes();
    auto inverted_pre = [&](std::size_t i) { return f[i].pre_schwarzian - 2.0 * f[i].remainder; };
    const double cross_inner = integrate_disk_nodes(
        [&](std::size_t i) {
            const cplx w = nodes[i].z;
            const auto& s = f[i];
            // The cross factor is written with -2/z; its difference from -1/z pairs a holomorphic
            // function with conj(1/z) and integrates to zero.
            const cplx factor = (s.remainder + 1.0 / w) / (1.0 + std::norm(s.value)) - 2.0 / w;
            return 4.0 * (inverted_pre(i) * std::conj(factor)).real();
        },
        rule);
    const double square_inner = integrate_disk_nodes(
        [&](std::size_t i) {
            const auto& s = f[i];
            const double d = 1.0 + std::norm(s.value);
            // (f'/f)/(1+|f|^2) - 1/z = remainder/(1+|f|^2) - conj(f) (f/z)/(1+|f|^2).
            const cplx c = (s.remainder - std::conj(s.value) * s.quotient) / d;
            return 4.0 * std::norm(c);
        },
        rule);
    const double cross_outer = integrate_exterior_nodes(
        [&](std::size_t i) {
            const cplx w = nodes[i].z;
            const ExteriorPoint p = exterior_point(g[i], w);
            const cplx b = p.pre_schwarzian - 2.0 * p.log_derivative + 2.0 * w;
            const cplx d = p.log_derivative * p.inv_abs2 / (1.0 + p.inv_abs2);
            return 4.0 * (b * std::conj(d)).real();
        },
        rule);
    const double square_outer = integrate_exterior_nodes(
        [&](std::size_t i) {
            const ExteriorPoint p = exterior_point(g[i], nodes[i].z);
            return 4.0 * std::norm(p.log_derivative * p.inv_abs2 / (1.0 + p.inv_abs2));
        },
        rule);
    const double green_inner =
        2.0 * integrate_log_weighted_nodes([&](std::size_t i) { return 4.0 * f[i].density; }, rule);
    const double green_outer =
        -2.0 * integrate_exterior_nodes(
                   [&](std::size_t i) {
                       const cplx w = nodes[i].z;
                       return -std::log(std::abs(w)) * 4.0 * exterior_point(g[i], w).density;
                   },
                   rule);
    return assemble("grunsky", {{"interior_cross", cross_inner},
                                {"interior_square", square_inner},
                                {"exterior_cross", cross_outer},
                                {"exterior_square", square_outer},
                                {"interior_green", green_inner},
                                {"exterior_green", green_outer},
                                {"constant", 4.0 * pi}});
}

FormulaResult s1(const AnalyticDiskMap& f, const AnalyticDiskMap& g, const DiskQuadrature& rule) {
    return s1(EnergyContext(f, g, rule));
}
FormulaResult s1_inverted(const AnalyticDiskMap& f, const AnalyticDiskMap& g, const DiskQuadrature& rule) {
    return s1_inverted(EnergyContext(f, g, rule));
}
FormulaResult s3(const AnalyticDiskMap& f, const AnalyticDiskMap& g, const DiskQuadrature& rule) {
    return s3(EnergyContext(f, g, rule));
}
FormulaResult e0_spherical(const AnalyticDiskMap& f, const AnalyticDiskMap& g, const DiskQuadrature& rule) {
    return e0_spherical(EnergyContext(f, g, rule));
}
FormulaResult frame_energy_form(const AnalyticDiskMap& f, const AnalyticDiskMap& g,
                                const DiskQuadrature& rule) {
    return frame_energy_form(EnergyContext(f, g, rule));
}
double grunsky_residual(const AnalyticDiskMap& f, const AnalyticDiskMap& g, const DiskQuadrature& rule) {
    return grunsky_identity(EnergyContext(f, g, rule)).value;
}

double EnergyReport::max_residual() const {
    double m = 0.0;
    for (const auto& r : residuals) m = std::max(m, r.value);
    return m;
}

const FormulaResult& EnergyReport::formula(const std::string& name) const {
    for (const auto& f : formulas) {
        if (f.name == name) return f;
    }
    throw Error(ErrorKind::invalid_parameter, "report has no formula " + name);
}

namespace {

MapSummary summarize(const AnalyticDiskMap& h, std::size_t nodes) {
    MapSummary s;
    s.method = h.iterations() > 0 ? "theodorsen" : "explicit";
    s.nodes = h.iterations() > 0 ? nodes : 0;
    s.iterations = h.iterations();
    s.boundary_residual = h.boundary_residual();
    s.tail_bound = h.tail_bound();
    s.degree = h.taylor().size() - 1;
    s.derivative_at_center = std::abs(h.derivative_at_center());
    return s;
}

}  // namespace

EnergyReport report_from_maps(const AnalyticDiskMap& f, const AnalyticDiskMap& g,
                              const DiskQuadrature& rule, const EnergyConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const EnergyContext ctx(f, g, rule);
    EnergyReport report;
    report.formulas.push_back(s1(ctx));
    report.formulas.push_back(s1_inverted(ctx));
    report.formulas.push_back(s3(ctx));
    report.formulas.push_back(e0_spherical(ctx));
    if (config.frames) report.formulas.push_back(frame_energy_form(ctx));
    report.s1 = report.formulas[0].value;
    report.s1_inverted = report.formulas[1].value;
    report.s3 = report.formulas[2].value;
    report.e0_spherical = report.formulas[3].value;
    report.frame_energy_form = config.frames ? report.formulas[4].value : 0.0;
    for (std::size_t a = 0; a < report.formulas.size(); ++a) {
        for (std::size_t b = a + 1; b < report.formulas.size(); ++b) {
            report.residuals.push_back({report.formulas[a].name, report.formulas[b].name,
                                        std::abs(report.formulas[a].value - report.formulas[b].value)});
        }
    }
    if (config.grunsky) {
        report.grunsky = grunsky_identity(ctx);
        report.grunsky_residual = report.grunsky.value;
    }
    const auto& e0 = report.formulas[3];
    report.metadata.curve_id = f.curve_id();
    report.metadata.center = f.center();
    report.metadata.solver = config.solver;
    report.metadata.quadrature = rule.params();
    report.metadata.interior = summarize(f, config.solver.nodes);
    report.metadata.exterior = summarize(g, config.solver.nodes);
    report.metadata.spherical_area = e0.term("area_interior") + e0.term("area_exterior");
    report.metadata.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

CurveMaps solve_curve_maps(const ParametricCurve& c, const EnergyConfig& config) {
    if (!c.closed()) {
        throw Error(ErrorKind::open_curve, "energy is defined for closed curves only");
    }
    const auto taylor = c.taylor_map();
    cplx center;
    if (config.center) {
        center = *config.center;
    } else if (taylor) {
        center = (*taylor)[0];
    } else {
        center = area_centroid(c.samples());
    }
    if (winding_number(c.samples(), center) == 0) {
        throw Error(ErrorKind::invalid_parameter, "center is not inside the curve");
    }
    ParametricCurve centred = translate_curve(c, -center);
    const auto explicit_map = centred.taylor_map();
    AnalyticDiskMap f = explicit_map && std::abs((*explicit_map)[0]) <= 1e-15
                            ? interior_map_from_taylor(centred)
                            : solve_interior_map(centred, cplx{0.0, 0.0}, config.solver);
    if (f.iterations() > 0) {
        const UnivalenceCheck check = check_univalence(f);
        if (!check.ok()) {
            throw Error(ErrorKind::non_univalent, "solved interior map is not univalent on the closed disk");
        }
    }
    AnalyticDiskMap g = solve_exterior_via_inversion(centred, config.solver);
    return {std::move(centred), center, std::move(f), std::move(g)};
}

EnergyReport full_report(const ParametricCurve& c, const EnergyConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const CurveMaps maps = solve_curve_maps(c, config);
    const DiskQuadrature rule(config.quadrature);
    EnergyReport report = report_from_maps(maps.interior, maps.inverted_exterior, rule, config);
    report.metadata.curve_id = c.id();
    report.metadata.center = maps.center;
    report.metadata.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace loewner
