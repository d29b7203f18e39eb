#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "loewner/errors.hpp"
#include "loewner/frames.hpp"
#include "loewner/io.hpp"

namespace loewner::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> formats{"json", "csv"};

std::vector<double> parse_numbers(const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) {
            throw Error(ErrorKind::invalid_parameter, "not a number in curve spec: '" + item + "'");
        }
        out.push_back(x);
    }
    return out;
}

Provenance provenance(const RunConfig& config) {
    const std::string text = config_to_json(config);
    return {config_hash(text), text};
}

std::string path_in(const RunConfig& config, const std::string& name) {
    return config.out_dir.empty() ? name : config.out_dir + "/" + name;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

void print_check(const std::string& name, double value, double threshold) {
    std::cout << (value <= threshold ? "PASS " : "FAIL ") << name << " = " << fmt(value)
              << " (threshold " << fmt(threshold) << ")\n";
}

double max_of(const std::vector<double>& xs) {
    double m = 0.0;
    for (const double x : xs) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

void validate(const RunConfig& config) {
    if (!is_power_of_two(config.solver.nodes) || config.solver.nodes < 8) {
        throw Error(ErrorKind::invalid_parameter, "--n must be a power of two >= 8");
    }
    if (!(config.solver.tol > 0.0)) throw Error(ErrorKind::invalid_parameter, "--tol must be positive");
    if (config.solver.max_iterations < 1) {
        throw Error(ErrorKind::invalid_parameter, "max iterations must be >= 1");
    }
    if (config.quadrature.n_panels < 1 || config.quadrature.n_gauss < 1 || config.quadrature.n_theta < 1) {
        throw Error(ErrorKind::invalid_parameter, "quadrature counts must be >= 1");
    }
    if (std::find(formats.begin(), formats.end(), config.format) == formats.end()) {
        throw Error(ErrorKind::invalid_parameter, "--format must be json or csv");
    }
}

std::string config_to_json(const RunConfig& c) {
    json j = {{"curve", c.curve},
              {"solver", {{"n", c.solver.nodes}, {"tol", c.solver.tol}, {"max_iterations", c.solver.max_iterations}}},
              {"quadrature",
               {{"panels", c.quadrature.n_panels}, {"gauss", c.quadrature.n_gauss}, {"angles", c.quadrature.n_theta}}},
              {"format", c.format},
              {"verify", {{"frames", c.frames}, {"grunsky", c.grunsky}, {"convergence", c.convergence}, {"mobius", c.mobius}}},
              {"out", c.out_dir},
              {"only", c.only},
              {"thresholds",
               {{"residual", c.thresholds.residual},
                {"grunsky", c.thresholds.grunsky},
                {"mobius", c.thresholds.mobius},
                {"analytic", c.thresholds.analytic},
                {"finite_difference", c.thresholds.finite_difference},
                {"curvature", c.thresholds.curvature},
                {"audit", c.thresholds.audit}}}};
    j["center"] = c.center ? json::array({c.center->real(), c.center->imag()}) : json();
    return j.dump();
}

RunConfig config_from_json(const std::string& text, RunConfig c) {
    try {
        const json j = json::parse(text);
        c.curve = j.value("curve", c.curve);
        if (j.contains("center") && !j["center"].is_null()) {
            const auto& z = j["center"];
            c.center = cplx{z.at(0).get<double>(), z.at(1).get<double>()};
        }
        if (j.contains("solver")) {
            const auto& s = j["solver"];
            c.solver.nodes = s.value("n", c.solver.nodes);
            c.solver.tol = s.value("tol", c.solver.tol);
            c.solver.max_iterations = s.value("max_iterations", c.solver.max_iterations);
        }
        if (j.contains("quadrature")) {
            const auto& q = j["quadrature"];
            c.quadrature.n_panels = q.value("panels", c.quadrature.n_panels);
            c.quadrature.n_gauss = q.value("gauss", c.quadrature.n_gauss);
            c.quadrature.n_theta = q.value("angles", c.quadrature.n_theta);
        }
        c.format = j.value("format", c.format);
        if (j.contains("verify")) {
            const auto& v = j["verify"];
            c.frames = v.value("frames", c.frames);
            c.grunsky = v.value("grunsky", c.grunsky);
            c.convergence = v.value("convergence", c.convergence);
            c.mobius = v.value("mobius", c.mobius);
        }
        c.out_dir = j.value("out", c.out_dir);
        c.only = j.value("only", c.only);
        if (j.contains("thresholds")) {
            const auto& t = j["thresholds"];
            auto& d = c.thresholds;
            d.residual = t.value("residual", d.residual);
            d.grunsky = t.value("grunsky", d.grunsky);
            d.mobius = t.value("mobius", d.mobius);
            d.analytic = t.value("analytic", d.analytic);
            d.finite_difference = t.value("finite_difference", d.finite_difference);
            d.curvature = t.value("curvature", d.curvature);
            d.audit = t.value("audit", d.audit);
        }
        c.workers = j.value("workers", c.workers);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::io, std::string("malformed config file: ") + e.what());
    }
    return c;
}

ParametricCurve parse_curve_spec(const std::string& spec, std::size_t samples) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (name == "file") {
        ParametricCurve c = read_curve_file(rest);
        return c;
    }
    const std::vector<double> params = rest.empty() ? std::vector<double>{} : parse_numbers(rest);
    if (name == "taylor") {
        std::vector<cplx> coeffs(params.begin(), params.end());
        return make_power_series_curve(coeffs, samples);
    }
    CurveKind kind;
    if (name == "power") {
        kind = CurveKind::power_series_image;
    } else if (name == "spiral") {
        kind = CurveKind::spiral_arc;
    } else {
        kind = curve_kind_from_string(name);
    }
    return make_family(kind, params, samples);
}

EnergyConfig energy_config(const RunConfig& config) {
    EnergyConfig e;
    e.solver = config.solver;
    e.quadrature = config.quadrature;
    e.center = config.center;
    e.frames = config.frames;
    e.grunsky = config.grunsky;
    return e;
}

std::vector<ConvergenceRow> convergence_table(const ParametricCurve& curve, const RunConfig& config) {
    std::vector<ConvergenceRow> rows;
    const EnergyConfig base = energy_config(config);
    if (curve.taylor_map()) {
        const CurveMaps maps = solve_curve_maps(curve, base);
        const DiskQuadrature rule(config.quadrature);
        double previous = std::numeric_limits<double>::quiet_NaN();
        for (const double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
            const AnalyticDiskMap shrunk = shrink_map(maps.interior, eps);
            const ParametricCurve image = make_power_series_curve(shrunk.taylor(), curve.sample_count());
            const AnalyticDiskMap f = interior_map_from_taylor(image);
            const AnalyticDiskMap g = solve_exterior_via_inversion(image, config.solver);
            EnergyConfig light = base;
            light.frames = false;
            light.grunsky = false;
            const EnergyReport r = report_from_maps(f, g, rule, light);
            rows.push_back({"epsilon", eps, config.solver.nodes, r.s1, std::abs(r.s1 - previous), r.max_residual()});
            previous = r.s1;
        }
        const EnergyReport limit = report_from_maps(maps.interior, maps.inverted_exterior, rule, base);
        rows.push_back({"epsilon", 0.0, config.solver.nodes, limit.s1, std::abs(limit.s1 - previous),
                        limit.max_residual()});
    }
    double previous = std::numeric_limits<double>::quiet_NaN();
    for (int level = 0; level < 3; ++level) {
        EnergyConfig e = base;
        e.solver.nodes = config.solver.nodes << level;
        e.quadrature.n_panels = config.quadrature.n_panels << level;
        e.quadrature.n_theta = config.quadrature.n_theta << level;
        e.grunsky = false;
        const EnergyReport r = full_report(curve.resampled(e.solver.nodes), e);
        rows.push_back({"resolution", 0.0, e.solver.nodes, r.s1, std::abs(r.s1 - previous), r.max_residual()});
        previous = r.s1;
    }
    return rows;
}

std::string convergence_to_csv(const std::vector<ConvergenceRow>& rows, const std::string& hash) {
    std::ostringstream out;
    out << "# config_hash=" << hash << '\n';
    out << "sweep,epsilon,N,value,successive_difference,max_residual\n";
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%s,%.17g,%zu,%.17g,%.17g,%.17g\n", r.sweep.c_str(), r.epsilon, r.nodes,
                      r.value, r.successive_difference, r.max_residual);
        out << buf;
    }
    return out.str();
}

bool AuditCheck::pass(double tol) const { return std::abs(computed - expected) <= tol; }

std::vector<AuditCheck> audit_checks(const RunConfig& config) {
    const DiskQuadrature rule(config.quadrature);
    const double log2 = std::log(2.0);
    std::vector<AuditCheck> checks;
    auto wanted = [&](const std::string& name) { return config.only.empty() || config.only == name; };

    if (wanted("eq7")) {
        const double v = integrate_disk(
            [](cplx z) {
                const double d = 1.0 + std::norm(z);
                return 4.0 * std::norm(z) / (d * d);
            },
            rule);
        checks.push_back({"eq7", v, 4.0 * pi * log2 - 2.0 * pi});
    }
    if (wanted("optimal2")) {
        const double v = integrate_log_weighted(
            [](cplx z) {
                const double d = 1.0 + std::norm(z);
                return 4.0 / (d * d);
            },
            rule);
        checks.push_back({"optimal2", v, -2.0 * pi * log2});
    }
    if (wanted("gradient_norm")) {
        checks.push_back({"gradient_norm", inverse_stereographic_gradient_norm(cplx{0.0, 0.0}), 2.0 * std::sqrt(2.0)});
    }

    const bool needs_circle = config.only.empty() || config.only == "optimal3" || config.only == "second_part" ||
                              config.only == "hemisphere_interior" || config.only == "hemisphere_exterior" ||
                              config.only == "hemisphere_area" || config.only == "circle_s3" ||
                              config.only == "circle_e0" || config.only == "circle_grunsky";
    if (needs_circle) {
        const ParametricCurve circle = make_family(CurveKind::circle, {}, config.solver.nodes);
        const CurveMaps maps = solve_curve_maps(circle, energy_config(config));
        const EnergyContext ctx(maps.interior, maps.inverted_exterior, rule);
        const FormulaResult frame = frame_energy_form(ctx);
        const FormulaResult e0 = e0_spherical(ctx);
        if (wanted("optimal3")) {
            // Dirichlet energy of mu read off the frame connection of the identity map.
            checks.push_back({"optimal3", frame.term("frame_dirichlet_interior"), 4.0 * pi * log2 - 2.0 * pi});
        }
        if (wanted("second_part")) {
            const double v = (e0.term("log_gradient_interior") + e0.term("log_gradient_exterior")) / pi - 12.0 * log2;
            checks.push_back({"second_part", v, 0.0});
        }
        if (wanted("hemisphere_interior")) {
            const double v = frame.term("frame_dirichlet_interior") + frame.term("frame_green_interior") + 2.0 * pi;
            checks.push_back({"hemisphere_interior", v, 0.0});
        }
        if (wanted("hemisphere_exterior")) {
            const double v = frame.term("frame_dirichlet_exterior") + frame.term("frame_green_exterior") + 2.0 * pi;
            checks.push_back({"hemisphere_exterior", v, 0.0});
        }
        if (wanted("hemisphere_area")) {
            checks.push_back({"hemisphere_area", e0.term("area_interior"), 2.0 * pi});
        }
        if (wanted("circle_s3")) checks.push_back({"circle_s3", s3(ctx).value, 0.0});
        if (wanted("circle_e0")) checks.push_back({"circle_e0", e0.value, 0.0});
        if (wanted("circle_grunsky")) checks.push_back({"circle_grunsky", grunsky_identity(ctx).value, 0.0});
    }
    if (checks.empty()) throw Error(ErrorKind::invalid_parameter, "unknown audit check '" + config.only + "'");
    return checks;
}

int cmd_energy(const RunConfig& config) {
    validate(config);
    const ParametricCurve curve = parse_curve_spec(config.curve, config.solver.nodes);
    const Provenance prov = provenance(config);
    const EnergyConfig ec = energy_config(config);
    const EnergyReport report = full_report(curve, ec);

    write_text_file(path_in(config, "report.json"), report_to_json(report, prov));
    write_text_file(path_in(config, "report.csv"), report_csv_header() + report_csv_row(report, prov));
    if (config.frames) {
        const CurveMaps maps = solve_curve_maps(curve, ec);
        const std::size_t angles = static_cast<std::size_t>(config.quadrature.n_theta);
        write_text_file(path_in(config, "traces/curvature_interior.csv"),
                        curvature_to_csv(geodesic_curvature_disk(maps.interior, angles), prov));
        write_text_file(path_in(config, "traces/curvature_exterior.csv"),
                        curvature_to_csv(geodesic_curvature_disk(maps.inverted_exterior, angles), prov));
    }

    if (config.format == "json") {
        std::cout << report_to_json(report, prov) << '\n';
    } else {
        std::cout << report_csv_header() << report_csv_row(report, prov);
    }
    std::cerr << "loewner energy I^L = " << report.s1 / pi << '\n';
    for (const auto& f : report.formulas) std::cerr << "  " << f.name << " / pi = " << f.value / pi << '\n';

    bool breach = false;
    for (const auto& r : report.residuals) {
        if (!(r.value <= config.thresholds.residual)) {
            std::cerr << "threshold breach: |" << r.first << " - " << r.second << "| = " << fmt(r.value) << " > "
                      << fmt(config.thresholds.residual) << '\n';
            breach = true;
        }
    }
    if (config.grunsky && !(std::abs(report.grunsky_residual) <= config.thresholds.grunsky)) {
        std::cerr << "threshold breach: grunsky identity residual = " << fmt(report.grunsky_residual) << '\n';
        breach = true;
    }
    if (config.mobius) {
        const ParametricCurve inverted = invert_curve(translate_curve(curve, -report.metadata.center));
        EnergyConfig ic = ec;
        ic.center.reset();
        ic.frames = false;
        ic.grunsky = false;
        const EnergyReport other = full_report(inverted, ic);
        const double d = std::abs(report.s1 - other.s1);
        std::cerr << "mobius: |s1 - s1(inverted)| = " << fmt(d) << '\n';
        if (!(d <= config.thresholds.mobius)) {
            std::cerr << "threshold breach: s1 changed under inversion by " << fmt(d) << '\n';
            breach = true;
        }
    }
    if (config.convergence) {
        const auto rows = convergence_table(curve, config);
        write_text_file(path_in(config, "traces/convergence.csv"), convergence_to_csv(rows, prov.config_hash));
    }
    return breach ? threshold_breach : ok;
}

int cmd_frames(const RunConfig& config) {
    validate(config);
    const ParametricCurve curve = parse_curve_spec(config.curve, config.solver.nodes);
    const Provenance prov = provenance(config);
    const auto& t = config.thresholds;
    bool breach = false;
    std::ostringstream table;
    table << "# config_hash=" << prov.config_hash << "\ncheck,value,threshold,pass\n";
    auto record = [&](const std::string& name, double value, double threshold) {
        print_check(name, value, threshold);
        const bool pass = value <= threshold;
        table << name << ',' << fmt(value) << ',' << fmt(threshold) << ',' << (pass ? "true" : "false") << '\n';
        breach = breach || !pass;
    };

    if (curve.kind() == CurveKind::spiral_arc) {
        const double eps = curve.parameters().at(0);
        const double value = spiral_diagnostics(eps);
        const double bound = spiral_bound();
        std::cout << "spiral integral over the half-disk of radius " << eps << " = " << value << ", bound = " << bound
                  << '\n';
        record("spiral_integral_below_bound", value - bound, 0.0);
        for (const double x : {1e-2, 1e-3}) {
            const double k = geodesic_curvature_halfplane({spiral_pre_schwarzian(cplx{x, 0.0})})[0];
            record("spiral_curvature_t=" + fmt(x), std::abs(k - spiral_curvature(x)), t.curvature);
        }
        write_text_file(path_in(config, "frames_residuals.csv"), table.str());
        return breach ? threshold_breach : ok;
    }

    const CurveMaps maps = solve_curve_maps(curve, energy_config(config));
    // The frame carries the z/|z| factor, so stencil error grows like h^2/|z|^4; stay on r >= 1/2.
    const double h = 2.5e-4;
    std::vector<cplx> grid;
    for (const double r : {0.5, 0.6, 0.7, 0.8, 0.9}) {
        for (int j = 0; j < 64; ++j) grid.push_back(std::polar(r, two_pi * j / 64.0));
    }
    const std::pair<const char*, const AnalyticDiskMap*> domains[] = {{"interior", &maps.interior},
                                                                      {"exterior", &maps.inverted_exterior}};
    for (const auto& [name, map] : domains) {
        const std::string tag = name;
        const auto samples = frame_grid(*map, grid, h);
        double ortho = 0.0;
        double liouville = 0.0;
        double harmonic = 0.0;
        for (const auto& s : samples) {
            ortho = std::max(ortho, s.residuals.orthonormality);
            liouville = std::max(liouville, s.residuals.liouville);
            harmonic = std::max({harmonic, s.residuals.harmonicity_phi, s.residuals.harmonicity_phi_bar});
        }
        double cartan = 0.0;
        for (int j = 0; j < 512; ++j) {
            cartan = std::max(cartan, std::abs(cartan_residual(*map, std::polar(0.9, two_pi * j / 512.0))));
        }
        record("orthonormality_" + tag, ortho, t.analytic);
        record("cartan_" + tag, cartan, t.analytic);
        record("liouville_" + tag, liouville, t.finite_difference);
        record("harmonicity_" + tag, harmonic, t.finite_difference);
        record("neumann_" + tag, max_of(neumann_residual(*map, 256, 0.999, 1e-4)), t.finite_difference);
        const CurvatureTrace trace = geodesic_curvature_disk(*map, static_cast<std::size_t>(config.quadrature.n_theta));
        std::cout << "curvature H^-1/2 seminorm (" << tag << ") = " << trace.sobolev_minus_half << '\n';
        write_text_file(path_in(config, "traces/frames_" + tag + ".csv"), frames_to_csv(samples, prov));
        write_text_file(path_in(config, "traces/curvature_" + tag + ".csv"), curvature_to_csv(trace, prov));
    }
    write_text_file(path_in(config, "frames_residuals.csv"), table.str());
    return breach ? threshold_breach : ok;
}

int cmd_convergence(const RunConfig& config) {
    validate(config);
    const ParametricCurve curve = parse_curve_spec(config.curve, config.solver.nodes);
    const Provenance prov = provenance(config);
    const auto rows = convergence_table(curve, config);
    const std::string csv = convergence_to_csv(rows, prov.config_hash);
    write_text_file(path_in(config, "traces/convergence.csv"), csv);
    std::cout << csv;
    return ok;
}

int cmd_audit(const RunConfig& config) {
    validate(config);
    const auto checks = audit_checks(config);
    bool all = true;
    for (const auto& c : checks) {
        const bool pass = c.pass(config.thresholds.audit);
        all = all && pass;
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s %-20s computed % .15e expected % .15e |diff| %.3e", pass ? "PASS" : "FAIL",
                      c.name.c_str(), c.computed, c.expected, std::abs(c.computed - c.expected));
        std::cout << buf << '\n';
    }
    if (!all) {
        std::cerr << "audit failures:";
        for (const auto& c : checks) {
            if (!c.pass(config.thresholds.audit)) std::cerr << ' ' << c.name;
        }
        std::cerr << '\n';
    }
    return all ? ok : threshold_breach;
}

int run_guarded(int (*command)(const RunConfig&), const RunConfig& config) {
    try {
        if (config.workers != 0) set_worker_count(config.workers);
        return command(config);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::non_finite_sample ? quadrature_failure : solver_failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return solver_failure;
    }
}

}  // namespace loewner::cli
