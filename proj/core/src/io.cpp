#include "loewner/io.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "loewner/errors.hpp"
#include "loewner/version.hpp"

namespace loewner {

using nlohmann::json;

namespace {

json pair_of(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_of(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2) {
        throw Error(ErrorKind::io, "complex numbers are written as [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

// Error bounds are written as null when unbounded.
double bound_of(const json& j, const char* key) {
    if (!j.contains(key)) return 0.0;
    const auto& v = j.at(key);
    return v.is_null() ? std::numeric_limits<double>::infinity() : v.get<double>();
}

std::vector<cplx> complex_list(const json& j) {
    std::vector<cplx> out;
    for (const auto& e : j) out.push_back(complex_of(e));
    return out;
}

json versions_json() {
    json modules = json::object();
    for (const auto& [name, version] : module_versions) modules[std::string(name)] = std::string(version);
    return {{"library", std::string(library_version)}, {"modules", modules}};
}

json provenance_json(const Provenance& p) {
    json j = {{"config_hash", p.config_hash}, {"versions", versions_json()}};
    if (!p.config_json.empty()) j["config"] = json::parse(p.config_json);
    return j;
}

std::string provenance_comment(const Provenance& p) {
    std::ostringstream out;
    out << "# config_hash=" << p.config_hash << " library=" << library_version;
    for (const auto& [name, version] : module_versions) out << ' ' << name << '=' << version;
    out << '\n';
    return out.str();
}

std::string number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json map_summary_json(const MapSummary& s) {
    return {{"method", s.method},
            {"nodes", s.nodes},
            {"iterations", s.iterations},
            {"boundary_residual", s.boundary_residual},
            {"tail_bound", s.tail_bound},
            {"degree", s.degree},
            {"derivative_at_center", s.derivative_at_center}};
}

json formula_json(const FormulaResult& f) {
    json terms = json::array();
    for (const auto& t : f.terms) terms.push_back({{"name", t.name}, {"value", t.value}});
    return {{"name", f.name}, {"value", f.value}, {"i_loewner", f.value / pi}, {"terms", terms}};
}

}  // namespace

std::string config_hash(const std::string& canonical_config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : canonical_config) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ParametricCurve curve_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::io, std::string("curve file is not valid JSON: ") + e.what());
    }
    try {
        const CurveKind kind = curve_kind_from_string(j.at("kind").get<std::string>());
        const std::size_t n = j.value("N", ParametricCurve::default_samples);
        ParametricCurve c;
        if (kind == CurveKind::fourier_boundary) {
            c = make_fourier_curve(complex_list(j.at("fourier")), n);
        } else if (kind == CurveKind::power_series_image && j.contains("taylor")) {
            c = make_power_series_curve(complex_list(j.at("taylor")), n);
        } else {
            c = make_family(kind, j.value("params", std::vector<double>{}), n);
        }
        for (const auto& t : j.value("transforms", json::array())) {
            const std::string op = t.at("op").get<std::string>();
            if (op == "invert") {
                c = invert_curve(c);
            } else if (op == "affine") {
                c = transform_curve(c, complex_of(t.value("scale", json::array({1.0, 0.0}))),
                                    complex_of(t.value("shift", json::array({0.0, 0.0}))));
            } else {
                throw Error(ErrorKind::io, "unknown transform op " + op);
            }
        }
        return c;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::io, std::string("malformed curve file: ") + e.what());
    }
}

ParametricCurve read_curve_file(const std::string& path) { return curve_from_json(read_text_file(path)); }

std::string curve_to_json(const ParametricCurve& c) {
    json j = {{"kind", to_string(c.kind())}, {"params", c.parameters()}, {"N", c.sample_count()}};
    json coeffs = json::array();
    for (const auto& a : c.coefficients()) coeffs.push_back(pair_of(a));
    if (c.kind() == CurveKind::fourier_boundary) j["fourier"] = coeffs;
    if (c.kind() == CurveKind::power_series_image) j["taylor"] = coeffs;
    json transforms = json::array();
    for (const auto& t : c.transforms()) {
        if (t.op == CurveTransform::Op::invert) {
            transforms.push_back({{"op", "invert"}});
        } else {
            transforms.push_back({{"op", "affine"}, {"scale", pair_of(t.scale)}, {"shift", pair_of(t.shift)}});
        }
    }
    if (!transforms.empty()) j["transforms"] = transforms;
    return j.dump(2);
}

std::string map_to_json(const AnalyticDiskMap& map) {
    json taylor = json::array();
    for (const auto& a : map.taylor()) taylor.push_back(pair_of(a));
    json j = {{"role", to_string(map.role())},
              {"curve_id", map.curve_id()},
              {"taylor", taylor},
              {"normalization",
               {{"center", pair_of(map.center())},
                {"derivative_at_center", pair_of(map.derivative_at_center())},
                {"derivative_real_positive", map.derivative_real_positive()}}},
              {"residual", map.boundary_residual()},
              {"tail_bound", map.tail_bound()},
              {"iterations", map.iterations()},
              {"orientation_sign", map.orientation_sign()},
              {"boundary_correspondence", map.boundary_correspondence()},
              {"versions", versions_json()}};
    return j.dump(2);
}

AnalyticDiskMap map_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        const std::string role_name = j.at("role").get<std::string>();
        MapRole role;
        if (role_name == to_string(MapRole::interior)) {
            role = MapRole::interior;
        } else if (role_name == to_string(MapRole::inverted_exterior)) {
            role = MapRole::inverted_exterior;
        } else {
            throw Error(ErrorKind::io, "unknown map role " + role_name);
        }
        return AnalyticDiskMap::assemble(complex_list(j.at("taylor")), role, j.value("curve_id", ""),
                                         j.value("boundary_correspondence", std::vector<double>{}),
                                         j.value("orientation_sign", 1), bound_of(j, "residual"),
                                         bound_of(j, "tail_bound"), j.value("iterations", 0));
    } catch (const json::exception& e) {
        throw Error(ErrorKind::io, std::string("malformed map document: ") + e.what());
    }
}

std::string report_to_json(const EnergyReport& report, const Provenance& provenance) {
    json formulas = json::array();
    for (const auto& f : report.formulas) formulas.push_back(formula_json(f));
    json residuals = json::array();
    for (const auto& r : report.residuals) {
        residuals.push_back({{"first", r.first}, {"second", r.second}, {"value", r.value}});
    }
    const auto& m = report.metadata;
    json j = {
        {"values",
         {{"s1", report.s1},
          {"s1_inverted", report.s1_inverted},
          {"s3", report.s3},
          {"e0_spherical", report.e0_spherical},
          {"frame_energy_form", report.frame_energy_form}}},
        {"loewner_energy", report.s1 / pi},
        {"formulas", formulas},
        {"residuals", residuals},
        {"max_residual", report.max_residual()},
        {"grunsky_residual", report.grunsky_residual},
        {"metadata",
         {{"curve_id", m.curve_id},
          {"center", pair_of(m.center)},
          {"solver", {{"nodes", m.solver.nodes}, {"tol", m.solver.tol}, {"max_iterations", m.solver.max_iterations}}},
          {"quadrature",
           {{"panels", m.quadrature.n_panels}, {"gauss", m.quadrature.n_gauss}, {"angles", m.quadrature.n_theta}}},
          {"interior", map_summary_json(m.interior)},
          {"exterior", map_summary_json(m.exterior)},
          {"spherical_area", m.spherical_area},
          {"seconds", m.seconds}}},
        {"provenance", provenance_json(provenance)}};
    if (!report.grunsky.terms.empty()) j["grunsky"] = formula_json(report.grunsky);
    return j.dump(2);
}

std::string report_csv_header() {
    return "curve_id,center_re,center_im,s1,s1_inverted,s3,e0_spherical,frame_energy_form,"
           "loewner_energy,max_residual,grunsky_residual,solver_nodes,panels,gauss,angles,"
           "interior_tail_bound,exterior_tail_bound,spherical_area,config_hash,library_version\n";
}

std::string report_csv_row(const EnergyReport& report, const Provenance& provenance) {
    const auto& m = report.metadata;
    std::string id = m.curve_id;
    for (auto& ch : id) {
        if (ch == ',' || ch == '"') ch = ';';
    }
    std::ostringstream out;
    out << id << ',' << number(m.center.real()) << ',' << number(m.center.imag()) << ','
        << number(report.s1) << ',' << number(report.s1_inverted) << ',' << number(report.s3) << ','
        << number(report.e0_spherical) << ',' << number(report.frame_energy_form) << ','
        << number(report.s1 / pi) << ',' << number(report.max_residual()) << ','
        << number(report.grunsky_residual) << ',' << m.solver.nodes << ',' << m.quadrature.n_panels << ','
        << m.quadrature.n_gauss << ',' << m.quadrature.n_theta << ',' << number(m.interior.tail_bound) << ','
        << number(m.exterior.tail_bound) << ',' << number(m.spherical_area) << ',' << provenance.config_hash
        << ',' << library_version << '\n';
    return out.str();
}

std::string frames_to_csv(const std::vector<FrameSample>& samples, const Provenance& provenance) {
    std::ostringstream out;
    out << provenance_comment(provenance);
    out << "re_z,im_z,u_x,u_y,u_z,v_x,v_y,v_z,n_x,n_y,n_z,mu,cartan_re,cartan_im,"
           "orthonormality,cartan_residual,liouville,harmonicity_phi,harmonicity_phi_bar\n";
    for (const auto& s : samples) {
        const double row[] = {s.z.real(), s.z.imag(), s.u.x, s.u.y, s.u.z, s.v.x, s.v.y, s.v.z,
                              s.n.x, s.n.y, s.n.z, s.mu, s.cartan.real(), s.cartan.imag(),
                              s.residuals.orthonormality, s.residuals.cartan, s.residuals.liouville,
                              s.residuals.harmonicity_phi, s.residuals.harmonicity_phi_bar};
        bool first = true;
        for (const double x : row) {
            out << (first ? "" : ",") << number(x);
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

std::string curvature_to_csv(const CurvatureTrace& trace, const Provenance& provenance) {
    std::ostringstream out;
    out << provenance_comment(provenance);
    out << "# radius=" << number(trace.radius) << " sobolev_minus_half=" << number(trace.sobolev_minus_half)
        << '\n';
    out << "angle,k\n";
    for (std::size_t i = 0; i < trace.angles.size(); ++i) {
        out << number(trace.angles[i]) << ',' << number(trace.k[i]) << '\n';
    }
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::io, "cannot write " + path);
    out << text;
}

}  // namespace loewner
