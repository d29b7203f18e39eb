#pragma once

#include <string>
#include <vector>

#include "loewner/conformal.hpp"
#include "loewner/energy.hpp"
#include "loewner/frames.hpp"
#include "loewner/geometry.hpp"

namespace loewner {

// Reproducibility stamp written into every output.
struct Provenance {
    std::string config_hash;
    std::string config_json;
};

// 16 hex digits of FNV-1a over the canonical config text.
std::string config_hash(const std::string& canonical_config);

// Curve definition document: {"kind", "params", "fourier": [[re, im], ...], "taylor", "N", "transforms"}.
ParametricCurve curve_from_json(const std::string& text);
ParametricCurve read_curve_file(const std::string& path);
std::string curve_to_json(const ParametricCurve& c);

// Map exchange document, same schema for both roles.
std::string map_to_json(const AnalyticDiskMap& map);
AnalyticDiskMap map_from_json(const std::string& text);

std::string report_to_json(const EnergyReport& report, const Provenance& provenance);
std::string report_csv_header();
std::string report_csv_row(const EnergyReport& report, const Provenance& provenance);

// One row per node.
std::string frames_to_csv(const std::vector<FrameSample>& samples, const Provenance& provenance);
std::string curvature_to_csv(const CurvatureTrace& trace, const Provenance& provenance);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace loewner
