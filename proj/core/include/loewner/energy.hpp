#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loewner/conformal.hpp"
#include "loewner/geometry.hpp"
#include "loewner/quadrature.hpp"

namespace loewner {

struct Term {
    std::string name;
    double value = 0.0;
};

// One energy formula on the pi * I^L scale with its named terms; value is their ordered sum.
struct FormulaResult {
    std::string name;
    double value = 0.0;
    std::vector<Term> terms;

    double term(const std::string& term_name) const;
};

// Map evaluations at the quadrature nodes, shared by all formulas.
class EnergyContext {
public:
    struct Sample {
        cplx value;
        cplx first;
        cplx second;
        cplx pre_schwarzian;  // h''/h'
        cplx remainder;       // h'/h - 1/z, when h(0) = 0
        cplx quotient;        // h(z)/z, when h(0) = 0
        double density = 0.0; // |h'|^2 / (1 + |h|^2)^2
    };

    EnergyContext(const AnalyticDiskMap& interior, const AnalyticDiskMap& inverted_exterior,
                  const DiskQuadrature& rule);

    const AnalyticDiskMap& interior() const { return *interior_; }
    const AnalyticDiskMap& inverted_exterior() const { return *exterior_; }
    const DiskQuadrature& rule() const { return *rule_; }
    bool interior_centred() const { return interior_centred_; }
    const std::vector<Sample>& interior_samples() const { return f_; }
    const std::vector<Sample>& exterior_samples() const { return g_; }

private:
    const AnalyticDiskMap* interior_;
    const AnalyticDiskMap* exterior_;
    const DiskQuadrature* rule_;
    bool interior_centred_ = false;
    std::vector<Sample> f_;
    std::vector<Sample> g_;
};

FormulaResult s1(const EnergyContext& ctx);
FormulaResult s1_inverted(const EnergyContext& ctx);
FormulaResult s3(const EnergyContext& ctx);
FormulaResult e0_spherical(const EnergyContext& ctx);
FormulaResult frame_energy_form(const EnergyContext& ctx);
// Left-hand side of the univalent-map identity; its value should vanish.
FormulaResult grunsky_identity(const EnergyContext& ctx);

FormulaResult s1(const AnalyticDiskMap& f, const AnalyticDiskMap& g, const DiskQuadrature& rule);
FormulaResult s1_inverted(const AnalyticDiskMap& f, const AnalyticDiskMap& g, const DiskQuadrature& rule);
FormulaResult s3(const AnalyticDiskMap& f, const AnalyticDiskMap& g, const DiskQuadrature& rule);
FormulaResult e0_spherical(const AnalyticDiskMap& f, const AnalyticDiskMap& g, const DiskQuadrature& rule);
FormulaResult frame_energy_form(const AnalyticDiskMap& f, const AnalyticDiskMap& g,
                                const DiskQuadrature& rule);
double grunsky_residual(const AnalyticDiskMap& f, const AnalyticDiskMap& g, const DiskQuadrature& rule);

struct EnergyConfig {
    SolverOptions solver;
    DiskRuleParams quadrature;
    // Interior point sent to 0 before solving; defaults to the explicit map's f(0) or the area centroid.
    std::optional<cplx> center;
    bool frames = true;
    bool grunsky = true;
};

struct FormulaResidual {
    std::string first;
    std::string second;
    double value = 0.0;
};

struct MapSummary {
    std::string method;
    std::size_t nodes = 0;
    int iterations = 0;
    double boundary_residual = 0.0;
    double tail_bound = 0.0;
    std::size_t degree = 0;
    double derivative_at_center = 0.0;
};

struct ReportMetadata {
    std::string curve_id;
    cplx center;
    SolverOptions solver;
    DiskRuleParams quadrature;
    MapSummary interior;
    MapSummary exterior;
    double spherical_area = 0.0;
    double seconds = 0.0;
};

struct EnergyReport {
    double s1 = 0.0;
    double s1_inverted = 0.0;
    double s3 = 0.0;
    double e0_spherical = 0.0;
    double frame_energy_form = 0.0;
    std::vector<FormulaResult> formulas;
    std::vector<FormulaResidual> residuals;
    double grunsky_residual = 0.0;
    FormulaResult grunsky;
    ReportMetadata metadata;

    double max_residual() const;
    const FormulaResult& formula(const std::string& name) const;
};

// Builds the report from already solved maps.
EnergyReport report_from_maps(const AnalyticDiskMap& f, const AnalyticDiskMap& g,
                              const DiskQuadrature& rule, const EnergyConfig& config = {});

// Recentres the curve, solves both maps and evaluates every formula.
EnergyReport full_report(const ParametricCurve& c, const EnergyConfig& config = {});

// The two maps full_report would use, after recentring.
struct CurveMaps {
    ParametricCurve centred;
    cplx center;
    AnalyticDiskMap interior;
    AnalyticDiskMap inverted_exterior;
};
CurveMaps solve_curve_maps(const ParametricCurve& c, const EnergyConfig& config = {});

}  // namespace loewner
