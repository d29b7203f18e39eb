#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loewner/conformal.hpp"
#include "loewner/energy.hpp"
#include "loewner/geometry.hpp"
#include "loewner/quadrature.hpp"

namespace loewner::cli {

enum ExitCode : int { ok = 0, threshold_breach = 1, solver_failure = 2, quadrature_failure = 3 };

struct Thresholds {
    // Max pairwise residual among the five formulas.
    double residual = 1e-5;
    double grunsky = 1e-6;
    double mobius = 1e-5;
    // Closed-form frame identities (orthonormality, Cartan).
    double analytic = 1e-9;
    // Finite-difference residuals (Liouville, harmonicity, Neumann).
    double finite_difference = 1e-4;
    // Pointwise spiral curvature match.
    double curvature = 1e-8;
    // Constant audit tolerance.
    double audit = 1e-9;
};

struct RunConfig {
    // circle[:r], ellipse:rho, power:eps,n, taylor:a0,a1,..., spiral:eps, file:path.
    std::string curve = "circle";
    std::optional<cplx> center;
    SolverOptions solver;
    DiskRuleParams quadrature;
    std::string format = "json";
    bool frames = true;
    bool grunsky = true;
    bool convergence = false;
    bool mobius = true;
    std::string out_dir = "loewner_out";
    std::string only;
    Thresholds thresholds;
    unsigned workers = 0;
};

// Throws Error(invalid_parameter) when an invariant fails.
void validate(const RunConfig& config);

// Canonical JSON text of the config; its hash stamps every output.
std::string config_to_json(const RunConfig& config);
// Fields present in the document override those of base.
RunConfig config_from_json(const std::string& text, RunConfig base = {});

ParametricCurve parse_curve_spec(const std::string& spec, std::size_t samples);
EnergyConfig energy_config(const RunConfig& config);

struct ConvergenceRow {
    std::string sweep;  // "epsilon" or "resolution"
    double epsilon = 0.0;
    std::size_t nodes = 0;
    double value = 0.0;
    double successive_difference = 0.0;
    double max_residual = 0.0;
};
std::vector<ConvergenceRow> convergence_table(const ParametricCurve& curve, const RunConfig& config);
std::string convergence_to_csv(const std::vector<ConvergenceRow>& rows, const std::string& hash);

struct AuditCheck {
    std::string name;
    double computed = 0.0;
    double expected = 0.0;
    bool pass(double tol) const;
};
// Every constant check, or only the named one.
std::vector<AuditCheck> audit_checks(const RunConfig& config);

int cmd_energy(const RunConfig& config);
int cmd_frames(const RunConfig& config);
int cmd_convergence(const RunConfig& config);
int cmd_audit(const RunConfig& config);

// Runs a command, mapping errors to exit codes and printing the message.
int run_guarded(int (*command)(const RunConfig&), const RunConfig& config);

}  // namespace loewner::cli
