#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cli.hpp"
#include "loewner/errors.hpp"
#include "loewner/io.hpp"

namespace {

struct Flags {
    std::string config_file;
    std::string curve;
    std::vector<double> center;
    std::size_t n = 0;
    double tol = 0.0;
    int max_iterations = 0;
    int panels = 0;
    int gauss = 0;
    int angles = 0;
    std::string format;
    std::string out;
    std::string only;
    double threshold = 0.0;
    unsigned workers = 0;
    bool no_frames = false;
    bool no_grunsky = false;
    bool no_mobius = false;
    bool convergence = false;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config_file, "JSON config file mirroring the run configuration");
    cmd->add_option("--curve", f.curve,
                    "circle[:r] | ellipse:rho | power:eps,n | taylor:a0,a1,... | spiral:eps | file:path");
    cmd->add_option("--center", f.center, "interior point sent to 0 (re im)")->expected(2);
    cmd->add_option("--n", f.n, "boundary nodes, a power of two");
    cmd->add_option("--tol", f.tol, "solver tolerance");
    cmd->add_option("--max-iterations", f.max_iterations, "solver iteration cap");
    cmd->add_option("--panels", f.panels, "radial panels");
    cmd->add_option("--gauss", f.gauss, "Gauss points per panel");
    cmd->add_option("--angles", f.angles, "angular nodes");
    cmd->add_option("--format", f.format, "stdout format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--workers", f.workers, "worker threads (0 = hardware)");
}

loewner::cli::RunConfig build_config(CLI::App* cmd, const Flags& f, const std::string& name) {
    using loewner::cli::RunConfig;
    RunConfig c;
    if (!f.config_file.empty()) c = loewner::cli::config_from_json(loewner::read_text_file(f.config_file), c);
    auto given = [&](const char* opt) { return cmd->count(opt) > 0; };
    if (given("--curve")) c.curve = f.curve;
    if (given("--center")) c.center = loewner::cplx{f.center[0], f.center[1]};
    if (given("--n")) c.solver.nodes = f.n;
    if (given("--tol")) c.solver.tol = f.tol;
    if (given("--max-iterations")) c.solver.max_iterations = f.max_iterations;
    if (given("--panels")) c.quadrature.n_panels = f.panels;
    if (given("--gauss")) c.quadrature.n_gauss = f.gauss;
    if (given("--angles")) c.quadrature.n_theta = f.angles;
    if (given("--format")) c.format = f.format;
    if (given("--out")) c.out_dir = f.out;
    if (given("--workers")) c.workers = f.workers;
    if (name == "energy") {
        if (given("--no-frames")) c.frames = false;
        if (given("--no-grunsky")) c.grunsky = false;
        if (given("--no-mobius")) c.mobius = false;
        if (given("--convergence")) c.convergence = true;
        if (given("--threshold")) c.thresholds.residual = f.threshold;
    } else if (name == "frames") {
        if (given("--threshold")) c.thresholds.analytic = f.threshold;
    } else if (name == "audit") {
        if (given("--only")) c.only = f.only;
        if (given("--threshold")) c.thresholds.audit = f.threshold;
    }
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Loewner energy of Jordan curves by five equal formulas, with harmonic moving frames and identity checks"};
    app.require_subcommand(1);
    Flags flags;

    auto* energy = app.add_subcommand("energy", "energy report with pairwise residuals");
    add_common(energy, flags);
    energy->add_option("--threshold", flags.threshold, "max pairwise residual");
    energy->add_flag("--no-frames", flags.no_frames, "skip the frame energy formula");
    energy->add_flag("--no-grunsky", flags.no_grunsky, "skip the univalent-map identity");
    energy->add_flag("--no-mobius", flags.no_mobius, "skip the inversion check");
    energy->add_flag("--convergence", flags.convergence, "also write the convergence table");

    auto* frames = app.add_subcommand("frames", "moving frame and curvature residual tables");
    add_common(frames, flags);
    frames->add_option("--threshold", flags.threshold, "closed-form identity threshold");

    auto* convergence = app.add_subcommand("convergence", "S1 over the smoothing family and resolution doublings");
    add_common(convergence, flags);

    auto* audit = app.add_subcommand("audit", "closed-form constant checks");
    add_common(audit, flags);
    audit->add_option("--only", flags.only, "run a single named check");
    audit->add_option("--threshold", flags.threshold, "absolute tolerance");

    CLI11_PARSE(app, argc, argv);

    using namespace loewner::cli;
    const std::pair<CLI::App*, int (*)(const RunConfig&)> commands[] = {
        {energy, cmd_energy}, {frames, cmd_frames}, {convergence, cmd_convergence}, {audit, cmd_audit}};
    for (const auto& [cmd, fn] : commands) {
        if (cmd->parsed()) {
            RunConfig config;
            try {
                config = build_config(cmd, flags, cmd->get_name());
            } catch (const loewner::Error& e) {
                std::cerr << "error: " << e.what() << '\n';
                return solver_failure;
            }
            return run_guarded(fn, config);
        }
    }
    return solver_failure;
}
