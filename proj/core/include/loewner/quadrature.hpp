#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "loewner/conformal.hpp"

namespace loewner {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + correction_; }

private:
    double sum_ = 0.0;
    double correction_ = 0.0;
};

struct RadialPanel {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<double> radii;
    // Weights for integrals of r-dependent functions dr (without the polar Jacobian).
    std::vector<double> weights;
};

struct DiskNode {
    cplx z;
    // r * w_r * 2 pi / n_theta.
    double weight = 0.0;
};

struct DiskRuleParams {
    int n_panels = 8;
    int n_gauss = 16;
    int n_theta = 512;
};

// Composite radial Gauss-Legendre panels (dyadically graded toward r = 0 and r = 1)
// times a uniform angular rule. The innermost panel uses r = h u^2 so the r log r weight
// near the origin is integrated by node placement alone.
class DiskQuadrature {
public:
    DiskQuadrature() = default;
    explicit DiskQuadrature(const DiskRuleParams& params);

    const DiskRuleParams& params() const { return params_; }
    const std::vector<RadialPanel>& panels() const { return panels_; }
    const std::vector<DiskNode>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    int angular_count() const { return params_.n_theta; }

private:
    DiskRuleParams params_;
    std::vector<RadialPanel> panels_;
    std::vector<DiskNode> nodes_;
};

DiskQuadrature disk_rule(int n_panels = 8, int n_gauss = 16, int n_theta = 512);

using DiskField = std::function<double(cplx)>;
// Integrand addressed by node index, for callers that cache map evaluations per node.
using NodeField = std::function<double(std::size_t)>;

double integrate_disk(const DiskField& f, const DiskQuadrature& rule);
double integrate_log_weighted(const DiskField& f, const DiskQuadrature& rule);
// Integral over |z| > 1 as the disk integral of f(1/w) |w|^{-4}.
double integrate_exterior(const DiskField& f, const DiskQuadrature& rule);

// Node-indexed variants. For the exterior rule the field is evaluated at z = 1 / node.
double integrate_disk_nodes(const NodeField& f, const DiskQuadrature& rule);
double integrate_log_weighted_nodes(const NodeField& f, const DiskQuadrature& rule);
double integrate_exterior_nodes(const NodeField& f, const DiskQuadrature& rule);

// sum_{n != 0} |n|^{2s} |fhat_n|^2.
double sobolev_seminorm(const BoundaryFunction& b, double s);

// Evaluates fn(i) for i in [0, count) on worker threads; results land in index order.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

// Worker count used by parallel_for; 0 restores the hardware default.
void set_worker_count(unsigned workers);
unsigned worker_count();

// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace loewner
