#include "loewner/quadrature.hpp"

#include <atomic>
#include <cmath>
#include <memory>
#include <sstream>
#include <thread>

#include <gsl/gsl_integration.h>

#include "loewner/errors.hpp"

namespace loewner {

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        correction_ += (sum_ - t) + x;
    } else {
        correction_ += (x - t) + sum_;
    }
    sum_ = t;
}

namespace {

std::atomic<unsigned> configured_workers{0};

struct GlTableDeleter {
    void operator()(gsl_integration_glfixed_table* t) const { gsl_integration_glfixed_table_free(t); }
};

}  // namespace

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
    std::unique_ptr<gsl_integration_glfixed_table, GlTableDeleter> table(
        gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(n)));
    if (!table) throw Error(ErrorKind::invalid_parameter, "cannot build Gauss-Legendre table");
    nodes.resize(static_cast<std::size_t>(n));
    weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        gsl_integration_glfixed_point(a, b, static_cast<std::size_t>(i), &nodes[i], &weights[i],
                                      table.get());
    }
}

void set_worker_count(unsigned workers) { configured_workers = workers; }

unsigned worker_count() {
    const unsigned w = configured_workers.load();
    if (w != 0) return w;
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(worker_count(), count / 1024 + 1);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
            try {
                const std::size_t end = std::min(count, (w + 1) * chunk);
                for (std::size_t i = w * chunk; i < end; ++i) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

DiskQuadrature::DiskQuadrature(const DiskRuleParams& params) : params_(params) {
    if (params.n_panels < 1 || params.n_gauss < 1 || params.n_theta < 1) {
        throw Error(ErrorKind::invalid_parameter, "disk rule counts must be >= 1");
    }
    // Dyadic breakpoints: toward_zero panels ending at 1/2, then toward_one panels up to 1.
    const int toward_zero = (params.n_panels + 1) / 2;
    const int toward_one = params.n_panels - toward_zero;
    std::vector<double> breaks{0.0};
    for (int j = toward_zero; j >= 1; --j) breaks.push_back(std::ldexp(1.0, -j));
    if (toward_one == 0) {
        breaks.back() = 1.0;
    } else {
        for (int j = 2; j <= toward_one; ++j) breaks.push_back(1.0 - std::ldexp(1.0, -j));
        breaks.push_back(1.0);
    }

    std::vector<double> x;
    std::vector<double> w;
    gauss_legendre(params.n_gauss, 0.0, 1.0, x, w);
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        RadialPanel panel;
        panel.lo = breaks[p];
        panel.hi = breaks[p + 1];
        const double h = panel.hi - panel.lo;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (p == 0) {
                // r = h u^2 clusters nodes quadratically at the origin.
                panel.radii.push_back(h * x[i] * x[i]);
                panel.weights.push_back(2.0 * h * x[i] * w[i]);
            } else {
                panel.radii.push_back(panel.lo + h * x[i]);
                panel.weights.push_back(h * w[i]);
            }
        }
        panels_.push_back(std::move(panel));
    }

    const double dtheta = two_pi / params.n_theta;
    std::vector<cplx> rotations(static_cast<std::size_t>(params.n_theta));
    for (int j = 0; j < params.n_theta; ++j) rotations[j] = std::polar(1.0, dtheta * j);
    nodes_.reserve(panels_.size() * x.size() * rotations.size());
    for (const auto& panel : panels_) {
        for (std::size_t i = 0; i < panel.radii.size(); ++i) {
            const double r = panel.radii[i];
            const double weight = r * panel.weights[i] * dtheta;
            for (const auto& e : rotations) nodes_.push_back({r * e, weight});
        }
    }
}

DiskQuadrature disk_rule(int n_panels, int n_gauss, int n_theta) {
    return DiskQuadrature(DiskRuleParams{n_panels, n_gauss, n_theta});
}

namespace {

enum class Weighting { plain, log_radius, exterior };

double reduce(const NodeField& f, const DiskQuadrature& rule, Weighting weighting) {
    const auto& nodes = rule.nodes();
    std::vector<double> values(nodes.size());
    parallel_for(nodes.size(), [&](std::size_t i) { values[i] = f(i); });
    CompensatedSum sum;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double v = values[i];
        if (!std::isfinite(v)) {
            const cplx z = weighting == Weighting::exterior ? 1.0 / nodes[i].z : nodes[i].z;
            std::ostringstream msg;
            msg << "integrand is not finite at node " << i << " (z = " << z.real()
                << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i)";
            throw Error(ErrorKind::non_finite_sample, msg.str());
        }
        double w = nodes[i].weight;
        if (weighting == Weighting::log_radius) {
            w *= std::log(std::abs(nodes[i].z));
        } else if (weighting == Weighting::exterior) {
            const double r2 = std::norm(nodes[i].z);
            w /= r2 * r2;
        }
        sum.add(w * v);
    }
    return sum.value();
}

}  // namespace

double integrate_disk_nodes(const NodeField& f, const DiskQuadrature& rule) {
    return reduce(f, rule, Weighting::plain);
}

double integrate_log_weighted_nodes(const NodeField& f, const DiskQuadrature& rule) {
    return reduce(f, rule, Weighting::log_radius);
}

double integrate_exterior_nodes(const NodeField& f, const DiskQuadrature& rule) {
    return reduce(f, rule, Weighting::exterior);
}

double integrate_disk(const DiskField& f, const DiskQuadrature& rule) {
    const auto& nodes = rule.nodes();
    return integrate_disk_nodes([&](std::size_t i) { return f(nodes[i].z); }, rule);
}

double integrate_log_weighted(const DiskField& f, const DiskQuadrature& rule) {
    const auto& nodes = rule.nodes();
    return integrate_log_weighted_nodes([&](std::size_t i) { return f(nodes[i].z); }, rule);
}

double integrate_exterior(const DiskField& f, const DiskQuadrature& rule) {
    const auto& nodes = rule.nodes();
    return integrate_exterior_nodes([&](std::size_t i) { return f(1.0 / nodes[i].z); }, rule);
}

double sobolev_seminorm(const BoundaryFunction& b, double s) {
    CompensatedSum sum;
    const auto& c = b.fourier();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const int n = b.frequency(i);
        if (n == 0) continue;
        sum.add(std::pow(std::abs(static_cast<double>(n)), 2.0 * s) * std::norm(c[i]));
    }
    return sum.value();
}

}  // namespace loewner
