#include "dlab/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "dlab/errors.hpp"
#include "dlab/parallel.hpp"

namespace dlab {

GaussLegendreRule gauss_legendre_rule(std::size_t n) {
    if (n == 0) throw DomainError("gauss_legendre_rule: n must be >= 1");
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / static_cast<double>(j);
            }
            dp = static_cast<double>(n) * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

const GaussLegendreRule& gauss_legendre_16() {
    static const GaussLegendreRule rule = gauss_legendre_rule(16);
    return rule;
}

namespace {

double panel_integral(const std::function<double(double)>& f, const GaussLegendreRule& rule,
                      double lo, double hi) {
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    double s = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) s += rule.weights[k] * f(mid + half * rule.nodes[k]);
    return half * s;
}

}  // namespace

double composite_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                                std::size_t panels, unsigned threads) {
    if (panels == 0) throw DomainError("composite_gauss_legendre: panels must be >= 1");
    const auto& rule = gauss_legendre_16();
    const double h = (b - a) / static_cast<double>(panels);
    std::vector<double> sums(panels);
    parallel_for(panels, threads, [&](std::size_t i) {
        const double lo = a + h * static_cast<double>(i);
        const double hi = (i + 1 == panels) ? b : lo + h;
        sums[i] = panel_integral(f, rule, lo, hi);
    });
    return pairwise_sum(sums);
}

namespace {

double adaptive_step(const std::function<double(double)>& f, const GaussLegendreRule& rule,
                     double lo, double hi, double whole, double abs_tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double left = panel_integral(f, rule, lo, mid);
    const double right = panel_integral(f, rule, mid, hi);
    const double refined = left + right;
    if (depth <= 0 || std::abs(refined - whole) <= abs_tol) return refined;
    return adaptive_step(f, rule, lo, mid, left, 0.5 * abs_tol, depth - 1) +
           adaptive_step(f, rule, mid, hi, right, 0.5 * abs_tol, depth - 1);
}

}  // namespace

double adaptive_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                               double rel_tol, int max_depth) {
    const auto& rule = gauss_legendre_16();
    const double whole = panel_integral(f, rule, a, b);
    const double abs_tol = std::max(rel_tol * std::abs(whole), 1e-300);
    const double out = adaptive_step(f, rule, a, b, whole, abs_tol, max_depth);
    if (!std::isfinite(out)) throw NumericError("adaptive_gauss_legendre: non-finite result");
    return out;
}

}  // namespace dlab
