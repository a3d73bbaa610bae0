#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace dlab {

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule by Newton iteration on P_n.
GaussLegendreRule gauss_legendre_rule(std::size_t n);

// Cached 16-point rule used by the composite integrators.
const GaussLegendreRule& gauss_legendre_16();

// Integral of f over [a, b] with `panels` equal panels of the 16-point rule.
// Panel sums are reduced pairwise, so the result does not depend on `threads`.
double composite_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                                std::size_t panels, unsigned threads = 1);

// Adaptive Gauss-Legendre (16 vs 2x8 panel split) to relative tolerance.
double adaptive_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                               double rel_tol = 1e-12, int max_depth = 30);

}  // namespace dlab
