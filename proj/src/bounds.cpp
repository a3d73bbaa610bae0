#include "dlab/bounds.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "dlab/errors.hpp"
#include "dlab/parallel.hpp"

namespace dlab {

const char* to_string(BoundName name) noexcept {
    switch (name) {
        case BoundName::interpolation: return "interpolation";
        case BoundName::helson: return "helson";
        case BoundName::lcm_sum: return "lcm_sum";
        case BoundName::moment_shape: return "moment_shape";
    }
    return "unknown";
}

double interpolation_lower_bound(double m2, double m4, double r) {
    if (!(r > 0.0 && r < 2.0)) throw DomainError("interpolation_lower_bound: r must lie in (0, 2)");
    if (!(m2 > 0.0) || !(m4 > 0.0)) throw DomainError("interpolation_lower_bound: moments must be positive");
    if (m4 < m2 * m2 * (1.0 - 1e-12))
        throw DomainError("interpolation_lower_bound: inconsistent moments (m4 < m2^2)");
    // Work in logs: m4 can reach ~1e20 for N near the energy cap.
    const double log_int = 0.5 * (4.0 - r) * std::log(m2) - (1.0 - 0.5 * r) * std::log(m4);
    return std::exp(log_int / r);
}

BoundReport moment_bound_report(u64 N, double r, u64 energy_cap) {
    if (N < 2) throw DomainError("moment_bound_report: N must be >= 2");
    const double n = static_cast<double>(N);
    const double m4 = static_cast<double>(multiplicative_energy(N, energy_cap).count);
    const double value = interpolation_lower_bound(n, m4, r);
    const double shape = std::sqrt(n) / std::pow(std::log(n), 1.0 / r - 0.5);
    return {BoundName::moment_shape, value, {{"N", n}, {"r", r}, {"m2", n}, {"m4", m4}, {"shape", shape}}};
}

double helson_bound(u64 N) { return std::sqrt(helson_sum(N)); }

double lcm_sum_bound(const DirichletPolynomial& D, unsigned threads) {
    const auto f = D.frequencies();
    std::vector<double> w;
    for (const auto& a : D.coefficients()) w.push_back(std::norm(a));
    const std::size_t k = f.size();
    // Row sums with Neumaier compensation, then a pairwise reduction over rows.
    std::vector<double> rows(k);
    parallel_for(k, threads, [&](std::size_t i) {
        double sum = 0.0, comp = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            const double x = w[i] * w[j] / static_cast<double>(lcm_pair(f[i], f[j]));
            const double t = sum + x;
            comp += (std::abs(sum) >= std::abs(x)) ? (sum - t) + x : (x - t) + sum;
            sum = t;
        }
        rows[i] = sum + comp;
    });
    const double lcm_sum = pairwise_sum(rows);
    const double m2 = pairwise_sum(w);
    const double N = static_cast<double>(D.max_frequency());
    return std::pow(m2, 1.5) / std::sqrt(N * N * lcm_sum);
}

double khintchine_ratio(const CoprimeSystem& system, const McEstimate& mc) {
    for (u64 f : system.frequencies())
        if (!is_prime(f)) throw DomainError("khintchine_ratio: frequency " + std::to_string(f) + " is not prime");
    return mc.mean / std::sqrt(system.energy());
}

}  // namespace dlab
