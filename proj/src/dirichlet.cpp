#include "dlab/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dlab/errors.hpp"
#include "dlab/parallel.hpp"
#include "dlab/phasor.hpp"
#include "dlab/quadrature.hpp"

namespace dlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double frac(double x) {
    double f = x - std::floor(x);
    return f >= 1.0 ? 0.0 : f;
}

inline cplx unit_turns(double turns) { return unit_phasor(frac(turns)); }

cplx ipow(cplx z, std::uint32_t e) {
    cplx acc{1.0, 0.0};
    while (e) {
        if (e & 1u) acc *= z;
        z *= z;
        e >>= 1u;
    }
    return acc;
}

}  // namespace

DirichletPolynomial::DirichletPolynomial(std::vector<u64> frequencies, std::vector<cplx> coefficients)
    : frequencies_(std::move(frequencies)), coefficients_(std::move(coefficients)) {
    if (frequencies_.empty()) throw DomainError("dirichlet polynomial: no terms");
    if (frequencies_.size() != coefficients_.size())
        throw DomainError("dirichlet polynomial: frequency/coefficient length mismatch");
    for (std::size_t i = 0; i < frequencies_.size(); ++i) {
        if (frequencies_[i] == 0) throw DomainError("dirichlet polynomial: frequency 0");
        if (i > 0 && frequencies_[i] <= frequencies_[i - 1])
            throw DomainError("dirichlet polynomial: frequencies must be strictly increasing (at " +
                              std::to_string(frequencies_[i]) + ")");
        if (!std::isfinite(coefficients_[i].real()) || !std::isfinite(coefficients_[i].imag()))
            throw DomainError("dirichlet polynomial: non-finite coefficient");
    }
}

DirichletPolynomial DirichletPolynomial::ones(u64 N) {
    if (N == 0) throw DomainError("ones: N must be >= 1");
    std::vector<u64> f(N);
    for (u64 n = 0; n < N; ++n) f[n] = n + 1;
    return {std::move(f), std::vector<cplx>(N, cplx{1.0, 0.0})};
}

DirichletPolynomial DirichletPolynomial::from_system(const CoprimeSystem& system) {
    std::vector<std::pair<u64, double>> terms;
    for (std::size_t i = 0; i < system.size(); ++i)
        terms.emplace_back(system.frequencies()[i], system.coefficients()[i]);
    std::sort(terms.begin(), terms.end());
    std::vector<u64> f;
    std::vector<cplx> c;
    for (auto [freq, coeff] : terms) {
        f.push_back(freq);
        c.emplace_back(coeff, 0.0);
    }
    return {std::move(f), std::move(c)};
}

cplx evaluate(const DirichletPolynomial& D, double t) {
    cplx s{0.0, 0.0};
    const auto f = D.frequencies();
    const auto a = D.coefficients();
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double arg = -t * std::log(static_cast<double>(f[i]));
        s += a[i] * cplx{std::cos(arg), std::sin(arg)};
    }
    return s;
}

LiftedPolynomial bohr_lift(const DirichletPolynomial& D) {
    LiftedPolynomial L;
    L.prime_basis = sieve_primes(D.max_frequency());
    L.coefficients.assign(D.coefficients().begin(), D.coefficients().end());
    L.rows.reserve(D.size());
    for (u64 n : D.frequencies()) {
        std::vector<LiftedPolynomial::Entry> row;
        for (const auto& pp : factorize(n).factors) {
            const auto it = std::lower_bound(L.prime_basis.begin(), L.prime_basis.end(), pp.prime);
            row.push_back({static_cast<std::uint32_t>(it - L.prime_basis.begin()), pp.exponent});
        }
        L.rows.push_back(std::move(row));
    }
    return L;
}

cplx evaluate_lift(const LiftedPolynomial& L, std::span<const double> phases) {
    if (phases.size() != L.dimension())
        throw DomainError("evaluate_lift: expected " + std::to_string(L.dimension()) + " phases, got " +
                          std::to_string(phases.size()));
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < L.rows.size(); ++i) {
        // Accumulate in turns and reduce before the trig call.
        double turns = 0.0;
        for (const auto& e : L.rows[i]) turns = frac(turns + e.exponent * phases[e.basis_index]);
        s += L.coefficients[i] * unit_turns(turns);
    }
    return s;
}

cplx evaluate_lift_points(const LiftedPolynomial& L, std::span<const cplx> z) {
    if (z.size() != L.dimension()) throw DomainError("evaluate_lift_points: dimension mismatch");
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < L.rows.size(); ++i) {
        cplx m{1.0, 0.0};
        for (const auto& e : L.rows[i]) m *= (e.exponent == 1 ? z[e.basis_index] : ipow(z[e.basis_index], e.exponent));
        s += L.coefficients[i] * m;
    }
    return s;
}

std::vector<double> orbit_phases(const LiftedPolynomial& L, double t) {
    std::vector<double> out;
    out.reserve(L.dimension());
    for (u64 p : L.prime_basis) out.push_back(frac(-t * std::log(static_cast<double>(p)) / kTwoPi));
    return out;
}

namespace {

struct RefinedMean {
    double fine;
    double coarse;
};

std::vector<RefinedMean> refined_means(const DirichletPolynomial& D, double T,
                                       std::span<const double> alphas, std::size_t panels,
                                       unsigned threads) {
    if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("finite_time_norm: T must be positive");
    if (panels == 0) throw DomainError("finite_time_norm: panels must be >= 1");
    for (double a : alphas)
        if (!(a > 0.0)) throw DomainError("finite_time_norm: alpha must be positive");

    const auto& rule = gauss_legendre_16();
    const std::size_t na = alphas.size();
    const double h = T / static_cast<double>(panels);
    std::vector<double> logs;
    for (u64 n : D.frequencies()) logs.push_back(std::log(static_cast<double>(n)));
    const auto coeffs = D.coefficients();

    auto modulus = [&](double t) {
        cplx s{0.0, 0.0};
        for (std::size_t i = 0; i < logs.size(); ++i) {
            const double arg = -t * logs[i];
            s += coeffs[i] * cplx{std::cos(arg), std::sin(arg)};
        }
        return std::abs(s);
    };
    auto power = [](double m, double alpha) {
        if (alpha == 1.0) return m;
        if (alpha == 2.0) return m * m;
        if (alpha == 4.0) return (m * m) * (m * m);
        return std::pow(m, alpha);
    };
    auto panel_sums = [&](double lo, double hi, std::span<double> out) {
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        std::fill(out.begin(), out.end(), 0.0);
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double m = modulus(mid + half * rule.nodes[k]);
            for (std::size_t j = 0; j < na; ++j) out[j] += rule.weights[k] * power(m, alphas[j]);
        }
        for (auto& v : out) v *= half;
    };

    // Per coarse panel and alpha: the panel rule and the sum of its two halves.
    std::vector<double> coarse(panels * na), fine(panels * na);
    parallel_for(panels, threads, [&](std::size_t i) {
        const double lo = h * static_cast<double>(i);
        const double hi = (i + 1 == panels) ? T : lo + h;
        const double mid = 0.5 * (lo + hi);
        std::vector<double> a(na), b(na);
        panel_sums(lo, hi, std::span<double>(coarse).subspan(i * na, na));
        panel_sums(lo, mid, a);
        panel_sums(mid, hi, b);
        for (std::size_t j = 0; j < na; ++j) fine[i * na + j] = a[j] + b[j];
    });

    std::vector<RefinedMean> out;
    std::vector<double> column(panels);
    for (std::size_t j = 0; j < na; ++j) {
        for (std::size_t i = 0; i < panels; ++i) column[i] = coarse[i * na + j];
        const double mean_coarse = pairwise_sum(column) / T;
        for (std::size_t i = 0; i < panels; ++i) column[i] = fine[i * na + j];
        const double mean_fine = pairwise_sum(column) / T;
        if (!std::isfinite(mean_coarse) || !std::isfinite(mean_fine))
            throw NumericError("finite_time_norm: non-finite integral");
        out.push_back({mean_fine, mean_coarse});
    }
    return out;
}

}  // namespace

std::vector<NormEstimate> finite_time_means(const DirichletPolynomial& D, double T,
                                            std::span<const double> alphas, std::size_t panels,
                                            unsigned threads) {
    std::vector<NormEstimate> out;
    for (const auto& m : refined_means(D, T, alphas, panels, threads))
        out.push_back({m.fine, std::abs(m.fine - m.coarse)});
    return out;
}

std::vector<NormEstimate> finite_time_norms(const DirichletPolynomial& D, double T,
                                            std::span<const double> alphas, std::size_t panels,
                                            unsigned threads) {
    const auto means = refined_means(D, T, alphas, panels, threads);
    std::vector<NormEstimate> out;
    for (std::size_t j = 0; j < means.size(); ++j) {
        const double inv = 1.0 / alphas[j];
        const double v = std::pow(means[j].fine, inv);
        out.push_back({v, std::abs(v - std::pow(means[j].coarse, inv))});
    }
    return out;
}

NormEstimate finite_time_norm(const DirichletPolynomial& D, double T, double alpha,
                              std::size_t panels, unsigned threads) {
    const double a[] = {alpha};
    return finite_time_norms(D, T, a, panels, threads).front();
}

NormEstimate finite_time_mean(const DirichletPolynomial& D, double T, double alpha,
                              std::size_t panels, unsigned threads) {
    const double a[] = {alpha};
    return finite_time_means(D, T, a, panels, threads).front();
}

}  // namespace dlab
