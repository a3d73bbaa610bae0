#include "dlab/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dlab/errors.hpp"
#include "dlab/parallel.hpp"
#include "dlab/phasor.hpp"
#include "dlab/quadrature.hpp"
#include "dlab/rng.hpp"

namespace dlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Running mean and sum of squared deviations; merged with Chan's formula.
struct Moments {
    double n = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        n += 1.0;
        const double d = x - mean;
        mean += d / n;
        m2 += d * (x - mean);
    }

    static Moments merge(const Moments& a, const Moments& b) {
        if (a.n == 0.0) return b;
        if (b.n == 0.0) return a;
        Moments out;
        out.n = a.n + b.n;
        const double d = b.mean - a.mean;
        out.mean = a.mean + d * (b.n / out.n);
        out.m2 = a.m2 + b.m2 + d * d * (a.n * b.n / out.n);
        return out;
    }
};

Moments pairwise_merge(std::span<const Moments> xs) {
    if (xs.empty()) return {};
    if (xs.size() == 1) return xs.front();
    const std::size_t half = xs.size() / 2;
    return Moments::merge(pairwise_merge(xs.first(half)), pairwise_merge(xs.subspan(half)));
}

// Plain complex product; std::complex operator* carries the Annex G
// inf/nan recovery path, which dominates the sampling loop.
inline cplx mul(cplx a, cplx b) noexcept {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

cplx ipow(cplx z, std::uint32_t e) {
    cplx acc{1.0, 0.0};
    while (e) {
        if (e & 1u) acc = mul(acc, z);
        z = mul(z, z);
        e >>= 1u;
    }
    return acc;
}

inline double power(double m, double alpha) {
    if (alpha == 1.0) return m;
    if (alpha == 2.0) return m * m;
    if (alpha == 4.0) return (m * m) * (m * m);
    return std::pow(m, alpha);
}

McEstimate to_estimate(const Moments& s, double alpha, std::uint64_t seed) {
    const auto n = static_cast<std::uint64_t>(s.n);
    const double sd = n > 1 ? std::sqrt(std::max(s.m2, 0.0) / (s.n - 1.0)) : 0.0;
    const double se_raw = sd / std::sqrt(s.n);
    const double mean_raw = std::max(s.mean, 0.0);
    double value = std::pow(mean_raw, 1.0 / alpha);
    double se = alpha == 1.0 ? se_raw
                             : (mean_raw > 0.0 ? value / (alpha * mean_raw) * se_raw : 0.0);
    return {value, se, n, seed, alpha};
}

// Fixed chunking of the sample index range; `sample(i, out)` writes one
// value per statistic.
template <class Sampler>
std::vector<Moments> chunked_moments(std::uint64_t n_samples, std::size_t n_stats, unsigned threads,
                                     Sampler&& sample) {
    const std::size_t chunks = static_cast<std::size_t>((n_samples + kMcChunk - 1) / kMcChunk);
    std::vector<Moments> per_chunk(chunks * n_stats);
    parallel_for(chunks, threads, [&](std::size_t c) {
        std::vector<double> values(n_stats);
        const std::uint64_t lo = c * kMcChunk;
        const std::uint64_t hi = std::min<std::uint64_t>(n_samples, lo + kMcChunk);
        for (std::uint64_t i = lo; i < hi; ++i) {
            sample(i, std::span<double>(values));
            for (std::size_t j = 0; j < n_stats; ++j) per_chunk[c * n_stats + j].add(values[j]);
        }
    });
    std::vector<Moments> out(n_stats);
    std::vector<Moments> column(chunks);
    for (std::size_t j = 0; j < n_stats; ++j) {
        for (std::size_t c = 0; c < chunks; ++c) column[c] = per_chunk[c * n_stats + j];
        out[j] = pairwise_merge(column);
    }
    return out;
}

void check_samples(std::uint64_t n_samples) {
    if (n_samples < 2) throw DomainError("monte carlo: n_samples must be >= 2");
}

}  // namespace

std::vector<McEstimate> estimate_torus_norms(const LiftedPolynomial& L, std::span<const double> alphas,
                                             std::uint64_t n_samples, std::uint64_t master_seed,
                                             unsigned threads) {
    check_samples(n_samples);
    for (double a : alphas)
        if (!(a > 0.0)) throw DomainError("estimate_torus_norm: alpha must be positive");

    // Contiguous copy of the exponent rows; only primes that occur are sampled.
    std::vector<std::uint32_t> used, offsets{0}, index, exponent;
    {
        std::vector<char> mask(L.dimension(), 0);
        for (const auto& row : L.rows) {
            for (const auto& e : row) {
                mask[e.basis_index] = 1;
                index.push_back(e.basis_index);
                exponent.push_back(e.exponent);
            }
            offsets.push_back(static_cast<std::uint32_t>(index.size()));
        }
        for (std::uint32_t j = 0; j < mask.size(); ++j)
            if (mask[j]) used.push_back(j);
    }
    const auto& coeffs = L.coefficients;

    const auto stats = chunked_moments(n_samples, alphas.size(), threads, [&](std::uint64_t i, std::span<double> out) {
        thread_local std::vector<cplx> z;
        z.resize(L.dimension());
        const CounterRng rng(master_seed, i);
        for (std::uint32_t j : used) z[j] = unit_phasor(rng.uniform(j));
        cplx s{0.0, 0.0};
        for (std::size_t t = 0; t + 1 < offsets.size(); ++t) {
            cplx m{1.0, 0.0};
            for (std::uint32_t e = offsets[t]; e < offsets[t + 1]; ++e)
                m = mul(m, exponent[e] == 1 ? z[index[e]] : ipow(z[index[e]], exponent[e]));
            s += mul(coeffs[t], m);
        }
        const double m = std::abs(s);
        for (std::size_t k = 0; k < alphas.size(); ++k) out[k] = power(m, alphas[k]);
    });

    std::vector<McEstimate> out;
    for (std::size_t k = 0; k < alphas.size(); ++k) out.push_back(to_estimate(stats[k], alphas[k], master_seed));
    return out;
}

McEstimate estimate_torus_norm(const LiftedPolynomial& L, double alpha, std::uint64_t n_samples,
                               std::uint64_t master_seed, unsigned threads) {
    const double a[] = {alpha};
    return estimate_torus_norms(L, a, n_samples, master_seed, threads).front();
}

McEstimate estimate_coprime_l1(const CoprimeSystem& system, PhaseMode mode, std::uint64_t n_samples,
                               std::uint64_t master_seed, unsigned threads) {
    check_samples(n_samples);
    if (mode == PhaseMode::full_torus)
        return estimate_torus_norm(bohr_lift(DirichletPolynomial::from_system(system)), 1.0, n_samples,
                                   master_seed, threads);
    const auto c = system.coefficients();
    const auto stats = chunked_moments(n_samples, 1, threads, [&](std::uint64_t i, std::span<double> out) {
        const CounterRng rng(master_seed, i);
        cplx s{0.0, 0.0};
        for (std::size_t j = 0; j < c.size(); ++j) {
            s += c[j] * unit_phasor(rng.uniform(j));  // real * complex: no Annex G path
        }
        out[0] = std::abs(s);
    });
    return to_estimate(stats[0], 1.0, master_seed);
}

double gaussian_modulus_mean(const Covariance2& cov) {
    const double a = cov[0], b = cov[1], b2 = cov[2], c = cov[3];
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(b2), std::abs(c)});
    for (double v : cov)
        if (!std::isfinite(v)) throw DomainError("gaussian_modulus_mean: non-finite covariance entry");
    if (std::abs(b - b2) > 1e-12 * scale) throw DomainError("gaussian_modulus_mean: covariance not symmetric");
    if (a < 0.0 || c < 0.0 || a * c - b * b < -1e-12 * scale * scale)
        throw DomainError("gaussian_modulus_mean: covariance not positive semidefinite");
    if (scale == 0.0) return 0.0;

    // Eigenvalues l1 >= l2 >= 0; in the eigenbasis |g| = rho sqrt(l1 cos^2 + l2 sin^2)
    // with rho Rayleigh (E rho = sqrt(pi/2)) independent of a uniform angle.
    const double tr = a + c, disc = std::sqrt((a - c) * (a - c) + 4.0 * b * b);
    const double l1 = 0.5 * (tr + disc);
    const double l2 = std::max(0.5 * (tr - disc), 0.0);
    const double radial = std::sqrt(std::numbers::pi / 2.0);
    if (l1 - l2 <= 1e-15 * l1) return radial * std::sqrt(0.5 * (l1 + l2));
    const double angular = adaptive_gauss_legendre(
        [&](double phi) {
            const double cs = std::cos(phi), sn = std::sin(phi);
            return std::sqrt(l1 * cs * cs + l2 * sn * sn);
        },
        0.0, std::numbers::pi / 2.0, 1e-13);
    return radial * angular * (2.0 / std::numbers::pi);
}

CltLimit clt_limit(const Covariance2& covariance) { return {covariance, gaussian_modulus_mean(covariance)}; }

CltLimit steinhaus_limit() { return clt_limit({0.5, 0.0, 0.0, 0.5}); }

double unit_covariance_limit() { return std::sqrt(std::numbers::pi / 2.0); }

std::vector<ConditionRecord> check_conditions(std::span<const CoprimeSystem> family) {
    if (family.empty()) throw DomainError("check_conditions: empty family");
    std::vector<ConditionRecord> out;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto& s = family[i];
        ConditionRecord r{s.index_n(), s.size(), s.energy(), true, std::numeric_limits<double>::quiet_NaN(),
                          true, s.max_abs_coefficient() / std::sqrt(s.energy())};
        if (i > 0) {
            const auto& prev = family[i - 1];
            if (s.index_n() <= prev.index_n()) throw DomainError("check_conditions: indices must increase");
            r.cond1_monotone = s.energy() > prev.energy();
            r.growth_exponent = std::log(s.energy() / prev.energy()) /
                                std::log(static_cast<double>(s.index_n()) / static_cast<double>(prev.index_n()));
            r.cond1_divergent = r.cond1_monotone && r.growth_exponent > kDivergenceFloor;
        }
        out.push_back(r);
    }
    return out;
}

std::vector<RatioPoint> clt_ratio_curve(std::span<const CoprimeSystem> family, std::uint64_t n_samples,
                                             std::uint64_t master_seed, unsigned threads) {
    const double limit = steinhaus_limit().modulus_mean;
    std::vector<RatioPoint> out;
    for (const auto& s : family) {
        const auto est = estimate_coprime_l1(s, PhaseMode::full_torus, n_samples, master_seed, threads);
        const double root_b = std::sqrt(s.energy());
        out.push_back({s.index_n(), s.size(), s.energy(), est.mean / root_b, est.std_error / root_b, limit,
                       unit_covariance_limit(), s.max_abs_coefficient() / root_b});
    }
    return out;
}

double lacunary_limit() { return 1.0 / std::sqrt(std::numbers::pi); }

namespace {

LacunaryResult lacunary_quadrature(u64 a, std::span<const u64> exponents, std::size_t panels, unsigned threads) {
    std::vector<double> freqs;
    u64 top = 0;
    for (u64 m : exponents) {
        u64 n = 1;
        for (u64 i = 0; i < m; ++i) n = checked_mul(n, a);
        if (n > kLacunaryQuadratureMax)
            throw ResourceError("lacunary_l1_ratio: frequency " + std::to_string(n) + " too large for quadrature");
        freqs.push_back(static_cast<double>(n));
        top = n;
    }
    panels = std::max<std::size_t>(panels, 8 * top);
    const double integral = composite_gauss_legendre(
        [&](double x) {
            double s = 0.0;
            for (double f : freqs) {
                const double t = f * x;
                s += std::cos(kTwoPi * (t - std::floor(t)));
            }
            return std::abs(s);
        },
        0.0, 1.0, panels, threads);
    return {integral / std::sqrt(static_cast<double>(exponents.size())), 0.0, LacunaryMethod::quadrature,
            exponents.size()};
}

// x uniform on [0,1) has i.i.d. base-a digits d_1 d_2 ..., and
// frac(a^m x) = sum_{i>=1} d_{m+i} a^{-i}. The backward recurrence
// f(j) = (d_{j+1} + f(j+1)) / a damps the truncation error at each step.
LacunaryResult lacunary_digits(u64 a, std::span<const u64> exponents, std::uint64_t n_samples,
                               std::uint64_t master_seed, unsigned threads) {
    const u64 top = exponents.back();
    if (top > kLacunaryDigitMax)
        throw ResourceError("lacunary_l1_ratio: exponent " + std::to_string(top) + " exceeds digit budget");
    const u64 guard = static_cast<u64>(std::ceil(64.0 / std::log2(static_cast<double>(a)))) + 2;
    const u64 depth = top + guard;
    const double inv_a = 1.0 / static_cast<double>(a);
    const double root_n = std::sqrt(static_cast<double>(exponents.size()));
    const auto stats = chunked_moments(n_samples, 1, threads, [&](std::uint64_t i, std::span<double> out) {
        const CounterRng rng(master_seed, i);
        double f = rng.uniform(depth + 1);  // tail beyond the last digit
        std::size_t k = exponents.size();
        double s = 0.0;
        for (u64 j = depth; j-- > 0;) {
            f = (static_cast<double>(rng.below(j + 1, a)) + f) * inv_a;  // f = f(j)
            while (k > 0 && exponents[k - 1] == j) {
                s += unit_phasor(f).real();
                --k;
            }
            if (k == 0) break;
        }
        out[0] = std::abs(s) / root_n;
    });
    const auto est = to_estimate(stats[0], 1.0, master_seed);
    return {est.mean, est.std_error, LacunaryMethod::digit_sampling, exponents.size()};
}

}  // namespace

LacunaryResult lacunary_l1_ratio(u64 a, std::span<const u64> exponents, std::size_t panels, LacunaryMethod method,
                                 std::uint64_t n_samples, std::uint64_t master_seed, unsigned threads) {
    if (a < 2) throw DomainError("lacunary_l1_ratio: base must be >= 2");
    if (exponents.empty()) throw DomainError("lacunary_l1_ratio: no exponents");
    for (std::size_t i = 1; i < exponents.size(); ++i)
        if (exponents[i] <= exponents[i - 1]) throw DomainError("lacunary_l1_ratio: exponents must increase");
    if (panels == 0) throw DomainError("lacunary_l1_ratio: panels must be >= 1");

    if (method == LacunaryMethod::automatic) {
        // a^{m_n} <= auto limit, checked without overflow
        u64 n = 1;
        bool small = true;
        for (u64 i = 0; i < exponents.back() && small; ++i) {
            if (n > kLacunaryQuadratureAutoMax / a) small = false;
            else n *= a;
        }
        method = small ? LacunaryMethod::quadrature : LacunaryMethod::digit_sampling;
    }
    if (method == LacunaryMethod::quadrature) return lacunary_quadrature(a, exponents, panels, threads);
    check_samples(n_samples);
    return lacunary_digits(a, exponents, n_samples, master_seed, threads);
}

}  // namespace dlab
