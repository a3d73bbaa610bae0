#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "dlab/dirichlet.hpp"

namespace dlab {

// Estimate of (int_T |f|^alpha)^{1/alpha}; stderr via the delta method.
struct McEstimate {
    double mean;
    double std_error;
    std::uint64_t n_samples;
    std::uint64_t master_seed;
    double alpha;
};

inline constexpr std::size_t kMcChunk = 4096;

McEstimate estimate_torus_norm(const LiftedPolynomial& L, double alpha, std::uint64_t n_samples,
                               std::uint64_t master_seed, unsigned threads = 1);

// One set of torus samples shared across several exponents.
std::vector<McEstimate> estimate_torus_norms(const LiftedPolynomial& L, std::span<const double> alphas,
                                             std::uint64_t n_samples, std::uint64_t master_seed,
                                             unsigned threads = 1);

enum class PhaseMode {
    full_torus,     // one phase per basis prime, pushed through the lift
    per_frequency,  // one independent phase per frequency
};

// L^1 norm of sum_j c_j xi_j for a coprime system.
McEstimate estimate_coprime_l1(const CoprimeSystem& system, PhaseMode mode, std::uint64_t n_samples,
                               std::uint64_t master_seed, unsigned threads = 1);

// Row-major symmetric 2x2 matrix.
using Covariance2 = std::array<double, 4>;

// E sqrt(g1^2 + g2^2) for centered Gaussian (g1, g2) with the given covariance.
double gaussian_modulus_mean(const Covariance2& covariance);

struct CltLimit {
    Covariance2 covariance;
    double modulus_mean;
};

CltLimit clt_limit(const Covariance2& covariance);

// Limit of the normalized Steinhaus sums: covariance diag(1/2, 1/2), mean sqrt(pi)/2.
CltLimit steinhaus_limit();

// E|N(0, I)| = (pi/2)^{1/2}; reported next to the derived limit for comparison.
double unit_covariance_limit();

struct ConditionRecord {
    u64 index_n;
    std::size_t k;
    double energy_B;
    bool cond1_monotone;     // B_n strictly larger than the previous member's
    double growth_exponent;  // d ln B / d ln n from the previous member; NaN for the first
    bool cond1_divergent;    // monotone and growth_exponent above kDivergenceFloor
    double cond2_ratio;      // max |c| / sqrt(B_n)
};

inline constexpr double kDivergenceFloor = 0.05;

std::vector<ConditionRecord> check_conditions(std::span<const CoprimeSystem> family);

struct RatioPoint {
    u64 index_n;
    std::size_t k;
    double energy_B;
    double ratio;
    double std_error;
    double limit_constant;
    double unit_covariance_constant;
    double cond2_ratio;
};

std::vector<RatioPoint> clt_ratio_curve(std::span<const CoprimeSystem> family, std::uint64_t n_samples,
                                             std::uint64_t master_seed, unsigned threads = 1);

enum class LacunaryMethod { automatic, quadrature, digit_sampling };

struct LacunaryResult {
    double ratio;
    double std_error;  // 0 for quadrature
    LacunaryMethod method;
    std::size_t terms;
};

inline constexpr u64 kLacunaryQuadratureAutoMax = u64{1} << 16;
inline constexpr u64 kLacunaryQuadratureMax = u64{1} << 24;
inline constexpr u64 kLacunaryDigitMax = u64{1} << 20;

// (int_0^1 |sum_k cos 2 pi a^{m_k} x| dx) / sqrt(n).
LacunaryResult lacunary_l1_ratio(u64 a, std::span<const u64> exponents, std::size_t panels,
                                 LacunaryMethod method = LacunaryMethod::automatic,
                                 std::uint64_t n_samples = 100'000, std::uint64_t master_seed = 0,
                                 unsigned threads = 1);

// E|N(0, 1/2)| = 1/sqrt(pi): the limit of the lacunary ratio.
double lacunary_limit();

}  // namespace dlab
