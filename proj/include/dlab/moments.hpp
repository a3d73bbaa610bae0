#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dlab/dirichlet.hpp"

namespace dlab {

enum class MomentMethod { parseval_convolution, brute_force };

// Limits T -> infinity of (1/T) int |D|^2 and (1/T) int |D|^4.
struct MomentReport {
    double m2;
    double m4;
    std::size_t term_count;
    MomentMethod method;
};

enum class EnergyMethod { totient_grouping, representation_function, quadruple_bruteforce };

// N(B) = #{x1 x2 = x3 x4 : 1 <= x_i <= B}.
struct EnergyCount {
    u64 B;
    u64 count;
    EnergyMethod method;
};

inline constexpr u64 kDefaultEnergyCap = 1'000'000;
inline constexpr u64 kTallyEnergyCap = 30'000;
inline constexpr u64 kBruteforceEnergyCap = 200;

double second_moment(const DirichletPolynomial& D);

// (Sum a_n n^{-it})^2 = Sum_m b_m m^{-it}; entries sorted by m, zero b_m omitted.
std::vector<std::pair<u64, cplx>> convolution_coefficients(const DirichletPolynomial& D);

double fourth_moment(const DirichletPolynomial& D);

// Direct sum over quadruples of terms with n1 n2 = n3 n4; for small term counts.
double fourth_moment_bruteforce(const DirichletPolynomial& D);

MomentReport moment_report(const DirichletPolynomial& D, MomentMethod method = MomentMethod::parseval_convolution);

// theta in (1/T) int_0^T |sum_{n<=N} n^{-it}|^2 dt = N + theta N^2 / T, by quadrature.
double montgomery_theta(u64 N, double T, std::size_t panels, unsigned threads = 1);

// Exact gcd grouping: N(B) = sum_g P(floor(B/g)) with
// P(M) = sum_{m<=M} floor(B/m) (2 phi(m) - [m = 1]).
EnergyCount multiplicative_energy(u64 B, u64 cap = kDefaultEnergyCap);

// Sum_m r_B(m)^2 from a product tally over blocks of m.
EnergyCount multiplicative_energy_tally(u64 B, unsigned threads = 1);

// Enumerates (x1, x2, x3) and solves for x4. B <= 200.
EnergyCount multiplicative_energy_bruteforce(u64 B);

enum class ZetaConvention {
    positive_sum,   // zeta'(2) := +sum ln n / n^2
    analytic_derivative,  // zeta'(2) = -sum ln n / n^2
};

// sum_{n>=1} ln n / n^2 (Euler-Maclaurin tail).
double log_over_square_sum();

double acz_constant(ZetaConvention convention);

struct AczPrediction {
    double main;           // (12/pi^2) B^2 ln B
    double constant_term;  // C B^2
    double C;
};

AczPrediction acz_prediction(u64 B, ZetaConvention convention);

}  // namespace dlab
