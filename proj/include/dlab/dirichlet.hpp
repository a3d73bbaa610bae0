#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "dlab/numtheory.hpp"

namespace dlab {

using cplx = std::complex<double>;

// D(it) = sum_n a_n n^{-it} over strictly increasing integer frequencies n >= 1.
class DirichletPolynomial {
public:
    DirichletPolynomial(std::vector<u64> frequencies, std::vector<cplx> coefficients);

    // a_n = 1 for n = 1..N.
    static DirichletPolynomial ones(u64 N);
    static DirichletPolynomial from_system(const CoprimeSystem& system);

    std::span<const u64> frequencies() const noexcept { return frequencies_; }
    std::span<const cplx> coefficients() const noexcept { return coefficients_; }
    std::size_t size() const noexcept { return frequencies_.size(); }
    u64 max_frequency() const noexcept { return frequencies_.back(); }

    friend bool operator==(const DirichletPolynomial&, const DirichletPolynomial&) = default;

private:
    std::vector<u64> frequencies_;
    std::vector<cplx> coefficients_;
};

cplx evaluate(const DirichletPolynomial& D, double t);

// Bohr image: each n becomes the monomial prod_j z_j^{v_{p_j}(n)}.
struct LiftedPolynomial {
    struct Entry {
        std::uint32_t basis_index;
        std::uint32_t exponent;
        friend bool operator==(const Entry&, const Entry&) = default;
    };

    std::vector<u64> prime_basis;             // all primes <= max frequency
    std::vector<std::vector<Entry>> rows;     // one exponent row per term
    std::vector<cplx> coefficients;

    std::size_t dimension() const noexcept { return prime_basis.size(); }
};

LiftedPolynomial bohr_lift(const DirichletPolynomial& D);

// Phases are in turns; each must lie in [0, 1).
cplx evaluate_lift(const LiftedPolynomial& L, std::span<const double> phases);

// Same value as evaluate_lift, given precomputed z_j = exp(2 pi i phase_j).
cplx evaluate_lift_points(const LiftedPolynomial& L, std::span<const cplx> z);

// Torus point reached by the flow at time t: theta_j = -t ln p_j / (2 pi) mod 1.
std::vector<double> orbit_phases(const LiftedPolynomial& L, double t);

struct NormEstimate {
    double value;
    double error;  // |value(panels) - value(2 panels)|
};

// (1/T) int_0^T |D(it)|^alpha dt, refined value with doubling error estimate.
NormEstimate finite_time_mean(const DirichletPolynomial& D, double T, double alpha,
                              std::size_t panels, unsigned threads = 1);

// ((1/T) int_0^T |D(it)|^alpha dt)^{1/alpha}.
NormEstimate finite_time_norm(const DirichletPolynomial& D, double T, double alpha,
                              std::size_t panels, unsigned threads = 1);

std::vector<NormEstimate> finite_time_means(const DirichletPolynomial& D, double T,
                                            std::span<const double> alphas, std::size_t panels,
                                            unsigned threads = 1);

// Several alphas from one pass of |D| evaluations.
std::vector<NormEstimate> finite_time_norms(const DirichletPolynomial& D, double T,
                                            std::span<const double> alphas, std::size_t panels,
                                            unsigned threads = 1);

}  // namespace dlab
