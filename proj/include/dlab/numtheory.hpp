#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dlab {

using u64 = std::uint64_t;

inline constexpr u64 kMaxSieveLimit = 400'000'000;   // byte sieve budget
inline constexpr u64 kDefaultSpfLimit = 10'000'000;  // shared factor table

// Primes <= limit, ascending. Throws ResourceError above kMaxSieveLimit.
std::vector<u64> sieve_primes(u64 limit);

// Flat smallest-prime-factor table; immutable after construction.
class SpfTable {
public:
    explicit SpfTable(u64 limit);

    u64 limit() const noexcept { return static_cast<u64>(spf_.size()) - 1; }
    // spf(1) == 1; n must be in [1, limit()].
    std::uint32_t spf(u64 n) const { return spf_[n]; }

    // Lazily built table up to kDefaultSpfLimit, shared across threads.
    static const SpfTable& shared();

private:
    std::vector<std::uint32_t> spf_;
};

struct PrimePower {
    u64 prime;
    std::uint32_t exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    u64 n = 1;
    std::vector<PrimePower> factors;  // primes strictly increasing

    // p-adic valuation v_p(n).
    std::uint32_t valuation(u64 p) const noexcept;
    // Recomputes the product of prime^exponent; throws ArithmeticError on overflow.
    u64 product() const;
};

// n >= 1; table lookup below SpfTable::shared().limit(), trial division above.
Factorization factorize(u64 n);

u64 divisor_count(u64 n);

// d(1..n) by sieve; index 0 unused.
std::vector<std::uint32_t> divisor_count_table(u64 n);

// Euler phi(0..n) by sieve.
std::vector<std::uint32_t> totient_table(u64 n);

// Sum_{n<=N} 1/d(n).
double helson_sum(u64 N);

u64 lcm_pair(u64 a, u64 b);

// a*b with overflow reported as ArithmeticError.
u64 checked_mul(u64 a, u64 b);

bool is_prime(u64 n);

enum class CoprimeStrategy { primes, prime_powers, greedy };

// A pairwise-coprime frequency set J_n with real coefficients c_n^j and
// cached energy B_n = sum c^2. Frequency 1 is not admissible.
class CoprimeSystem {
public:
    CoprimeSystem(u64 index_n, std::vector<u64> frequencies, std::vector<double> coefficients);

    u64 index_n() const noexcept { return index_n_; }
    std::span<const u64> frequencies() const noexcept { return frequencies_; }
    std::span<const double> coefficients() const noexcept { return coefficients_; }
    double energy() const noexcept { return energy_; }
    std::size_t size() const noexcept { return frequencies_.size(); }
    double max_abs_coefficient() const noexcept;

    // Same frequencies, coefficients replaced by weight(frequency).
    template <class Weight>
    CoprimeSystem reweighted(Weight&& weight) const {
        std::vector<double> c;
        c.reserve(frequencies_.size());
        for (u64 f : frequencies_) c.push_back(static_cast<double>(weight(f)));
        return CoprimeSystem(index_n_, frequencies_, std::move(c));
    }

private:
    u64 index_n_;
    std::vector<u64> frequencies_;
    std::vector<double> coefficients_;
    double energy_;
};

// Unit-coefficient coprime system drawn from [2, n].
CoprimeSystem coprime_set(CoprimeStrategy strategy, u64 n);

// The first k primes with unit coefficients; index_n = p_k.
CoprimeSystem first_primes_system(std::size_t k);

}  // namespace dlab
