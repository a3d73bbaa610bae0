#include "dlab/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "dlab/errors.hpp"

namespace dlab {

std::vector<u64> sieve_primes(u64 limit) {
    if (limit > kMaxSieveLimit) {
        throw ResourceError("sieve limit " + std::to_string(limit) + " exceeds budget " +
                            std::to_string(kMaxSieveLimit));
    }
    std::vector<u64> primes;
    if (limit < 2) return primes;
    std::vector<char> composite(limit + 1, 0);
    for (u64 p = 2; p * p <= limit; ++p) {
        if (composite[p]) continue;
        for (u64 q = p * p; q <= limit; q += p) composite[q] = 1;
    }
    for (u64 p = 2; p <= limit; ++p)
        if (!composite[p]) primes.push_back(p);
    return primes;
}

SpfTable::SpfTable(u64 limit) {
    if (limit > kMaxSieveLimit) throw ResourceError("spf table limit exceeds budget");
    limit = std::max<u64>(limit, 1);
    spf_.assign(limit + 1, 0);
    spf_[1] = 1;
    for (u64 p = 2; p <= limit; ++p) {
        if (spf_[p] != 0) continue;
        for (u64 q = p; q <= limit; q += p)
            if (spf_[q] == 0) spf_[q] = static_cast<std::uint32_t>(p);
    }
}

const SpfTable& SpfTable::shared() {
    static const SpfTable table(kDefaultSpfLimit);
    return table;
}

std::uint32_t Factorization::valuation(u64 p) const noexcept {
    for (const auto& f : factors)
        if (f.prime == p) return f.exponent;
    return 0;
}

u64 Factorization::product() const {
    u64 acc = 1;
    for (const auto& f : factors)
        for (std::uint32_t e = 0; e < f.exponent; ++e) acc = checked_mul(acc, f.prime);
    return acc;
}

Factorization factorize(u64 n) {
    if (n == 0) throw DomainError("factorize: n must be >= 1");
    Factorization out;
    out.n = n;
    const SpfTable& table = SpfTable::shared();
    u64 m = n;
    auto push = [&](u64 p) {
        if (!out.factors.empty() && out.factors.back().prime == p)
            ++out.factors.back().exponent;
        else
            out.factors.push_back({p, 1});
    };
    if (m > table.limit()) {
        for (u64 p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
            while (m % p == 0) {
                push(p);
                m /= p;
            }
            if (m <= table.limit()) break;
        }
        if (m > table.limit()) {
            push(m);  // remaining cofactor is prime
            return out;
        }
    }
    while (m > 1) {
        u64 p = table.spf(m);
        push(p);
        m /= p;
    }
    return out;
}

u64 divisor_count(u64 n) {
    u64 d = 1;
    for (const auto& f : factorize(n).factors) d *= f.exponent + 1;
    return d;
}

std::vector<std::uint32_t> divisor_count_table(u64 n) {
    if (n > kMaxSieveLimit) throw ResourceError("divisor table limit exceeds budget");
    std::vector<std::uint32_t> d(n + 1, 0);
    for (u64 k = 1; k <= n; ++k)
        for (u64 m = k; m <= n; m += k) ++d[m];
    return d;
}

std::vector<std::uint32_t> totient_table(u64 n) {
    if (n > kMaxSieveLimit) throw ResourceError("totient table limit exceeds budget");
    std::vector<std::uint32_t> phi(n + 1);
    std::iota(phi.begin(), phi.end(), 0u);
    for (u64 p = 2; p <= n; ++p) {
        if (phi[p] != p) continue;  // composite: already reduced
        for (u64 m = p; m <= n; m += p) phi[m] -= phi[m] / p;
    }
    return phi;
}

double helson_sum(u64 N) {
    if (N == 0) throw DomainError("helson_sum: N must be >= 1");
    const auto d = divisor_count_table(N);
    // Neumaier summation; terms are in (0, 1].
    double sum = 0.0, comp = 0.0;
    for (u64 n = 1; n <= N; ++n) {
        const double x = 1.0 / d[n];
        const double t = sum + x;
        comp += (std::abs(sum) >= x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

u64 checked_mul(u64 a, u64 b) {
    u64 out;
    if (__builtin_mul_overflow(a, b, &out))
        throw ArithmeticError("64-bit overflow in " + std::to_string(a) + " * " + std::to_string(b));
    return out;
}

u64 lcm_pair(u64 a, u64 b) {
    if (a == 0 || b == 0) throw DomainError("lcm_pair: arguments must be >= 1");
    return checked_mul(a / std::gcd(a, b), b);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    const SpfTable& table = SpfTable::shared();
    if (n <= table.limit()) return table.spf(n) == n;
    const auto f = factorize(n);
    return f.factors.size() == 1 && f.factors[0].exponent == 1;
}

CoprimeSystem::CoprimeSystem(u64 index_n, std::vector<u64> frequencies,
                             std::vector<double> coefficients)
    : index_n_(index_n), frequencies_(std::move(frequencies)), coefficients_(std::move(coefficients)) {
    if (frequencies_.empty()) throw DomainError("coprime system: empty frequency list");
    if (frequencies_.size() != coefficients_.size())
        throw DomainError("coprime system: frequency/coefficient length mismatch");
    for (std::size_t i = 0; i < frequencies_.size(); ++i) {
        const u64 f = frequencies_[i];
        if (f < 2 || f > index_n_)
            throw DomainError("coprime system: frequency " + std::to_string(f) + " outside [2, " +
                              std::to_string(index_n_) + "]");
    }
    // Pairwise coprime iff no prime divides two frequencies.
    std::unordered_map<u64, u64> owner;
    for (u64 f : frequencies_) {
        for (const auto& pp : factorize(f).factors) {
            auto [it, fresh] = owner.emplace(pp.prime, f);
            if (!fresh)
                throw DomainError("coprime system: gcd(" + std::to_string(it->second) + ", " +
                                  std::to_string(f) + ") != 1");
        }
    }
    double e = 0.0;
    for (double c : coefficients_) {
        if (!std::isfinite(c)) throw DomainError("coprime system: non-finite coefficient");
        e += c * c;
    }
    if (!(e > 0.0)) throw DomainError("coprime system: energy B_n must be positive");
    energy_ = e;
}

double CoprimeSystem::max_abs_coefficient() const noexcept {
    double m = 0.0;
    for (double c : coefficients_) m = std::max(m, std::abs(c));
    return m;
}

CoprimeSystem coprime_set(CoprimeStrategy strategy, u64 n) {
    if (n < 2) throw DomainError("coprime_set: n must be >= 2");
    std::vector<u64> freqs;
    switch (strategy) {
        case CoprimeStrategy::primes:
            freqs = sieve_primes(n);
            break;
        case CoprimeStrategy::prime_powers:
            for (u64 p : sieve_primes(n)) {
                u64 q = p;
                while (q <= n / p) q *= p;
                freqs.push_back(q);
            }
            break;
        case CoprimeStrategy::greedy: {
            // m is coprime to every accepted frequency iff none of its primes is taken.
            std::vector<char> taken(n + 1, 0);
            for (u64 m = 2; m <= n; ++m) {
                const auto f = factorize(m);
                const bool ok = std::none_of(f.factors.begin(), f.factors.end(),
                                             [&](const PrimePower& pp) { return taken[pp.prime]; });
                if (!ok) continue;
                for (const auto& pp : f.factors) taken[pp.prime] = 1;
                freqs.push_back(m);
            }
            break;
        }
    }
    std::vector<double> coeffs(freqs.size(), 1.0);
    return CoprimeSystem(n, std::move(freqs), std::move(coeffs));
}

CoprimeSystem first_primes_system(std::size_t k) {
    if (k == 0) throw DomainError("first_primes_system: k must be >= 1");
    // p_k < k (ln k + ln ln k) for k >= 6
    const double kd = static_cast<double>(k);
    u64 bound = k < 6 ? 13 : static_cast<u64>(kd * (std::log(kd) + std::log(std::log(kd)))) + 1;
    auto primes = sieve_primes(bound);
    primes.resize(k);
    const u64 index_n = primes.back();
    return CoprimeSystem(index_n, std::move(primes), std::vector<double>(k, 1.0));
}

}  // namespace dlab
