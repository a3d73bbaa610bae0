#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "dlab/errors.hpp"
#include "dlab/numtheory.hpp"

using namespace dlab;

namespace {

bool trial_division_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

u64 brute_divisors(u64 n) {
    u64 c = 0;
    for (u64 d = 1; d <= n; ++d) c += (n % d == 0);
    return c;
}

}  // namespace

TEST_CASE("sieve_primes") {
    CHECK(sieve_primes(0).empty());
    CHECK(sieve_primes(1).empty());
    CHECK(sieve_primes(10) == std::vector<u64>{2, 3, 5, 7});
    const auto p100 = sieve_primes(100);
    CHECK(p100.size() == 25);
    std::vector<u64> oracle;
    for (u64 n = 0; n <= 2000; ++n)
        if (trial_division_prime(n)) oracle.push_back(n);
    CHECK(sieve_primes(2000) == oracle);
    CHECK_THROWS_AS(sieve_primes(kMaxSieveLimit + 1), ResourceError);
}

TEST_CASE("factorize") {
    CHECK(factorize(1).factors.empty());
    CHECK(factorize(12).factors == std::vector<PrimePower>{{2, 2}, {3, 1}});
    const auto f = factorize(9699690);
    REQUIRE(f.factors.size() == 8);
    const u64 first8[] = {2, 3, 5, 7, 11, 13, 17, 19};
    for (std::size_t i = 0; i < 8; ++i) CHECK(f.factors[i] == PrimePower{first8[i], 1});
    CHECK(f.product() == 9699690);
    CHECK(f.valuation(7) == 1);
    CHECK(f.valuation(23) == 0);
    CHECK_THROWS_AS(factorize(0), DomainError);

    SUBCASE("reconstruction on random samples up to 1e6") {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 5000; ++i) {
            const u64 n = 1 + rng() % 1'000'000;
            const auto g = factorize(n);
            CHECK(g.product() == n);
            for (std::size_t k = 1; k < g.factors.size(); ++k) CHECK(g.factors[k - 1].prime < g.factors[k].prime);
            for (const auto& pp : g.factors) CHECK(trial_division_prime(pp.prime));
        }
    }
    SUBCASE("trial division above the shared table") {
        const u64 big = u64{1000003} * 999983;  // two primes near 1e6
        const auto g = factorize(big);
        CHECK(g.factors == std::vector<PrimePower>{{999983, 1}, {1000003, 1}});
        const u64 p = 2147483647;  // Mersenne prime
        CHECK(factorize(p).factors == std::vector<PrimePower>{{p, 1}});
        CHECK(is_prime(p));
    }
}

TEST_CASE("divisor_count") {
    CHECK(divisor_count(1) == 1);
    CHECK(divisor_count(12) == 6);
    for (u64 p : {2u, 3u, 97u, 7919u}) CHECK(divisor_count(p) == 2);
    const auto table = divisor_count_table(10'000);
    for (u64 n = 1; n <= 10'000; ++n) {
        CHECK(divisor_count(n) == brute_divisors(n));
        CHECK(table[n] == divisor_count(n));
    }
}

TEST_CASE("helson_sum") {
    CHECK(helson_sum(1) == 1.0);
    CHECK(helson_sum(10) == doctest::Approx(53.0 / 12.0).epsilon(1e-15));

    // Direct summation oracle with trial-division divisor counts.
    double oracle = 0.0;
    for (u64 n = 1; n <= 100'000; ++n) {
        u64 d = 0;
        for (u64 k = 1; k * k <= n; ++k)
            if (n % k == 0) d += (k * k == n) ? 1 : 2;
        oracle += 1.0 / static_cast<double>(d);
    }
    CHECK(helson_sum(100'000) == doctest::Approx(oracle).epsilon(1e-12));
    // Frozen from an exact rational summation.
    CHECK(helson_sum(100'000) == doctest::Approx(16617.431842839247).epsilon(1e-14));

    SUBCASE("x / sqrt(log x) growth is slowly varying") {
        double prev = 0.0;
        for (u64 N : {1'000u, 10'000u, 100'000u}) {
            const double v = helson_sum(N) * std::sqrt(std::log(double(N))) / double(N);
            if (prev > 0.0) {
                CHECK(v < prev);  // monotone trend
                CHECK(std::abs(v / prev - 1.0) < 0.15);
            }
            prev = v;
        }
    }
}

TEST_CASE("lcm_pair") {
    CHECK(lcm_pair(1, 17) == 17);
    CHECK(lcm_pair(4, 6) == 12);
    const u64 p30 = u64{1} << 30;
    CHECK(lcm_pair(p30, 3 * p30) == 3 * p30);
    CHECK(lcm_pair(p30, 3 * p30) * std::gcd(p30, 3 * p30) == p30 * (3 * p30));
    CHECK_THROWS_AS(lcm_pair(u64{1} << 40, 205891132094649ull /* 3^30 */), ArithmeticError);
    CHECK_THROWS_AS(lcm_pair(0, 3), DomainError);
}

TEST_CASE("totient_table") {
    const auto phi = totient_table(500);
    for (u64 n = 1; n <= 500; ++n) {
        u64 c = 0;
        for (u64 k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
        CHECK(phi[n] == c);
    }
}

TEST_CASE("coprime_set") {
    auto freqs = [](const CoprimeSystem& s) { return std::vector<u64>(s.frequencies().begin(), s.frequencies().end()); };
    CHECK(freqs(coprime_set(CoprimeStrategy::primes, 10)) == std::vector<u64>{2, 3, 5, 7});
    CHECK(freqs(coprime_set(CoprimeStrategy::prime_powers, 10)) == std::vector<u64>{8, 9, 5, 7});
    CHECK(freqs(coprime_set(CoprimeStrategy::greedy, 10)) == std::vector<u64>{2, 3, 5, 7});
    CHECK_THROWS_AS(coprime_set(CoprimeStrategy::primes, 1), DomainError);

    const auto s = coprime_set(CoprimeStrategy::prime_powers, 1000);
    CHECK(s.energy() == doctest::Approx(double(s.size())));
    for (auto strategy : {CoprimeStrategy::primes, CoprimeStrategy::prime_powers, CoprimeStrategy::greedy}) {
        const auto sys = coprime_set(strategy, 500);
        const auto f = sys.frequencies();
        for (std::size_t i = 0; i < f.size(); ++i) {
            CHECK(f[i] >= 2);
            CHECK(f[i] <= 500);
            for (std::size_t j = 0; j < i; ++j) CHECK(std::gcd(f[i], f[j]) == 1);
        }
    }
}

TEST_CASE("CoprimeSystem invariants") {
    CHECK_THROWS_AS(CoprimeSystem(10, {2, 4}, {1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(CoprimeSystem(10, {1, 3}, {1.0, 1.0}), DomainError);   // frequency 1 excluded
    CHECK_THROWS_AS(CoprimeSystem(10, {3, 11}, {1.0, 1.0}), DomainError);  // above index
    CHECK_THROWS_AS(CoprimeSystem(10, {}, {}), DomainError);
    CHECK_THROWS_AS(CoprimeSystem(10, {3}, {0.0}), DomainError);
    CHECK_THROWS_AS(CoprimeSystem(10, {3, 5}, {1.0}), DomainError);
    const CoprimeSystem s(35, {4, 9, 35}, {0.5, -2.0, 1.5});
    CHECK(s.energy() == doctest::Approx(0.25 + 4.0 + 2.25).epsilon(1e-12));
    CHECK(s.max_abs_coefficient() == 2.0);

    const auto k = first_primes_system(1024);
    CHECK(k.size() == 1024);
    CHECK(k.index_n() == 8161);
    CHECK(first_primes_system(1).frequencies()[0] == 2);
}
