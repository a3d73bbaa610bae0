#include "dlab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dlab/errors.hpp"
#include "dlab/parallel.hpp"

namespace dlab {

double second_moment(const DirichletPolynomial& D) {
    double s = 0.0;
    for (const auto& a : D.coefficients()) s += std::norm(a);
    return s;
}

std::vector<std::pair<u64, cplx>> convolution_coefficients(const DirichletPolynomial& D) {
    const auto f = D.frequencies();
    const auto a = D.coefficients();
    std::vector<std::pair<u64, cplx>> products;
    products.reserve(f.size() * (f.size() + 1) / 2);
    for (std::size_t i = 0; i < f.size(); ++i) {
        products.emplace_back(checked_mul(f[i], f[i]), a[i] * a[i]);
        for (std::size_t j = i + 1; j < f.size(); ++j)
            products.emplace_back(checked_mul(f[i], f[j]), 2.0 * a[i] * a[j]);
    }
    std::stable_sort(products.begin(), products.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<std::pair<u64, cplx>> out;
    for (const auto& [m, v] : products) {
        if (!out.empty() && out.back().first == m)
            out.back().second += v;
        else
            out.emplace_back(m, v);
    }
    std::erase_if(out, [](const auto& e) { return e.second == cplx{0.0, 0.0}; });
    return out;
}

double fourth_moment(const DirichletPolynomial& D) {
    const auto b = convolution_coefficients(D);
    std::vector<double> sq;
    sq.reserve(b.size());
    for (const auto& e : b) sq.push_back(std::norm(e.second));
    return pairwise_sum(sq);
}

double fourth_moment_bruteforce(const DirichletPolynomial& D) {
    const auto f = D.frequencies();
    const auto a = D.coefficients();
    const std::size_t k = f.size();
    if (k > 64) throw ResourceError("fourth_moment_bruteforce: at most 64 terms");
    cplx s{0.0, 0.0};
    for (std::size_t i1 = 0; i1 < k; ++i1)
        for (std::size_t i2 = 0; i2 < k; ++i2)
            for (std::size_t i3 = 0; i3 < k; ++i3)
                for (std::size_t i4 = 0; i4 < k; ++i4)
                    if (f[i1] * f[i2] == f[i3] * f[i4])
                        s += a[i1] * a[i2] * std::conj(a[i3] * a[i4]);
    return s.real();
}

MomentReport moment_report(const DirichletPolynomial& D, MomentMethod method) {
    const double m4 = method == MomentMethod::brute_force ? fourth_moment_bruteforce(D) : fourth_moment(D);
    return {second_moment(D), m4, D.size(), method};
}

double montgomery_theta(u64 N, double T, std::size_t panels, unsigned threads) {
    if (N == 0) throw DomainError("montgomery_theta: N must be >= 1");
    if (N == 1) return 0.0;  // |D|^2 == 1
    const double mean = finite_time_mean(DirichletPolynomial::ones(N), T, 2.0, panels, threads).value;
    const double n = static_cast<double>(N);
    return (mean - n) * T / (n * n);
}

EnergyCount multiplicative_energy(u64 B, u64 cap) {
    if (B == 0) throw DomainError("multiplicative_energy: B must be >= 1");
    if (B > cap)
        throw ResourceError("multiplicative_energy: B = " + std::to_string(B) + " exceeds cap " +
                            std::to_string(cap));
    // Pairs (x1, x3) = (g a, g c) with gcd(a, c) = 1 admit floor(B / max(a, c))
    // completions (x2, x4) = (c k, a k). Group by g and by m = max(a, c).
    const auto phi = totient_table(B);
    std::vector<u64> prefix(B + 1, 0);
    for (u64 m = 1; m <= B; ++m) {
        const u64 pairs = m == 1 ? 1 : 2 * static_cast<u64>(phi[m]);
        prefix[m] = prefix[m - 1] + (B / m) * pairs;
    }
    unsigned __int128 total = 0;
    for (u64 g = 1; g <= B; ++g) total += prefix[B / g];
    if (total > static_cast<unsigned __int128>(INT64_MAX))
        throw ArithmeticError("multiplicative_energy: count exceeds 63 bits");
    return {B, static_cast<u64>(total), EnergyMethod::totient_grouping};
}

EnergyCount multiplicative_energy_tally(u64 B, unsigned threads) {
    if (B == 0) throw DomainError("multiplicative_energy_tally: B must be >= 1");
    if (B > kTallyEnergyCap)
        throw ResourceError("multiplicative_energy_tally: B = " + std::to_string(B) + " exceeds cap " +
                            std::to_string(kTallyEnergyCap));
    const u64 top = B * B;
    constexpr u64 kBlock = u64{1} << 20;
    const u64 blocks = (top + kBlock - 1) / kBlock;
    std::vector<u64> partial(blocks, 0);
    parallel_for(blocks, threads, [&](std::size_t bi) {
        const u64 lo = 1 + bi * kBlock;
        const u64 hi = std::min(top, lo + kBlock - 1);
        std::vector<std::uint32_t> r(hi - lo + 1, 0);
        for (u64 x = 1; x <= B; ++x) {
            // y in [ceil(lo/x), floor(hi/x)] intersected with [1, B]
            const u64 y0 = std::max<u64>(1, (lo + x - 1) / x);
            const u64 y1 = std::min(B, hi / x);
            for (u64 y = y0; y <= y1; ++y) ++r[x * y - lo];
        }
        u64 s = 0;
        for (auto v : r) s += static_cast<u64>(v) * v;
        partial[bi] = s;
    });
    u64 total = 0;
    for (u64 v : partial) total += v;
    return {B, total, EnergyMethod::representation_function};
}

EnergyCount multiplicative_energy_bruteforce(u64 B) {
    if (B == 0) throw DomainError("multiplicative_energy_bruteforce: B must be >= 1");
    if (B > kBruteforceEnergyCap)
        throw ResourceError("multiplicative_energy_bruteforce: refused for B > " +
                            std::to_string(kBruteforceEnergyCap));
    u64 count = 0;
    for (u64 x1 = 1; x1 <= B; ++x1)
        for (u64 x2 = 1; x2 <= B; ++x2) {
            const u64 p = x1 * x2;
            for (u64 x3 = 1; x3 <= B; ++x3)
                if (p % x3 == 0 && p / x3 <= B) ++count;
        }
    return {B, count, EnergyMethod::quadruple_bruteforce};
}

double log_over_square_sum() {
    constexpr int M = 1000;
    double head = 0.0;
    for (int n = M - 1; n >= 2; --n) head += std::log(static_cast<double>(n)) / (double(n) * n);
    const double m = M, lm = std::log(m);
    const double f = lm / (m * m);
    const double f1 = (1.0 - 2.0 * lm) / (m * m * m);
    const double f3 = (26.0 - 24.0 * lm) / (m * m * m * m * m);
    // sum_{n>=M} f(n) = int_M^inf f + f(M)/2 - f'(M)/12 + f'''(M)/720 - ...
    const double tail = (lm + 1.0) / m + 0.5 * f - f1 / 12.0 + f3 / 720.0;
    return head + tail;
}

double acz_constant(ZetaConvention convention) {
    using std::numbers::pi;
    const double s = log_over_square_sum();
    const double zeta_prime_2 = convention == ZetaConvention::positive_sum ? s : -s;
    return 2.0 / (pi * pi) * (12.0 * std::numbers::egamma - (36.0 / (pi * pi)) * zeta_prime_2 - 3.0) - 2.0;
}

AczPrediction acz_prediction(u64 B, ZetaConvention convention) {
    if (B < 2) throw DomainError("acz_prediction: B must be >= 2");
    using std::numbers::pi;
    const double b = static_cast<double>(B);
    const double C = acz_constant(convention);
    return {12.0 / (pi * pi) * b * b * std::log(b), C * b * b, C};
}

}  // namespace dlab
