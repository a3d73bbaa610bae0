// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "dlab/bounds.hpp"
#include "dlab/moments.hpp"
#include "dlab/montecarlo.hpp"

using namespace dlab;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome energy_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    u64 bad = 0;
    for (u64 B = 1; B <= 100; ++B)
        if (multiplicative_energy(B).count != multiplicative_energy_bruteforce(B).count) ++bad;
    const bool spots = multiplicative_energy(2).count == 6 && multiplicative_energy(3).count == 15 &&
                       multiplicative_energy(4).count == 32;
    const double t = seconds_since(t0);
    return {bad == 0 && spots && t < 10.0, fmt("B<=100 mismatches=%llu, E(2,3,4)=6,15,32 %s, %.2fs",
                                               (unsigned long long)bad, spots ? "ok" : "WRONG", t)};
}

Outcome acz_fit() {
    std::vector<double> res;
    for (u64 B : {1'000u, 10'000u, 100'000u}) {
        const auto p = acz_prediction(B, ZetaConvention::analytic_derivative);
        res.push_back((double(multiplicative_energy(B).count) - p.main) / (double(B) * double(B)));
    }
    const bool converging = std::abs(res[2] - res[1]) < std::abs(res[1] - res[0]);
    const double c_positive = acz_constant(ZetaConvention::positive_sum);
    const double c_analytic = acz_constant(ZetaConvention::analytic_derivative);
    const bool positive = std::abs(res[2] - c_positive) <= 0.05;
    const bool analytic = std::abs(res[2] - c_analytic) <= 0.05;
    return {converging && (positive != analytic),
            fmt("residuals %.5f %.5f %.5f; C(+sum)=%.4f C(analytic)=%.4f; matching convention: %s", res[0], res[1],
                res[2], c_positive, c_analytic,
                positive == analytic ? (positive ? "both" : "neither") : (positive ? "+sum" : "analytic"))};
}

Outcome montgomery() {
    double worst = 0.0;
    for (u64 N = 1; N <= 50; ++N)
        for (double T : {1e3, 1e4}) worst = std::max(worst, std::abs(montgomery_theta(N, T, std::size_t(T / 2))));
    double closed_err = 0.0;
    for (double T : {1e3, 1e4}) {
        const double expect = std::sin(T * std::log(2.0)) / (2.0 * std::log(2.0));
        closed_err = std::max(closed_err, std::abs(montgomery_theta(2, T, std::size_t(T / 2)) - expect));
    }
    return {worst <= 1.0 + 1e-6 && closed_err <= 1e-9,
            fmt("max |theta| over N<=50 = %.4f; N=2 closed-form error %.2e", worst, closed_err)};
}

Outcome bohr_identity() {
    std::mt19937_64 rng(20240601);
    std::normal_distribution<double> g;
    const std::vector<double> alphas{1.0, 2.0, 4.0};
    int fails = 0, checks = 0;
    double worst_z = 0.0;
    for (int i = 0; i < 20; ++i) {
        std::vector<u64> pool(40);
        for (u64 j = 0; j < 40; ++j) pool[j] = j + 1;
        std::shuffle(pool.begin(), pool.end(), rng);
        const std::size_t k = 1 + rng() % 12;
        std::vector<u64> f(pool.begin(), pool.begin() + static_cast<long>(k));
        std::sort(f.begin(), f.end());
        std::vector<cplx> a;
        for (std::size_t j = 0; j < k; ++j) a.emplace_back(g(rng), g(rng));
        const DirichletPolynomial D(f, a);
        const auto ft = finite_time_norms(D, 1e5, alphas, 50'000);
        const auto mc = estimate_torus_norms(bohr_lift(D), alphas, 1'000'000, 1000 + i);
        for (std::size_t j = 0; j < alphas.size(); ++j) {
            const double err = std::hypot(mc[j].std_error, ft[j].error) + 1e-12 * ft[j].value;  // rounding floor
            const double z = err > 0 ? std::abs(ft[j].value - mc[j].mean) / err : 0.0;
            worst_z = std::max(worst_z, z);
            ++checks;
            if (std::abs(ft[j].value - mc[j].mean) > 3.0 * err) ++fails;
        }
    }
    return {fails == 0, fmt("%d/%d comparisons outside 3 combined errors; worst z = %.2f", fails, checks, worst_z)};
}

std::vector<RatioPoint> prime_curve(unsigned threads) {
    std::vector<CoprimeSystem> fam;
    for (std::size_t k : {4u, 16u, 64u, 256u, 1024u}) fam.push_back(first_primes_system(k));
    return clt_ratio_curve(fam, 1'000'000, 0, threads);
}

Outcome clt_ratio(const std::vector<RatioPoint>& curve) {
    const double limit = steinhaus_limit().modulus_mean;
    std::string pts;
    std::vector<double> dev;
    for (const auto& p : curve) {
        pts += fmt("k=%zu:%.5f ", p.k, p.ratio);
        dev.push_back(std::abs(p.ratio - limit));
    }
    // least-squares slope of the deviation against ln k
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const double x = std::log(double(curve[i].k));
        sx += x, sy += dev[i], sxx += x * x, sxy += x * dev[i];
    }
    const double n = double(curve.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const auto& last = curve.back();
    const bool close = std::abs(last.ratio - limit) <= 0.02;
    const bool trend = slope < 0.0 && dev.back() < dev.front();
    return {close && trend,
            fmt("%s| limit sqrt(pi)/2=%.6f; alternative (pi/2)^(1/2)=%.6f exceeds the L2 ceiling 1 (discrepancy noted)",
                pts.c_str(), limit, last.unit_covariance_constant)};
}

Outcome two_term() {
    const auto e = estimate_torus_norm(bohr_lift(DirichletPolynomial::ones(2)), 1.0, 1'000'000, 6);
    return {std::abs(e.mean - 4.0 / pi) <= 3.0 * e.std_error,
            fmt("%.6f +- %.6f vs 4/pi = %.6f", e.mean, e.std_error, 4.0 / pi)};
}

Outcome dominance() {
    bool ok = true;
    std::string d;
    for (u64 N : {10u, 100u, 1000u}) {
        const auto D = DirichletPolynomial::ones(N);
        const auto mc = estimate_torus_norm(bohr_lift(D), 1.0, N == 1000 ? 200'000 : 1'000'000, 7);
        const double top = mc.mean + 3.0 * mc.std_error;
        const double h = helson_bound(N), p = moment_bound_report(N, 1.0).value, l = lcm_sum_bound(D);
        ok = ok && h <= top && p <= top && l <= top;
        d += fmt("N=%llu: mc=%.3f helson=%.3f interp=%.3f lcm=%.3f; ", (unsigned long long)N, mc.mean, h, p, l);
    }
    const double h2 = helson_bound(2), i2 = interpolation_lower_bound(2.0, 6.0, 1.0);
    const bool hand = std::abs(h2 - std::sqrt(1.5)) <= 1e-15 && std::abs(i2 - std::pow(2.0, 1.5) / std::sqrt(6.0)) <= 1e-15 &&
                      h2 <= 4.0 / pi && i2 <= 4.0 / pi;
    d += fmt("N=2 hand values %s", hand ? "reproduced" : "WRONG");
    return {ok && hand, d};
}

Outcome interpolation_property() {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int fails = 0;
    double worst = -1.0;
    for (int i = 0; i < 1000; ++i) {
        const int pieces = 1 + int(rng() % 25);
        std::vector<double> w(pieces), h(pieces);
        double total = 0;
        for (int j = 0; j < pieces; ++j) {
            w[j] = u(rng) + 1e-3;
            total += w[j];
            h[j] = std::exp(4.0 * (u(rng) - 0.5)) * (u(rng) < 0.1 ? 0.0 : 1.0);
        }
        double i2 = 0, i4 = 0;
        for (int j = 0; j < pieces; ++j) {
            w[j] /= total;
            i2 += w[j] * h[j] * h[j];
            i4 += w[j] * std::pow(h[j], 4);
        }
        if (i2 == 0.0) continue;
        for (double r : {0.25, 0.5, 1.0, 1.5, 1.9}) {
            double ir = 0;
            for (int j = 0; j < pieces; ++j) ir += w[j] * std::pow(h[j], r);
            const double rhs = std::pow(i2, (4.0 - r) / 2.0) / std::pow(i4, 1.0 - r / 2.0);
            worst = std::max(worst, (rhs - ir) / ir);
            if (ir < rhs * (1.0 - 1e-12)) ++fails;
        }
    }
    return {fails == 0, fmt("1000 step functions x 5 exponents, %d violations; max relative excess %.2e", fails, worst)};
}

Outcome lacunary() {
    std::vector<u64> ex(4096);
    for (u64 k = 0; k < 4096; ++k) ex[k] = k + 1;
    const auto r = lacunary_l1_ratio(2, ex, 1, LacunaryMethod::automatic, 100'000, 0);
    return {std::abs(r.ratio - lacunary_limit()) <= 0.02,
            fmt("ratio %.5f +- %.5f vs 1/sqrt(pi) = %.5f; claim (pi/2)^(1/2) = %.4f flagged", r.ratio,
                r.std_error, lacunary_limit(), std::sqrt(pi / 2.0))};
}

Outcome determinism(const std::vector<RatioPoint>& one_thread) {
    const auto eight = prime_curve(8);
    bool same = eight.size() == one_thread.size();
    for (std::size_t i = 0; same && i < eight.size(); ++i) same = eight[i].ratio == one_thread[i].ratio;
    return {same, fmt("k=1024 ratio 1 thread %.17g, 8 threads %.17g", one_thread.back().ratio, eight.back().ratio)};
}

}  // namespace

int main() {
    int failed = 0;
    auto report = [&](int id, const char* name, const std::function<Outcome()>& f) {
        const auto t0 = std::chrono::steady_clock::now();
        const Outcome o = f();
        if (!o.pass) ++failed;
        std::printf("%s %2d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    };
    std::vector<RatioPoint> curve;
    report(1, "energy oracle equivalence", energy_oracle);
    report(2, "ACZ two-term fit", acz_fit);
    report(3, "Montgomery theta contract", montgomery);
    report(4, "Bohr identity", bohr_identity);
    report(5, "coprime Steinhaus CLT ratio", [&] {
        curve = prime_curve(1);
        return clt_ratio(curve);
    });
    report(6, "two-term closed form", two_term);
    report(7, "bound dominance", dominance);
    report(8, "interpolation inequality", interpolation_property);
    report(9, "lacunary harness", lacunary);
    report(10, "thread determinism", [&] { return determinism(curve); });
    std::printf("%d of 10 criteria passed\n", 10 - failed);
    return failed == 0 ? 0 : 1;
}
