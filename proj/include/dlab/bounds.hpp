#pragma once

#include <map>
#include <string>

#include "dlab/dirichlet.hpp"
#include "dlab/moments.hpp"
#include "dlab/montecarlo.hpp"

namespace dlab {

enum class BoundName { interpolation, helson, lcm_sum, moment_shape };

const char* to_string(BoundName name) noexcept;

struct BoundReport {
    BoundName name;
    double value;
    std::map<std::string, double> parameters;
};

// Lower bound for ||F||_r from the second and fourth moments:
// [m2^{(4-r)/2} / m4^{1-r/2}]^{1/r}, valid for 0 < r < 2.
double interpolation_lower_bound(double m2, double m4, double r);

// Exact-moment bound for the all-ones polynomial of length N; the shape
// N^{1/2} / (ln N)^{1/r - 1/2} is recorded in parameters["shape"].
BoundReport moment_bound_report(u64 N, double r, u64 energy_cap = kDefaultEnergyCap);

// (sum_{n<=N} 1/d(n))^{1/2}; stated for the all-ones polynomial only.
double helson_bound(u64 N);

// (sum |a_n|^2)^{3/2} / (N^2 sum_{n,v} |a_n|^2 |a_v|^2 / lcm(n, v))^{1/2}, N = max frequency.
double lcm_sum_bound(const DirichletPolynomial& D, unsigned threads = 1);

// mc.mean / ||c||_2 for a system of prime frequencies.
double khintchine_ratio(const CoprimeSystem& system, const McEstimate& mc);

}  // namespace dlab
