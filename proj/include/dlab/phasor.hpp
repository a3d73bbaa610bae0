#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace dlab {

// exp(2 pi i turns) for turns of moderate size. Reduces to an octant,
// then evaluates Taylor polynomials through degree 17 (error < 1e-17 on
// |r| <= pi/4).
inline std::complex<double> unit_phasor(double turns) noexcept {
    const double x = 4.0 * turns;
    auto q = static_cast<long long>(x);  // truncation; fixed up to nearest below
    if (static_cast<double>(q) > x) --q;
    if (x - static_cast<double>(q) > 0.5) ++q;
    const double r = (x - static_cast<double>(q)) * (std::numbers::pi / 2.0);
    const double r2 = r * r;
    const double s = r * (1.0 + r2 * (-1.0 / 6 + r2 * (1.0 / 120 + r2 * (-1.0 / 5040 + r2 * (1.0 / 362880 +
                     r2 * (-1.0 / 39916800 + r2 * (1.0 / 6227020800 + r2 * (-1.0 / 1307674368000.0 +
                     r2 * (1.0 / 355687428096000.0)))))))));
    const double c = 1.0 + r2 * (-0.5 + r2 * (1.0 / 24 + r2 * (-1.0 / 720 + r2 * (1.0 / 40320 +
                     r2 * (-1.0 / 3628800 + r2 * (1.0 / 479001600 + r2 * (-1.0 / 87178291200.0 +
                     r2 * (1.0 / 20922789888000.0))))))));
    // Quadrant fix-up without branches: odd q swaps, bit 1 of q+1 / q flips signs.
    const bool odd = q & 1;
    const double a = odd ? s : c;
    const double b = odd ? c : s;
    const double re = ((q + 1) & 2) ? -a : a;
    const double im = (q & 2) ? -b : b;
    return {re, im};
}

}  // namespace dlab
