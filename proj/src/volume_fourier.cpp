#include <cmath>
#include <complex>
#include <stdexcept>

#include "cubeball/series.hpp"
#include "cubeball/specfun.hpp"
#include "cubeball/volume.hpp"
#include "volume_internal.hpp"

namespace cubeball {

using detail::kPi;

namespace {

std::complex<double> cpow_int(std::complex<double> z, int n) {
    std::complex<double> acc(1.0, 0.0);
    while (n > 0) {
        if (n & 1) acc *= z;
        z *= z;
        n >>= 1;
    }
    return acc;
}

}  // namespace

CdfEstimate cdf_fourier(int n, double s, const SeriesParams& p) {
    detail::require_dim(n);
    if (!(s > 0.0 && s < static_cast<double>(n)))
        throw std::domain_error(
            "cdf_fourier: requires 0 < s < n (exact boundaries are handled "
            "by the dispatcher)");
    const double tol = p.tol > 0.0 ? p.tol : 1e-5;

    // |phi_k| <= 1/(2 sqrt(k/n)) since |C - iS| <= 1, so
    // |term_k| <= (sqrt(n)/2)^n k^(-n/2 - 1); the tail is bounded by the
    // comparison integral (sqrt(n)/2)^n (2/n) K^(-n/2).
    const double tail_c =
        std::pow(0.5 * std::sqrt(static_cast<double>(n)), n) * (2.0 / n) / kPi;

    auto term = [n, s](long k) {
        const double x = 2.0 * std::sqrt(static_cast<double>(k) / n);
        const FresnelCS f = fresnel_normalized(x);
        const std::complex<double> phi(f.c / x, -f.s / x);
        const double ang = 2.0 * kPi * k * s / n;
        const std::complex<double> rot(std::cos(ang), std::sin(ang));
        return (cpow_int(phi, n) * rot).imag() / (kPi * k);
    };
    auto tail = [tail_c, n](long k) {
        return tail_c * std::pow(static_cast<double>(k), -0.5 * n);
    };

    QuadResult r = sum_series(term, tail, tol, 1, p.max_terms);
    const double v = 1.0 / 6.0 + s / n + r.value;
    return detail::make_estimate(
        n, s, v, r.err_est + 1e-12, CdfMethod::fourier,
        {{"terms", static_cast<double>(r.evaluations)}, {"tol", tol}});
}

}  // namespace cubeball
