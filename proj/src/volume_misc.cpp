#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubeball/quadrature.hpp"
#include "cubeball/specfun.hpp"
#include "cubeball/volume.hpp"
#include "volume_internal.hpp"

namespace cubeball {

namespace {

double cdf_n1(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    return std::sqrt(s);
}

double recursive_impl(int n, double s, double tol, long* evals) {
    if (n == 1) return cdf_n1(s);
    if (s <= 0.0) return 0.0;
    if (s >= static_cast<double>(n)) return 1.0;
    // F_n(s) = int_0^1 F_{n-1}(s - x^2) dx; the integrand has kinks where
    // s - x^2 crosses an integer, i.e. x = sqrt(s - m).
    QuadOptions opts;
    opts.tol = 0.5 * tol;
    for (int m = 0; m <= n - 1; ++m) {
        const double d = s - m;
        if (d > 0.0 && d < 1.0) opts.breakpoints.push_back(std::sqrt(d));
    }
    std::sort(opts.breakpoints.begin(), opts.breakpoints.end());
    const double child_tol = 0.25 * tol;
    QuadResult r = integrate_adaptive(
        [n, s, child_tol, evals](double x) {
            return recursive_impl(n - 1, s - x * x, child_tol, evals);
        },
        0.0, 1.0, opts);
    if (evals != nullptr) *evals += r.evaluations;
    return r.value;
}

}  // namespace

CdfEstimate cdf_recursive(int n, double s, double tol) {
    detail::require_dim(n);
    if (n > 6)
        throw std::invalid_argument(
            "cdf_recursive: cost grows geometrically, n <= 6 only");
    if (!(tol > 0.0)) tol = 1e-7;
    long evals = 0;
    const double v = recursive_impl(n, s, tol, &evals);
    return detail::make_estimate(
        n, s, v, tol, CdfMethod::recursive,
        {{"tol", tol}, {"evaluations", static_cast<double>(evals)}});
}

CdfEstimate cdf_mc(int n, double s, long samples, RngState rng) {
    detail::require_dim(n);
    if (samples <= 0)
        throw std::invalid_argument("cdf_mc: samples must be > 0");
    long hits = 0;
    for (long k = 0; k < samples; ++k) {
        double q = 0.0;
        for (int i = 0; i < n; ++i) {
            const double u = rng_uniform(rng);
            q += u * u;
        }
        if (q <= s) ++hits;
    }
    const double phat = static_cast<double>(hits) / samples;
    const double err = 3.0 * std::sqrt(phat * (1.0 - phat) / samples);
    return detail::make_estimate(
        n, s, phat, err, CdfMethod::mc,
        {{"samples", static_cast<double>(samples)},
         {"seed", static_cast<double>(rng.seed)},
         {"stream", static_cast<double>(rng.stream)}});
}

CdfEstimate clt_approx(int n, double s) {
    detail::require_dim(n);
    // S_n has mean n/3 and variance 4n/45 (from E U^2 = 1/3, E U^4 = 1/5).
    const double sd = 2.0 * std::sqrt(n / 45.0);
    const double z = (s - n / 3.0) / sd;
    const double v = 0.5 * (1.0 + erf_real(z / 1.4142135623730951));
    // Berry-Esseen with E|U^2 - 1/3|^3 = 0.036482:
    // 0.4748 * rho / sigma^3 / sqrt(n)
    const double err = 0.654 / std::sqrt(static_cast<double>(n));
    return detail::make_estimate(n, s, v, err, CdfMethod::clt, {});
}

CdfEstimate cdf(int n, double s, const CdfOptions& opts) {
    detail::require_dim(n);
    CdfMethod m = opts.method;
    if (m == CdfMethod::automatic)
        m = (n <= 3) ? CdfMethod::closed : CdfMethod::laplace;

    const bool series_like = m == CdfMethod::fourier ||
                             m == CdfMethod::laplace ||
                             m == CdfMethod::laguerre;

    // Exact tails; series methods are also never asked for s outside (0,n).
    if (series_like || m == CdfMethod::closed || m == CdfMethod::recursive) {
        if (s <= 0.0)
            return detail::make_estimate(n, s, 0.0, 0.0, m,
                                         {{"boundary", 1.0}});
        if (s >= static_cast<double>(n))
            return detail::make_estimate(n, s, 1.0, 0.0, m,
                                         {{"boundary", 1.0}});
    }

    double se = s;
    bool nudged = false;
    if (series_like) {
        // Gibbs ringing at the kinks: evaluate just below an integer s.
        const double r = std::nearbyint(s);
        if (std::abs(s - r) < 1e-12 && r > 0.0 &&
            r < static_cast<double>(n)) {
            se = r - 1e-12;
            nudged = true;
        }
    }

    CdfEstimate e;
    switch (m) {
        case CdfMethod::closed:
            if (n == 1) {
                e = detail::make_estimate(1, s, cdf_n1(s), 1e-16,
                                          CdfMethod::closed, {});
            } else if (n == 2) {
                e = cdf_closed_n2(s);
            } else if (n == 3) {
                e = cdf_closed_n3(s);
            } else {
                throw std::invalid_argument(
                    "cdf: closed forms exist for n in {1,2,3}; supported "
                    "methods for this n: fourier, laplace, laguerre, "
                    "recursive (n<=6), mc, clt");
            }
            break;
        case CdfMethod::fourier: {
            SeriesParams p = opts.series;
            if (opts.tol > 0.0) p.tol = opts.tol;
            e = cdf_fourier(n, se, p);
            break;
        }
        case CdfMethod::laplace:
            e = cdf_laplace(n, se, opts.contour);
            break;
        case CdfMethod::laguerre: {
            SeriesParams p = opts.series;
            if (opts.tol > 0.0) p.tol = opts.tol;
            e = cdf_laguerre(n, se, p);
            break;
        }
        case CdfMethod::recursive:
            e = cdf_recursive(n, s,
                              opts.tol > 0.0 ? opts.tol : opts.recursive_tol);
            break;
        case CdfMethod::mc:
            e = cdf_mc(n, s, opts.samples, opts.rng);
            break;
        case CdfMethod::clt:
            e = clt_approx(n, s);
            break;
        case CdfMethod::automatic:
            throw std::logic_error("cdf: unresolved method");
    }
    if (nudged) {
        e.s = s;
        e.params["nudged"] = 1.0;
    }
    return e;
}

}  // namespace cubeball
