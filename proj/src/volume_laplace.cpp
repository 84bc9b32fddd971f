#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubeball/laplace.hpp"
#include "cubeball/rng.hpp"
#include "cubeball/specfun.hpp"
#include "cubeball/volume.hpp"
#include "volume_internal.hpp"

namespace cubeball {

using detail::kPi;
using detail::kSqrtPi;

namespace {

// Observed absolute accuracy of the 64-node contours on these kernels; used
// to build err_est, checked by the cross-method tests.
constexpr double kInvertErr = 3e-12;

// L^-1 at time t of prod_i erfcx(scale_i sqrt(s)) / s^(n/2+1). Each factor
// is bounded on the right half sqrt-plane, so the transform decays like
// |s|^(-n/2-1) on any inversion contour and Talbot applies.
double invert_erfcx_product(int n, const std::vector<double>& scales, double t,
                            const ContourParams& p) {
    auto fhat = [n, &scales](std::complex<double> s) {
        const std::complex<double> rs = std::sqrt(s);
        std::complex<double> num(1.0, 0.0);
        for (double b : scales) num *= erfcx_complex(b * rs);
        return num / std::pow(s, 0.5 * n + 1.0);
    };
    return invert_laplace(fhat, t, p);
}

double binom(int n, int j) {
    double c = 1.0;
    for (int i = 1; i <= j; ++i) c = c * (n - j + i) / i;
    return c;
}

// One additive term of a factor erf(beta sqrt s) - erf(alpha sqrt s), after
// the reduction erf(b sqrt s) = sign(b) (1 - e^{-b^2 s} erfcx(|b| sqrt s)):
// coef * e^{-shift s} * erfcx(scale sqrt s), with scale == 0 meaning no
// erfcx factor.
struct KTerm {
    double coef;
    double shift;
    double scale;
};

void append_erf_terms(std::vector<KTerm>& out, double b, double sign) {
    if (b == 0.0) return;
    const double sb = b > 0.0 ? sign : -sign;
    const double ab = std::abs(b);
    out.push_back({sb, 0.0, 0.0});
    out.push_back({-sb, ab * ab, ab});
}

std::vector<KTerm> factor_terms(double alpha, double beta) {
    std::vector<KTerm> raw;
    append_erf_terms(raw, beta, 1.0);
    append_erf_terms(raw, alpha, -1.0);
    // merge the plain constants (they cancel when alpha, beta share a sign)
    std::vector<KTerm> out;
    double c = 0.0;
    for (const KTerm& t : raw) {
        if (t.scale == 0.0 && t.shift == 0.0)
            c += t.coef;
        else
            out.push_back(t);
    }
    if (c != 0.0) out.push_back({c, 0.0, 0.0});
    return out;
}

struct LeafAccum {
    double value = 0.0;
    double err = 0.0;
    long inversions = 0;
};

void dfs_product(const std::vector<std::vector<KTerm>>& factors,
                 std::size_t level, double coef, double shift,
                 std::vector<double>& scales, int n, const ContourParams& p,
                 LeafAccum& acc) {
    if (coef == 0.0) return;
    if (shift >= 1.0 - 1e-12) return;  // e^{-shift s}: vanishes for t <= shift
    if (level == factors.size()) {
        const double v =
            invert_erfcx_product(n, scales, 1.0 - shift, p);
        acc.value += coef * v;
        acc.err += std::abs(coef) * kInvertErr * std::max(1.0, std::abs(v));
        ++acc.inversions;
        return;
    }
    for (const KTerm& t : factors[level]) {
        if (t.scale > 0.0) {
            scales.push_back(t.scale);
            dfs_product(factors, level + 1, coef * t.coef, shift + t.shift,
                        scales, n, p, acc);
            scales.pop_back();
        } else {
            dfs_product(factors, level + 1, coef * t.coef, shift + t.shift,
                        scales, n, p, acc);
        }
    }
}

}  // namespace

CdfEstimate cdf_laplace(int n, double s, const ContourParams& p) {
    detail::require_dim(n);
    if (!(s > 0.0 && s < static_cast<double>(n)))
        throw std::domain_error(
            "cdf_laplace: requires 0 < s < n (exact boundaries are handled "
            "by the dispatcher)");
    // (erf sqrt(s))^n = sum_j (-1)^j C(n,j) e^{-js} erfcx(sqrt s)^j exactly;
    // each shifted kernel decays on the contour, unlike the raw power, and
    // the shift theorem turns e^{-js} into an evaluation at t = s - j.
    const double prefac = std::pow(0.5 * kSqrtPi, n);
    const int jmax = std::min(n, static_cast<int>(std::floor(s)));
    double sum = 0.0;
    double err = 0.0;
    for (int j = 0; j <= jmax; ++j) {
        const double tau = s - j;
        if (j > 0 && tau <= 1e-12) {
            // dropped term is O(tau^{(n+j)/2}) <= 1e-12
            err += 1e-12;
            continue;
        }
        std::vector<double> scales(static_cast<std::size_t>(j), 1.0);
        const double v = invert_erfcx_product(n, scales, tau, p);
        const double c = binom(n, j);
        sum += (j % 2 != 0 ? -c : c) * v;
        err += c * kInvertErr * std::max(1.0, std::abs(v));
    }
    return detail::make_estimate(
        n, s, prefac * sum, prefac * err, CdfMethod::laplace,
        {{"nodes", static_cast<double>(p.nodes)},
         {"bromwich", p.kind == ContourKind::bromwich ? 1.0 : 0.0},
         {"terms", static_cast<double>(jmax + 1)}});
}

double box_ball_fraction(const BoxSpec& box, const ContourParams& p,
                         double* err_est) {
    box.validate();
    const int n = box.dim();
    std::vector<std::vector<KTerm>> factors;
    factors.reserve(static_cast<std::size_t>(n));
    double leaf_bound = 1.0;
    double denom = 1.0;
    for (int i = 0; i < n; ++i) {
        factors.push_back(factor_terms(box.lo[i], box.hi[i]));
        leaf_bound *= static_cast<double>(std::max<std::size_t>(
            factors.back().size(), 1));
        denom *= 2.0 * (box.hi[i] - box.lo[i]);
        if (leaf_bound > 300000.0)
            throw std::invalid_argument(
                "box_ball_fraction: product expansion too large (dim " +
                std::to_string(n) + "); use box_ball_volume_mc");
    }
    LeafAccum acc;
    std::vector<double> scales;
    dfs_product(factors, 0, 1.0, 0.0, scales, n, p, acc);
    const double prefac = std::pow(kSqrtPi, n);  // pi^(n/2)
    const double fraction = prefac * acc.value / denom;
    const double err = prefac * acc.err / std::abs(denom);
    const double eps = 1e-8 + 100.0 * err;
    if (fraction < -eps || fraction > 1.0 + eps)
        throw std::range_error(
            "box_ball_fraction: result " + std::to_string(fraction) +
            " escapes [0,1]; contour misconfigured (nodes=" +
            std::to_string(p.nodes) + ")");
    if (err_est != nullptr) *err_est = err;
    return std::min(std::max(fraction, 0.0), 1.0);
}

double box_ball_volume(const BoxSpec& box, const ContourParams& p,
                       double* err_est) {
    box.validate();
    double measure = 1.0;
    for (int i = 0; i < box.dim(); ++i) measure *= box.hi[i] - box.lo[i];
    double ferr = 0.0;
    const double frac = box_ball_fraction(box, p, &ferr);
    if (err_est != nullptr) *err_est = ferr * measure;
    return frac * measure;
}

double box_ball_volume_mc(const BoxSpec& box, long samples, RngState rng,
                          double* err_est) {
    box.validate();
    if (samples <= 0)
        throw std::invalid_argument("box_ball_volume_mc: samples must be > 0");
    const int n = box.dim();
    double measure = 1.0;
    for (int i = 0; i < n; ++i) measure *= box.hi[i] - box.lo[i];
    long hits = 0;
    for (long k = 0; k < samples; ++k) {
        double q = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x =
                box.lo[i] + (box.hi[i] - box.lo[i]) * rng_uniform(rng);
            q += x * x;
        }
        if (q <= 1.0) ++hits;
    }
    const double phat = static_cast<double>(hits) / samples;
    if (err_est != nullptr)
        *err_est = 3.0 * std::sqrt(phat * (1.0 - phat) / samples) * measure;
    return phat * measure;
}

}  // namespace cubeball
