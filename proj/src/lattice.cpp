#include "cubeball/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cubeball/quadrature.hpp"
#include "cubeball/volume.hpp"

namespace cubeball {

namespace {

constexpr double kPi = 3.14159265358979323846;
// support endpoint 2^(1/4): the disk of radius sqrt(t^2 - 1/t^2) covers the
// half-side-t/2 square once t^4 >= 2
const double kSupportEnd = std::pow(2.0, 0.25);
// F_2 branch switch inside the density: 4(1 - t^-4) = 1 at t = (4/3)^(1/4)
const double kBranchT = std::pow(4.0 / 3.0, 0.25);

}  // namespace

GaussianInt round_gaussian(std::complex<double> z) {
    // nearbyint under the default rounding mode rounds ties to even
    return {static_cast<std::int64_t>(std::nearbyint(z.real())),
            static_cast<std::int64_t>(std::nearbyint(z.imag()))};
}

ReductionResult reduce_lagrange_gauss(const Basis2C& in) {
    Eigen::Vector2cd b1 = in.b1;
    Eigen::Vector2cd b2 = in.b2;
    const std::complex<double> det0 = b1(0) * b2(1) - b1(1) * b2(0);
    const double scale = b1.norm() * b2.norm();
    if (!(std::abs(det0) > 1e-12 * scale))
        throw std::invalid_argument(
            "reduce_lagrange_gauss: basis numerically degenerate");

    GaussMat2 t;  // tracks [b1; b2] = t * [b1_in; b2_in] exactly over Z[i]
    int iter = 0;
    const GaussianInt zero{0, 0};
    while (true) {
        if (++iter > 1000000)
            throw std::runtime_error(
                "reduce_lagrange_gauss: iteration cap hit (degenerate "
                "floating-point input?)");
        // projection coefficient of b2 on b1; Eigen's dot conjugates the
        // first argument, which is exactly the coefficient we need
        const std::complex<double> mu_star = b1.dot(b2) / b1.squaredNorm();
        const GaussianInt mu = round_gaussian(mu_star);
        if (!(mu == zero)) {
            b2 -= mu.to_complex() * b1;
            t.c = t.c - mu * t.a;
            t.d = t.d - mu * t.b;
        }
        if (b2.squaredNorm() < b1.squaredNorm()) {
            b1.swap(b2);
            std::swap(t.a, t.c);
            std::swap(t.b, t.d);
            continue;
        }
        if (mu == zero) break;
    }
    return {Basis2C{b1, b2}, t, iter};
}

Basis2C sample_sl2c(RngState& rng) {
    // Shape from the restricted invariant measure 2 pi^2 t dt dy1 dy2.
    // Proposal: t with density ~ t^3 on (0, 2^(1/4)] (inverse CDF (2u)^(1/4))
    // and y uniform on [-t/2, t/2]^2, i.e. joint ~ t on the square slab;
    // accepting y outside the disk of radius sqrt(t^2 - 1/t^2) leaves exactly
    // the target. Acceptance rate is Z / pi^2 (about 0.63).
    double t = 0.0, y1 = 0.0, y2 = 0.0;
    while (true) {
        t = std::pow(2.0 * rng_uniform(rng), 0.25);
        if (!(t > 0.0)) continue;
        y1 = (rng_uniform(rng) - 0.5) * t;
        y2 = (rng_uniform(rng) - 0.5) * t;
        if (y1 * y1 + y2 * y2 >= t * t - 1.0 / (t * t)) break;
    }

    // Haar SU(2) factor from a uniform point on S^3.
    double q[4];
    while (true) {
        double nsq = 0.0;
        for (auto& c : q) {
            c = rng_gaussian(rng);
            nsq += c * c;
        }
        if (nsq > 1e-300) {
            const double inv = 1.0 / std::sqrt(nsq);
            for (auto& c : q) c *= inv;
            break;
        }
    }
    const std::complex<double> ua(q[0], q[1]);
    const std::complex<double> ub(q[2], q[3]);
    const Eigen::Vector2cd u1(ua, -std::conj(ub));
    const Eigen::Vector2cd u2(ub, std::conj(ua));

    Basis2C b;
    b.b1 = t * u1;
    b.b2 = std::complex<double>(y1, y2) * u1 + (1.0 / t) * u2;

    // Scramble with a short random det-1 word over Z[i]: a shear
    // b2 += k b1 followed by the swap (b1, b2) <- (b2, -b1). The lattice is
    // unchanged; the reducer sees a generic basis.
    for (int w = 0; w < 3; ++w) {
        const double kr = std::floor(rng_uniform(rng) * 5.0) - 2.0;
        const double ki = std::floor(rng_uniform(rng) * 5.0) - 2.0;
        b.b2 += std::complex<double>(kr, ki) * b.b1;
        b.b1.swap(b.b2);
        b.b1 = -b.b1;
    }

    // Re-project the accumulated floating-point drift back onto det = 1; the
    // relative adjustment is O(1e-12).
    const std::complex<double> det = b.b1(0) * b.b2(1) - b.b1(1) * b.b2(0);
    const std::complex<double> r = std::sqrt(det);
    b.b1 /= r;
    b.b2 /= r;
    return b;
}

Basis2C sample_ginibre_sl2c(RngState& rng) {
    const double inv_sqrt2 = 0.70710678118654752440;
    while (true) {
        std::complex<double> e[4];
        for (auto& z : e)
            z = std::complex<double>(rng_gaussian(rng) * inv_sqrt2,
                                     rng_gaussian(rng) * inv_sqrt2);
        const std::complex<double> det = e[0] * e[3] - e[1] * e[2];
        if (std::abs(det) < 1e-9) continue;
        const std::complex<double> r = std::sqrt(det);  // principal branch
        Basis2C b;
        b.b1 << e[0] / r, e[1] / r;
        b.b2 << e[2] / r, e[3] / r;
        return b;
    }
}

bool LatticeShape::in_domain() const {
    if (!(t > 0.0)) return false;
    if (std::abs(y1) > 0.5 * t || std::abs(y2) > 0.5 * t) return false;
    return y1 * y1 + y2 * y2 >= t * t - 1.0 / (t * t);
}

double shape_density(const LatticeShape& sh) {
    return sh.in_domain() ? 2.0 * kPi * kPi * sh.t : 0.0;
}

double shortest_vector_density(double t) {
    if (t <= 0.0 || t > kSupportEnd) return 0.0;
    const double base = 2.0 * kPi * kPi * t * t * t;
    if (t < 1.0) return base;
    const double arg = 4.0 * (1.0 - 1.0 / (t * t * t * t));
    return base * (1.0 - cdf_closed_n2(arg).value);
}

double shortest_vector_norm_const() {
    static const double z = [] {
        QuadOptions opts;
        opts.tol = 1e-12;
        opts.breakpoints = {1.0, kBranchT};
        return integrate_adaptive(shortest_vector_density, 0.0, kSupportEnd,
                                  opts)
            .value;
    }();
    return z;
}

double shortest_vector_density_normalized(double t) {
    return shortest_vector_density(t) / shortest_vector_norm_const();
}

double shortest_vector_cdf(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= kSupportEnd) return 1.0;
    const double z = shortest_vector_norm_const();
    const double first = kPi * kPi / 2.0;  // int_0^1 2 pi^2 u^3 du
    if (t <= 1.0) return kPi * kPi / 2.0 * (t * t * t * t) / z;
    QuadOptions opts;
    opts.tol = 1e-10;
    if (t > kBranchT) opts.breakpoints = {kBranchT};
    const double tail =
        integrate_adaptive(shortest_vector_density, 1.0, t, opts).value;
    return (first + tail) / z;
}

double v2_overlap(double a, double b) {
    if (!(a >= 0.0) || !(b > 0.0))
        throw std::invalid_argument("v2_overlap: requires a >= 0, b > 0");
    return 4.0 * b * b * cdf_closed_n2((a * a) / (b * b)).value;
}

LatticeExperiment lattice_experiment(long samples, int bins, RngState rng) {
    if (samples <= 0 || bins <= 0)
        throw std::invalid_argument(
            "lattice_experiment: samples and bins must be > 0");
    std::vector<double> lengths;
    lengths.reserve(static_cast<std::size_t>(samples));
    std::vector<long> counts(static_cast<std::size_t>(bins), 0);
    const double width = kSupportEnd / bins;
    double out_max = 0.0;
    for (long i = 0; i < samples; ++i) {
        const Basis2C b = sample_sl2c(rng);
        const ReductionResult red = reduce_lagrange_gauss(b);
        const double len = red.basis.b1.norm();
        lengths.push_back(len);
        out_max = std::max(out_max, len);
        int bin = static_cast<int>(len / width);
        if (bin >= bins) bin = bins - 1;  // len == support end
        if (bin >= 0) ++counts[static_cast<std::size_t>(bin)];
    }
    LatticeExperiment out;
    out.samples = samples;
    out.max_length = out_max;
    out.bin_centers.resize(static_cast<std::size_t>(bins));
    out.empirical.resize(static_cast<std::size_t>(bins));
    out.analytic.resize(static_cast<std::size_t>(bins));
    for (int i = 0; i < bins; ++i) {
        const double c = (i + 0.5) * width;
        out.bin_centers[static_cast<std::size_t>(i)] = c;
        out.empirical[static_cast<std::size_t>(i)] =
            static_cast<double>(counts[static_cast<std::size_t>(i)]) /
            (static_cast<double>(samples) * width);
        out.analytic[static_cast<std::size_t>(i)] =
            shortest_vector_density_normalized(c);
    }
    std::sort(lengths.begin(), lengths.end());
    double d = 0.0;
    const double n = static_cast<double>(samples);
    for (long i = 0; i < samples; ++i) {
        const double f = shortest_vector_cdf(lengths[static_cast<std::size_t>(i)]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    out.ks_stat = d;
    return out;
}

}  // namespace cubeball
