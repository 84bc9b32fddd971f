#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "cubeball/laplace.hpp"
#include "cubeball/quadrature.hpp"
#include "cubeball/rng.hpp"
#include "cubeball/series.hpp"

using namespace cubeball;
using Complex = std::complex<double>;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("integrate_adaptive on smooth integrands") {
    QuadOptions opts;
    opts.tol = 1e-12;
    const QuadResult r =
        integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0, opts);
    CHECK(std::abs(r.value - 1.0 / 3.0) <= 1e-12);
    CHECK(r.err_est <= 1e-10);
    CHECK(r.evaluations > 0);

    const QuadResult g = integrate_adaptive(
        [](double x) { return std::exp(-x * x); }, -8.0, 8.0, opts);
    CHECK(std::abs(g.value - std::sqrt(kPi)) <= 1e-11);
}

TEST_CASE("endpoint substitution integrates log and sqrt singularities") {
    QuadOptions opts;
    opts.tol = 1e-11;
    opts.singular_lo = true;
    const QuadResult r =
        integrate_adaptive([](double x) { return std::log(x); }, 0.0, 1.0,
                           opts);
    CHECK(std::abs(r.value - (-1.0)) <= 1e-9);

    const QuadResult q = integrate_adaptive(
        [](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opts);
    CHECK(std::abs(q.value - 2.0) <= 1e-9);

    QuadOptions hi;
    hi.tol = 1e-11;
    hi.singular_hi = true;
    const QuadResult h = integrate_adaptive(
        [](double x) { return std::log(1.0 - x); }, 0.0, 1.0, hi);
    CHECK(std::abs(h.value - (-1.0)) <= 1e-9);
}

TEST_CASE("breakpoints align panels with kinks") {
    QuadOptions opts;
    opts.tol = 1e-13;
    opts.breakpoints = {1.0 / 3.0};
    const QuadResult r = integrate_adaptive(
        [](double x) { return std::abs(x - 1.0 / 3.0); }, 0.0, 1.0, opts);
    CHECK(std::abs(r.value - 5.0 / 18.0) <= 1e-12);
}

TEST_CASE("additivity over adjacent intervals") {
    auto f = [](double x) { return std::sin(3.0 * x) + 0.2 * x; };
    QuadOptions opts;
    opts.tol = 1e-12;
    const double whole = integrate_adaptive(f, 0.0, 2.0, opts).value;
    const double split = integrate_adaptive(f, 0.0, 0.7, opts).value +
                         integrate_adaptive(f, 0.7, 2.0, opts).value;
    CHECK(std::abs(whole - split) <= 1e-11);
}

TEST_CASE("budget exhaustion throws with the partial estimate attached") {
    QuadOptions opts;
    opts.tol = 1e-15;
    opts.max_panels = 3;
    bool thrown = false;
    try {
        integrate_adaptive([](double x) { return std::sin(100.0 * x * x); },
                           0.0, 3.0, opts);
    } catch (const QuadratureError& e) {
        thrown = true;
        CHECK(std::isfinite(e.partial.value));
        CHECK(e.partial.err_est > 1e-15);
        CHECK(e.partial.evaluations > 0);
    }
    CHECK(thrown);
}

TEST_CASE("invert_laplace talbot fixtures") {
    const ContourParams p;  // talbot, 64 nodes
    auto one_over_s = [](Complex s) { return 1.0 / s; };
    auto one_over_s2 = [](Complex s) { return 1.0 / (s * s); };
    auto shifted = [](Complex s) { return 1.0 / (s + 1.0); };
    CHECK(std::abs(invert_laplace(one_over_s, 1.0, p) - 1.0) <= 1e-10);
    CHECK(std::abs(invert_laplace(one_over_s2, 0.7, p) - 0.7) <= 1e-10);
    CHECK(std::abs(invert_laplace(shifted, 2.0, p) - std::exp(-2.0)) <= 1e-10);
    // damped oscillation: L[sin t] = 1/(s^2+1)
    auto osc = [](Complex s) { return 1.0 / (s * s + 1.0); };
    CHECK(std::abs(invert_laplace(osc, 1.3, p) - std::sin(1.3)) <= 1e-9);
}

TEST_CASE("talbot and bromwich agree on a shifted pole") {
    ContourParams b;
    b.kind = ContourKind::bromwich;
    b.nodes = 2000;
    b.c = 1.0;
    b.truncation = 200.0;
    const ContourParams t;  // talbot
    auto fhat = [](Complex s) { return 1.0 / (s + 1.0); };
    for (double tt : {0.5, 1.0, 2.0}) {
        const double vt = invert_laplace(fhat, tt, t);
        const double vb = invert_laplace(fhat, tt, b);
        CHECK(std::abs(vt - vb) <= 1e-6);
    }
}

TEST_CASE("invert_laplace rejects bad arguments") {
    auto fhat = [](Complex s) { return 1.0 / s; };
    CHECK_THROWS_AS(invert_laplace(fhat, 0.0, {}), std::invalid_argument);
    CHECK_THROWS_AS(invert_laplace(fhat, -1.0, {}), std::invalid_argument);
    ContourParams odd;
    odd.nodes = 33;
    CHECK_THROWS_AS(invert_laplace(fhat, 1.0, odd), std::invalid_argument);
    ContourParams tiny;
    tiny.nodes = 4;
    CHECK_THROWS_AS(invert_laplace(fhat, 1.0, tiny), std::invalid_argument);
}

TEST_CASE("sum_series geometric and Basel sums") {
    // sum 2^-k = 1, tail after K is exactly 2^-K
    const QuadResult geo = sum_series(
        [](long k) { return std::pow(0.5, static_cast<double>(k)); },
        [](long k) { return std::pow(0.5, static_cast<double>(k)); }, 1e-12);
    CHECK(std::abs(geo.value - 1.0) <= 1e-11);
    CHECK(geo.err_est <= 1e-12);

    // sum 1/k^2 = pi^2/6, tail after K bounded by 1/K
    const QuadResult basel = sum_series(
        [](long k) { return 1.0 / (static_cast<double>(k) * k); },
        [](long k) { return 1.0 / static_cast<double>(k); }, 1e-4);
    CHECK(std::abs(basel.value - kPi * kPi / 6.0) <= 1e-4);
    CHECK(basel.evaluations >= 10000);

    const QuadResult zero = sum_series([](long) { return 0.0; },
                                       [](long) { return 0.0; }, 1e-12);
    CHECK(zero.value == 0.0);
}

TEST_CASE("sum_series exhaustion carries the partial sum") {
    bool thrown = false;
    try {
        sum_series([](long k) { return 1.0 / (static_cast<double>(k) * k); },
                   [](long k) { return 1.0 / static_cast<double>(k); }, 1e-9,
                   1, 1000);
    } catch (const SeriesError& e) {
        thrown = true;
        CHECK(e.terms == 1000);
        CHECK(e.partial > 1.6);
        CHECK(e.partial < kPi * kPi / 6.0);
    }
    CHECK(thrown);
}

TEST_CASE("rng streams are reproducible and independent") {
    RngState a{123u, 5u, 0u};
    RngState b{123u, 5u, 0u};
    for (int i = 0; i < 1000; ++i) CHECK(rng_next_u64(a) == rng_next_u64(b));

    // same seed, different stream: different sequence
    RngState c{123u, 6u, 0u};
    int same = 0;
    RngState a2{123u, 5u, 0u};
    for (int i = 0; i < 1000; ++i)
        if (rng_next_u64(a2) == rng_next_u64(c)) ++same;
    CHECK(same == 0);
}

TEST_CASE("rng_uniform moments and uniformity") {
    RngState rng{20240601u, 1u, 0u};
    double sum = 0.0;
    const long n = 1000000;
    for (long i = 0; i < n; ++i) sum += rng_uniform(rng);
    CHECK(std::abs(sum / n - 0.5) <= 0.002);

    // chi-square over 20 bins, 1e5 draws, three streams;
    // critical value at alpha = 0.001 with 19 dof is 43.82
    for (std::uint64_t stream : {2u, 3u, 4u}) {
        RngState r{20240601u, stream, 0u};
        long bins[20] = {0};
        const long m = 100000;
        for (long i = 0; i < m; ++i) {
            int b = static_cast<int>(rng_uniform(r) * 20.0);
            if (b > 19) b = 19;
            ++bins[b];
        }
        const double expect = m / 20.0;
        double chi2 = 0.0;
        for (long cnt : bins) {
            const double d = cnt - expect;
            chi2 += d * d / expect;
        }
        CHECK(chi2 < 43.82);
    }
}

TEST_CASE("rng_gaussian moments") {
    RngState rng{20240601u, 9u, 0u};
    const long n = 400000;
    double m1 = 0.0, m2 = 0.0, m4 = 0.0;
    for (long i = 0; i < n; ++i) {
        const double g = rng_gaussian(rng);
        m1 += g;
        m2 += g * g;
        m4 += g * g * g * g;
    }
    m1 /= n;
    m2 /= n;
    m4 /= n;
    CHECK(std::abs(m1) <= 0.01);
    CHECK(std::abs(m2 - 1.0) <= 0.01);
    CHECK(std::abs(m4 - 3.0) <= 0.08);
}

TEST_CASE("sphere3 lies on the sphere with isotropic covariance") {
    RngState rng{20240601u, 12u, 0u};
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    const long n = 200000;
    for (long i = 0; i < n; ++i) {
        const Eigen::Vector3d v = sphere3(rng);
        CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
        cov += v * v.transpose();
    }
    cov /= static_cast<double>(n);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double want = i == j ? 1.0 / 3.0 : 0.0;
            CHECK(std::abs(cov(i, j) - want) <= 0.005);
        }
}
