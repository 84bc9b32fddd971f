#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "cubeball/lyapunov.hpp"
#include "cubeball/quadrature.hpp"
#include "cubeball/rng.hpp"
#include "cubeball/volume.hpp"

using namespace cubeball;

namespace {

constexpr double kPi = 3.14159265358979323846;

// one-sample KS distance against a cdf
double ks_stat(std::vector<double> xs, const std::function<double(double)>& F) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = F(xs[i]);
        d = std::max(d, std::abs(f - (i + 1) / n));
        d = std::max(d, std::abs(f - i / n));
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(i / static_cast<double>(a.size()) -
                                 j / static_cast<double>(b.size())));
    }
    return d;
}

}  // namespace

TEST_CASE("exact exponents match the reference values") {
    const LyapunovResult u2 = lyapunov_exact(EnsembleId::u2b);
    CHECK(std::abs(u2.two_mu1 - (-0.73605649)) <= 2e-5);
    CHECK(u2.mu1 == 0.5 * u2.two_mu1);
    CHECK(u2.err_est <= 1e-8);
    CHECK(u2.method == "exact");

    const LyapunovResult u3 = lyapunov_exact(EnsembleId::u3s);
    CHECK(std::abs(u3.two_mu1 - (-0.18770452)) <= 2e-5);
    CHECK(u3.err_est <= 1e-8);

    // tol parameter reaches the quadrature
    CHECK(lyapunov_exact(EnsembleId::u2b, 1e-6).params.at("tol") == 1e-6);
}

TEST_CASE("exact integral decomposes into per-branch pieces") {
    // u2b, first branch: int_0^1 (pi/4) log t dt = -pi/4 analytically
    QuadOptions lo;
    lo.tol = 1e-12;
    lo.singular_lo = true;
    const double p1 =
        integrate_adaptive([](double t) { return std::log(t) * 0.25 * kPi; },
                           0.0, 1.0, lo)
            .value;
    CHECK(std::abs(p1 - (-0.25 * kPi)) <= 1e-10);

    QuadOptions plain;
    plain.tol = 1e-12;
    const double p2 =
        integrate_adaptive(
            [](double t) { return std::log(t) * pdf_closed(2, t); }, 1.0, 2.0,
            plain)
            .value;
    const LyapunovResult u2 = lyapunov_exact(EnsembleId::u2b, 1e-11);
    CHECK(std::abs((p1 + p2) - u2.two_mu1) <= 1e-9);

    // u3s, first branch: int_0^1 (pi/4) sqrt(t) log t dt = -pi/9
    const double q1 = integrate_adaptive(
                          [](double t) {
                              return std::log(t) * 0.25 * kPi * std::sqrt(t);
                          },
                          0.0, 1.0, lo)
                          .value;
    CHECK(std::abs(q1 - (-kPi / 9.0)) <= 1e-10);
    const double q2 =
        integrate_adaptive(
            [](double t) { return std::log(t) * pdf_closed(3, t); }, 1.0, 2.0,
            plain)
            .value;
    const double q3 =
        integrate_adaptive(
            [](double t) { return std::log(t) * pdf_closed(3, t); }, 2.0, 3.0,
            plain)
            .value;
    const LyapunovResult u3 = lyapunov_exact(EnsembleId::u3s, 1e-11);
    CHECK(std::abs((q1 + q2 + q3) - u3.two_mu1) <= 1e-9);
}

TEST_CASE("sample_matrix: shapes, entry ranges, row norms") {
    RngState rng{101u, 1u, 0u};
    for (int k = 0; k < 2000; ++k) {
        const Eigen::MatrixXd a = sample_matrix(EnsembleId::u2b, rng);
        REQUIRE(a.rows() == 2);
        REQUIRE(a.cols() == 2);
        for (int r = 0; r < 2; ++r) {
            CHECK(a.row(r).norm() <= 1.0 + 1e-12);
            for (int c = 0; c < 2; ++c) {
                CHECK(a(r, c) >= -1.0);
                CHECK(a(r, c) <= 1.0);
            }
        }
        const Eigen::MatrixXd b = sample_matrix(EnsembleId::u3s, rng);
        REQUIRE(b.rows() == 3);
        REQUIRE(b.cols() == 3);
        for (int r = 0; r < 3; ++r)
            CHECK(std::abs(b.row(r).norm() - 1.0) <= 1e-12);
    }
}

TEST_CASE("matrix entries are uniform on [-1, 1]") {
    // a single coordinate of a uniform point on S^2 is uniform on [-1, 1]
    const int bins = 20;
    const long n = 40000;
    for (int which : {0, 1}) {
        RngState rng{202u, static_cast<std::uint64_t>(3 + which), 0u};
        std::vector<long> hist(bins, 0);
        for (long k = 0; k < n; ++k) {
            const Eigen::MatrixXd m =
                which == 0 ? sample_matrix(EnsembleId::u2b, rng)
                           : sample_matrix(EnsembleId::u3s, rng);
            const double x = which == 0 ? m(0, 1) : m(1, 1);
            int b = static_cast<int>((x + 1.0) / 2.0 * bins);
            b = std::clamp(b, 0, bins - 1);
            ++hist[b];
        }
        const double expect = static_cast<double>(n) / bins;
        double chi2 = 0.0;
        for (long h : hist) chi2 += (h - expect) * (h - expect) / expect;
        CHECK(chi2 < 43.82);  // chi-square(19) at the 0.999 level
    }
}

TEST_CASE("squared column norms follow the cube-ball laws") {
    const long n = 20000;
    RngState rng{303u, 5u, 0u};
    std::vector<double> q2, q3;
    q2.reserve(n);
    q3.reserve(n);
    for (long k = 0; k < n; ++k) {
        q2.push_back(sample_matrix(EnsembleId::u2b, rng).col(0).squaredNorm());
        q3.push_back(sample_matrix(EnsembleId::u3s, rng).col(2).squaredNorm());
    }
    const double crit = 1.949 / std::sqrt(static_cast<double>(n));
    CHECK(ks_stat(std::move(q2),
                  [](double s) { return cdf_closed_n2(s).value;}) <= crit);
    CHECK(ks_stat(std::move(q3),
                  [](double s) { return cdf_closed_n3(s).value; }) <= crit);
}

TEST_CASE("u3s rows are rotation invariant") {
    // projections of the rows onto two very different directions are
    // identically distributed
    const long n = 20000;
    Eigen::Vector3d q(0.48, -0.64, 0.6);
    q.normalize();
    RngState ra{404u, 6u, 0u};
    RngState rb{404u, 7u, 0u};
    std::vector<double> pa, pb;
    pa.reserve(n);
    pb.reserve(n);
    for (long k = 0; k < n; ++k) {
        pa.push_back(sample_matrix(EnsembleId::u3s, ra).row(2).dot(
            Eigen::RowVector3d(1.0, 0.0, 0.0)));
        pb.push_back(sample_matrix(EnsembleId::u3s, rb).row(2).dot(
            q.transpose()));
    }
    const double crit =
        1.949 * std::sqrt(2.0 / static_cast<double>(n));
    CHECK(ks_two_sample(std::move(pa), std::move(pb)) <= crit);
}

TEST_CASE("Monte Carlo exponent brackets the exact one") {
    const LyapunovResult e2 = lyapunov_exact(EnsembleId::u2b);
    const LyapunovResult m2 =
        lyapunov_mc(EnsembleId::u2b, 10000L, 100L, RngState{505u, 8u, 0u});
    CHECK(std::abs(m2.two_mu1 - e2.two_mu1) <= m2.err_est);
    CHECK(m2.err_est > 0.0);
    CHECK(m2.method == "mc");
    CHECK(m2.params.at("m") == 10000.0);
    CHECK(m2.params.at("trials") == 100.0);
    CHECK(m2.params.at("burn_in") == 100.0);

    const LyapunovResult e3 = lyapunov_exact(EnsembleId::u3s);
    const LyapunovResult m3 =
        lyapunov_mc(EnsembleId::u3s, 5000L, 80L, RngState{505u, 9u, 0u});
    CHECK(std::abs(m3.two_mu1 - e3.two_mu1) <= m3.err_est);

    // replaying the seed reproduces the estimate bit for bit
    const LyapunovResult m2b =
        lyapunov_mc(EnsembleId::u2b, 1000L, 10L, RngState{660u, 1u, 0u});
    const LyapunovResult m2c =
        lyapunov_mc(EnsembleId::u2b, 1000L, 10L, RngState{660u, 1u, 0u});
    CHECK(m2b.mu1 == m2c.mu1);

    CHECK_THROWS_AS(lyapunov_mc(EnsembleId::u2b, 0L, 5L, RngState{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(lyapunov_mc(EnsembleId::u2b, 5L, 0L, RngState{}),
                    std::invalid_argument);
}

TEST_CASE("custom sampler controls: isometries and pure scalings") {
    // a fixed rotation preserves every norm, so the exponent is exactly 0
    auto rot = [](RngState&) {
        Eigen::MatrixXd r(2, 2);
        const double c = std::cos(0.7), s = std::sin(0.7);
        r << c, -s, s, c;
        return r;
    };
    const LyapunovResult zero =
        lyapunov_mc_custom(rot, 2, 500L, 8L, RngState{707u, 2u, 0u});
    CHECK(std::abs(zero.mu1) <= 1e-15);
    CHECK(zero.err_est <= 1e-15);

    // scaling the rotation by 2 shifts every log-step by log 2 exactly
    auto scaled = [&rot](RngState& r) {
        return (2.0 * rot(r)).eval();
    };
    const LyapunovResult l2 =
        lyapunov_mc_custom(scaled, 2, 500L, 8L, RngState{707u, 3u, 0u});
    CHECK(std::abs(l2.mu1 - std::log(2.0)) <= 1e-13);

    // a projection matrix kills a direction but the product still tracks the
    // surviving eigenvalue
    auto proj = [](RngState&) {
        Eigen::MatrixXd p(2, 2);
        p << 0.5, 0.0, 0.0, 0.0;
        return p;
    };
    const LyapunovResult lp =
        lyapunov_mc_custom(proj, 2, 200L, 4L, RngState{707u, 4u, 0u});
    CHECK(std::abs(lp.mu1 - std::log(0.5)) <= 1e-12);
}
