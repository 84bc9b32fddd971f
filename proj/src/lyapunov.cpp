#include "cubeball/lyapunov.hpp"

#include <cmath>
#include <stdexcept>

#include "cubeball/quadrature.hpp"
#include "cubeball/volume.hpp"

namespace cubeball {

namespace {

int ensemble_dim(EnsembleId e) { return e == EnsembleId::u2b ? 2 : 3; }

Eigen::VectorXd random_unit(int dim, RngState& rng) {
    while (true) {
        Eigen::VectorXd v(dim);
        for (int i = 0; i < dim; ++i) v[i] = rng_gaussian(rng);
        const double n = v.norm();
        if (n > 1e-150) return v / n;
    }
}

}  // namespace

Eigen::MatrixXd sample_matrix(EnsembleId e, RngState& rng) {
    if (e == EnsembleId::u3s) {
        Eigen::MatrixXd m(3, 3);
        for (int r = 0; r < 3; ++r) m.row(r) = sphere3(rng).transpose();
        return m;
    }
    // u2b: first two components of two independent uniform unit 3-vectors
    Eigen::MatrixXd m(2, 2);
    for (int r = 0; r < 2; ++r) {
        const Eigen::Vector3d u = sphere3(rng);
        m(r, 0) = u[0];
        m(r, 1) = u[1];
    }
    return m;
}

LyapunovResult lyapunov_exact(EnsembleId e, double tol) {
    const int n = ensemble_dim(e);
    // 2 mu_1 = int_0^n log(t) p(t) dt, where p is the density of the squared
    // norm of a column (each entry uniform on [-1,1], so p = F_n').
    QuadOptions opts;
    opts.tol = tol > 0.0 ? tol : 1e-9;
    opts.singular_lo = true;  // log t at t = 0
    opts.breakpoints = {1.0};
    if (n == 3) opts.breakpoints.push_back(2.0);
    QuadResult r = integrate_adaptive(
        [n](double t) { return std::log(t) * pdf_closed(n, t); }, 0.0,
        static_cast<double>(n), opts);
    LyapunovResult out;
    out.two_mu1 = r.value;
    out.mu1 = 0.5 * r.value;
    out.err_est = r.err_est;
    out.method = "exact";
    out.params = {{"tol", opts.tol},
                  {"evaluations", static_cast<double>(r.evaluations)}};
    return out;
}

LyapunovResult lyapunov_mc_custom(
    const std::function<Eigen::MatrixXd(RngState&)>& sampler, int dim, long m,
    long trials, RngState rng, long burn_in) {
    if (m <= 0 || trials <= 0)
        throw std::invalid_argument("lyapunov_mc: m and trials must be > 0");
    double mean = 0.0;
    double m2 = 0.0;  // Welford accumulator over trial slopes
    for (long tr = 0; tr < trials;) {
        Eigen::VectorXd v = random_unit(dim, rng);
        bool collapsed = false;
        for (long k = 0; k < burn_in; ++k) {
            v = sampler(rng) * v;
            const double nv = v.norm();
            if (nv < 1e-300) {
                collapsed = true;
                break;
            }
            v /= nv;
        }
        double acc = 0.0;
        if (!collapsed) {
            for (long k = 0; k < m; ++k) {
                v = sampler(rng) * v;
                const double nv = v.norm();
                if (nv < 1e-300) {
                    collapsed = true;
                    break;
                }
                acc += std::log(nv);
                v /= nv;
            }
        }
        if (collapsed) continue;  // measure-zero event: resample the trial
        const double slope = acc / static_cast<double>(m);
        ++tr;
        const double delta = slope - mean;
        mean += delta / static_cast<double>(tr);
        m2 += delta * (slope - mean);
    }
    const double var =
        trials > 1 ? m2 / static_cast<double>(trials - 1) : 0.0;
    const double stderr_slope =
        std::sqrt(var / static_cast<double>(trials));
    LyapunovResult out;
    out.mu1 = mean;
    out.two_mu1 = 2.0 * mean;
    out.err_est = 3.0 * 2.0 * stderr_slope;  // on the 2*mu1 scale
    out.method = "mc";
    out.params = {{"m", static_cast<double>(m)},
                  {"trials", static_cast<double>(trials)},
                  {"burn_in", static_cast<double>(burn_in)}};
    return out;
}

LyapunovResult lyapunov_mc(EnsembleId e, long m, long trials, RngState rng) {
    return lyapunov_mc_custom(
        [e](RngState& r) { return sample_matrix(e, r); }, ensemble_dim(e), m,
        trials, rng, 100);
}

}  // namespace cubeball
