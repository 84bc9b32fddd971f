#pragma once

#include <functional>
#include <map>
#include <string>

#include <Eigen/Core>

#include "cubeball/rng.hpp"

namespace cubeball {

// u2b: 2x2, rows are the first two components of independent uniform unit
//      vectors in R^3 (each entry is then uniform on [-1,1], and the squared
//      norm of a column follows F_2).
// u3s: 3x3, rows are independent uniform points on the 2-sphere; single
//      entries are uniform on [-1,1] and squared column norms follow F_3.
enum class EnsembleId { u2b, u3s };

struct LyapunovResult {
    double two_mu1 = 0.0;  // 2 * top Lyapunov exponent
    double mu1 = 0.0;
    double err_est = 0.0;
    std::string method;
    std::map<std::string, double> params;
};

Eigen::MatrixXd sample_matrix(EnsembleId e, RngState& rng);

/// 2*mu_1 = int_0^n log(t) p(t) dt with p the closed-form density of the
/// squared column norm; quadrature with integer breakpoints and endpoint
/// substitutions for the log and square-root singularities.
LyapunovResult lyapunov_exact(EnsembleId e, double tol = 1e-9);

/// Monte Carlo top Lyapunov exponent from renormalized matrix products:
/// `trials` independent runs of length m after a 100-step burn-in;
/// err_est = 3 * (standard error across trials).
LyapunovResult lyapunov_mc(EnsembleId e, long m, long trials, RngState rng);

/// Same iteration with a caller-supplied matrix sampler (dim x dim).
LyapunovResult lyapunov_mc_custom(
    const std::function<Eigen::MatrixXd(RngState&)>& sampler, int dim, long m,
    long trials, RngState rng, long burn_in = 100);

}  // namespace cubeball
