#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubeball {

struct QuadResult {
    double value = 0.0;
    double err_est = 0.0;   // conservative upper estimate
    long evaluations = 0;
};

// Thrown when an iterative scheme exhausts its budget; carries the best
// estimate obtained so far.
struct QuadratureError : std::runtime_error {
    QuadratureError(const std::string& msg, QuadResult best)
        : std::runtime_error(msg), partial(best) {}
    QuadResult partial;
};

struct QuadOptions {
    double tol = 1e-10;                 // absolute error target
    std::vector<double> breakpoints;    // interior points never crossed by a panel
    bool singular_lo = false;           // apply t = a+(b-a)u^2 substitution at the
    bool singular_hi = false;           // lower/upper end (log or sqrt endpoint
                                        // singularities)
    int max_panels = 20000;
};

/// Adaptive panel-bisection quadrature of f over [a, b] with an embedded
/// Gauss(7)/Kronrod(15) rule pair; the Kronrod value is returned and the
/// rule difference drives refinement. Panels never straddle a breakpoint.
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, const QuadOptions& opts);

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, const std::vector<double>& breakpoints,
                              double tol);

}  // namespace cubeball
