#pragma once

#include <complex>
#include <functional>

namespace cubeball {

enum class ContourKind { talbot, bromwich };

// talbot: modified Talbot contour, `nodes` midpoints (must be even; conjugate
//         pairs are folded so only nodes/2 transform evaluations are made).
// bromwich: trapezoid on the vertical line Re s = c, |Im s| <= truncation,
//         `nodes` steps, with a smooth roll-off window over the outer range
//         to suppress the truncation tail.
struct ContourParams {
    ContourKind kind = ContourKind::talbot;
    int nodes = 64;
    double c = 1.0;            // bromwich only
    double truncation = 200.0; // bromwich only
};

/// Numerical inverse Laplace transform of fhat at time t > 0.
///
/// fhat must be analytic to the right of the imaginary axis and decay at
/// least like |s|^(-1-delta) along the chosen contour. The Talbot contour
/// sweeps into the left half-plane, so transforms that grow there (e.g.
/// entire transforms of exponential type) must be reduced to decaying
/// kernels by the caller first.
double invert_laplace(
    const std::function<std::complex<double>(std::complex<double>)>& fhat,
    double t, const ContourParams& params = {});

}  // namespace cubeball
