#include "cubeball/laplace.hpp"

#include <cmath>
#include <stdexcept>

namespace cubeball {

namespace {

using Complex = std::complex<double>;

// Modified Talbot contour constants (midpoint rule): with these the largest
// |exp(s t)| on the contour is exp(0.171 M), small enough that double
// precision keeps ~12 digits at M = 64, and |s| <= 1.6 M / t at every node.
constexpr double kSigma = 0.6122;
constexpr double kMu = 0.5017;
constexpr double kAlpha = 0.6407;
constexpr double kNu = 0.2645;

double talbot(const std::function<Complex(Complex)>& fhat, double t, int M) {
    if (M < 8 || (M % 2) != 0)
        throw std::invalid_argument("invert_laplace: talbot nodes must be even, >= 8");
    const double r = static_cast<double>(M) / t;
    double acc = 0.0;
    for (int k = 0; k < M / 2; ++k) {
        const double theta = (k + 0.5) * 2.0 * 3.14159265358979323846 / M;
        const double at = kAlpha * theta;
        const double cot = std::cos(at) / std::sin(at);
        const Complex s(r * (-kSigma + kMu * theta * cot), r * kNu * theta);
        const double csc2 = 1.0 / (std::sin(at) * std::sin(at));
        const Complex ds(r * (kMu * cot - kMu * kAlpha * theta * csc2), r * kNu);
        acc += std::imag(fhat(s) * std::exp(s * t) * ds);
    }
    return acc * 2.0 / M;
}

double bromwich(const std::function<Complex(Complex)>& fhat, double t, double c,
                double T, int M) {
    if (M < 8)
        throw std::invalid_argument("invert_laplace: bromwich needs >= 8 nodes");
    if (!(T > 0) || !(c > 0))
        throw std::invalid_argument("invert_laplace: bromwich needs c > 0, truncation > 0");
    const double h = T / M;
    // Smooth roll-off over the outer half: a hard cut leaves an O(1/(t T))
    // oscillatory tail. The erfc window centered at T/2 with scale T/10
    // suppresses both that tail (factor erfc(5) at omega = T) and its own
    // bias (factor exp(-(t T/20)^2), small once t*T >~ 90).
    const double w_mid = 0.5 * T;
    const double w_scale = 0.1 * T;
    double acc = 0.5 * std::real(fhat(Complex(c, 0.0)));
    for (int k = 1; k <= M; ++k) {
        const double omega = k * h;
        double w = 0.5 * std::erfc((omega - w_mid) / w_scale);
        if (w < 1e-18) break;
        const Complex val = fhat(Complex(c, omega)) *
                            std::exp(Complex(0.0, omega * t));
        acc += w * std::real(val);
    }
    return std::exp(c * t) * h * acc / 3.14159265358979323846;
}

}  // namespace

double invert_laplace(
    const std::function<std::complex<double>(std::complex<double>)>& fhat,
    double t, const ContourParams& params) {
    if (!(t > 0))
        throw std::invalid_argument("invert_laplace: t must be positive");
    switch (params.kind) {
        case ContourKind::talbot:
            return talbot(fhat, t, params.nodes);
        case ContourKind::bromwich:
            return bromwich(fhat, t, params.c, params.truncation, params.nodes);
    }
    throw std::logic_error("invert_laplace: unknown contour kind");
}

}  // namespace cubeball
