#pragma once

#include <map>
#include <string>
#include <vector>

#include "cubeball/laplace.hpp"
#include "cubeball/rng.hpp"

// Distribution of S_n = sum of squares of n independent U(0,1) variables.
// F_n(s) = Pr(S_n <= s) equals the volume of the unit cube intersected with
// the centered ball of radius sqrt(s). Several independent evaluation methods
// are provided so they can cross-validate each other.

namespace cubeball {

enum class CdfMethod {
    closed,     // exact piecewise forms, n in {1,2,3}
    fourier,    // Fresnel-coefficient Fourier series
    laplace,    // numerical inversion of the Laplace transform
    laguerre,   // Laguerre-type series (experimental, see cdf_laguerre)
    recursive,  // convolution recursion over n
    mc,         // Monte Carlo indicator mean
    clt,        // normal approximation
    automatic,
};

std::string cdf_method_name(CdfMethod m);

struct SeriesParams {
    double tol = 1e-5;
    long max_terms = 10000000L;
};

struct CdfEstimate {
    int n = 0;
    double s = 0.0;
    double value = 0.0;
    double err_est = 0.0;
    CdfMethod method = CdfMethod::automatic;
    // method-specific parameters actually used (terms, nodes, samples, ...)
    std::map<std::string, double> params;
};

// Axis-aligned box given by per-coordinate bounds lo[i] < hi[i].
struct BoxSpec {
    std::vector<double> lo;
    std::vector<double> hi;
    int dim() const { return static_cast<int>(lo.size()); }
    void validate() const;  // throws std::invalid_argument
};

struct CdfOptions {
    CdfMethod method = CdfMethod::automatic;
    double tol = 0.0;  // 0 = per-method default
    SeriesParams series;
    ContourParams contour;
    long samples = 1000000L;
    RngState rng;
    double recursive_tol = 1e-7;
};

/// F_2 by the closed two-branch form.
CdfEstimate cdf_closed_n2(double s);

/// F_3 by the closed three-branch form.
CdfEstimate cdf_closed_n3(double s);

/// Volume of the symmetric cube [-a, a]^n intersected with the unit ball,
/// n in {2, 3}. The n = 3 case is the explicit four-branch formula.
double vol_sym_cube_ball(double a, int n);

/// Fourier-series evaluation. Coefficients are Fresnel values; the tail is
/// bounded by (1/pi) (sqrt(n)/2)^n (2/n) K^(-n/2).
CdfEstimate cdf_fourier(int n, double s, const SeriesParams& p = {});

/// Laplace-transform inversion of 2^-n pi^(n/2) (erf sqrt(s))^n / s^(n/2+1).
/// The integrand is reduced to erfcx kernels (exact binomial expansion, shift
/// theorem) so that it decays along the inversion contour.
CdfEstimate cdf_laplace(int n, double s, const ContourParams& p = {});

/// EXPERIMENTAL. Laguerre-type series in the scaled variable; terms use
/// jet-computed derivatives of the heat-smoothed cube mass. Always
/// cross-checked against the dispatcher reference; params["consistent"]
/// records the outcome and a deviation beyond 1e-3 is flagged, never
/// silently accepted.
CdfEstimate cdf_laguerre(int n, double s, const SeriesParams& p = {});

/// Convolution recursion F_n(s) = int_0^1 F_{n-1}(s - x^2) dx, n <= 6.
CdfEstimate cdf_recursive(int n, double s, double tol = 1e-7);

/// Monte Carlo indicator mean with err_est = 3 sqrt(p(1-p)/samples).
CdfEstimate cdf_mc(int n, double s, long samples, RngState rng);

/// Normal approximation Phi((s - n/3) / (2 sqrt(n/45))).
CdfEstimate clt_approx(int n, double s);

/// Dispatcher. automatic picks: closed for n in {1,2,3}, laplace otherwise.
/// s <= 0 and s >= n return exact 0/1. Series methods are not trusted at
/// exact integer s (kink points): the dispatcher nudges s by 1e-12 there.
CdfEstimate cdf(int n, double s, const CdfOptions& opts = {});

/// Closed-form density F_n'(s) for n in {2, 3}; right-limit value at the
/// measure-zero kink points; 0 outside (0, n).
double pdf_closed(int n, double s);

/// Fraction of the box occupied by the unit ball, i.e. Vol(box ∩ B(1)) over
/// Vol(box), by contour inversion of the product-of-erf-differences
/// transform (same erfcx reduction as cdf_laplace).
double box_ball_fraction(const BoxSpec& box, const ContourParams& p = {},
                         double* err_est = nullptr);

/// Vol(box ∩ B(1)) = fraction * Vol(box).
double box_ball_volume(const BoxSpec& box, const ContourParams& p = {},
                       double* err_est = nullptr);

/// Rejection-sampling estimate of Vol(box ∩ B(1)); err_est is 3 sigma.
double box_ball_volume_mc(const BoxSpec& box, long samples, RngState rng,
                          double* err_est = nullptr);

}  // namespace cubeball
