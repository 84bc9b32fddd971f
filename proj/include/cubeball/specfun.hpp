#pragma once

#include <complex>

namespace cubeball {

/// Error function on the real line. Throws std::domain_error on NaN.
double erf_real(double x);

/// Scaled complementary error function exp(z^2) erfc(z) for Re z >= 0.
/// Decays like 1/(sqrt(pi) z) uniformly in the closed right half-plane, so it
/// never overflows; this is the kernel used on inversion contours.
std::complex<double> erfcx_complex(std::complex<double> z);

/// Error function in the complex plane. Odd and conjugate-symmetric by
/// construction (arguments are canonicalized to Re z >= 0, Im z >= 0, so the
/// symmetries hold exactly in floating point). Throws std::overflow_error
/// where |erf z| exceeds the double range (|Im z| large), with a diagnostic;
/// never returns a silent Inf.
std::complex<double> erf_complex(std::complex<double> z);

struct FresnelCS {
    double c;
    double s;
};

/// Normalized Fresnel integrals C(x) = int_0^x cos(pi t^2 / 2) dt and
/// S(x) = int_0^x sin(pi t^2 / 2) dt, for x >= 0.
FresnelCS fresnel_normalized(double x);

/// Gamma function for x > 0 (x <= 170 to stay inside double range).
double gamma_pos(double x);

/// Generalized Laguerre polynomial L_k^alpha(x) by the three-term recurrence
/// (k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1}.
double laguerre_gen(int k, double alpha, double x);

/// I_a(lambda0, k) = (-1)^k d^k/dlambda^k of (pi erf(a / (2 sqrt(lambda))))^n
/// at lambda0 > 0, computed with Taylor-jet arithmetic (order budget 64), not
/// finite differences.
double i_smoothed_jet(double a, double lambda0, int k, int n);

}  // namespace cubeball
