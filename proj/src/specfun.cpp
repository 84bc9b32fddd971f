#include "cubeball/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubeball/jet.hpp"

namespace cubeball {

namespace {

using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.7724538509055160273;

// Rational approximation of the Faddeeva function w(z) = exp(-z^2) erfc(-iz)
// for Im z >= 0 (Weideman 1994). Coefficients are Fourier coefficients of
// exp(-t^2)(L^2+t^2) under t = L tan(theta/2), computed once by direct DFT.
struct FaddeevaTable {
    static constexpr int N = 64;
    double L;
    std::vector<double> a;  // a[j] multiplies Z^j, j = 0..N-1 (a-hat_{j+1})

    FaddeevaTable() : L(std::sqrt(N / std::sqrt(2.0))), a(N) {
        const int M2 = 4 * N;
        std::vector<double> f(M2, 0.0);
        for (int m = 1; m < M2; ++m) {
            double theta = -kPi + 2.0 * kPi * m / M2;
            double t = L * std::tan(0.5 * theta);
            f[m] = std::exp(-t * t) * (L * L + t * t);
        }
        for (int j = 1; j <= N; ++j) {
            double acc = 0.0;
            for (int m = 0; m < M2; ++m) {
                double theta = -kPi + 2.0 * kPi * m / M2;
                acc += f[m] * std::cos(j * theta);
            }
            a[j - 1] = acc / M2;
        }
    }
};

Complex faddeeva_upper(Complex z) {
    static const FaddeevaTable tab;
    const double L = tab.L;
    const Complex iz(-z.imag(), z.real());
    const Complex d = L - iz;
    const Complex Z = (L + iz) / d;
    Complex p(0.0, 0.0);
    for (int j = FaddeevaTable::N - 1; j >= 0; --j) p = p * Z + tab.a[j];
    return 2.0 * p / (d * d) + (1.0 / kSqrtPi) / d;
}

// Laplace continued fraction for erfcx, accurate for large |z|, Re z >= 0.
Complex erfcx_cf(Complex z, int depth) {
    Complex t(0.0, 0.0);
    for (int n = depth; n >= 1; --n) t = (0.5 * n) / (z + t);
    return (1.0 / kSqrtPi) / (z + t);
}

Complex erf_series(Complex z) {
    // Maclaurin; used for |z| <= 0.5 where 12 terms reach full precision.
    Complex z2 = z * z;
    Complex term = z;
    Complex sum = z;
    for (int k = 1; k <= 24; ++k) {
        term *= -z2 / static_cast<double>(k);
        Complex add = term / static_cast<double>(2 * k + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum * (2.0 / kSqrtPi);
}

}  // namespace

double erf_real(double x) {
    if (std::isnan(x)) throw std::domain_error("erf_real: NaN input");
    return std::erf(x);
}

std::complex<double> erfcx_complex(std::complex<double> z) {
    if (!(z.real() >= 0.0))
        throw std::domain_error("erfcx_complex: requires Re z >= 0");
    if (std::isnan(z.real()) || std::isnan(z.imag()))
        throw std::domain_error("erfcx_complex: NaN input");
    // The rational approximation is uniform on the closed right half-plane
    // (iz always lands in the upper half-plane); the continued fraction is
    // only needed once 1/(2|z|^2) drops below double epsilon.
    if (std::abs(z) >= 1e8) return erfcx_cf(z, 8);
    return faddeeva_upper(Complex(-z.imag(), z.real()));
}

std::complex<double> erf_complex(std::complex<double> z) {
    if (std::isnan(z.real()) || std::isnan(z.imag()))
        throw std::domain_error("erf_complex: NaN input");
    // Canonical quadrant Re >= 0, Im >= 0: oddness and conjugate symmetry
    // then hold exactly in floating point.
    if (z.real() < 0.0) return -erf_complex(-z);
    if (z.imag() < 0.0) return std::conj(erf_complex(std::conj(z)));
    if (std::abs(z) <= 0.5) return erf_series(z);
    // erf = 1 - exp(-z^2) erfcx(z); the exponent can overflow when Im z
    // dominates, in which case erf itself is outside the double range.
    const double u = z.real(), v = z.imag();
    const double growth = v * v - u * u;
    if (growth > 705.0)
        throw std::overflow_error(
            "erf_complex: |erf z| overflows double at z = (" +
            std::to_string(u) + ", " + std::to_string(v) +
            "); exp(Im^2 - Re^2) exceeds range");
    const Complex mz2(-(u * u - v * v), -2.0 * u * v);
    return 1.0 - std::exp(mz2) * erfcx_complex(z);
}

FresnelCS fresnel_normalized(double x) {
    if (!(x >= 0.0))
        throw std::domain_error("fresnel_normalized: requires x >= 0");
    // C(x) - i S(x) = (1-i)/2 * erf((1+i) sqrt(pi)/2 x); the erf argument
    // lies on the 45-degree ray where exp(-z^2) has unit modulus.
    const double r = 0.5 * kSqrtPi * x;
    const Complex e = erf_complex(Complex(r, r));
    const Complex cs = 0.5 * Complex(1.0, -1.0) * e;
    return {cs.real(), -cs.imag()};
}

double gamma_pos(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma_pos: requires x > 0");
    if (x > 170.7)
        throw std::overflow_error("gamma_pos: overflow for x > 170.7");
    return std::tgamma(x);
}

double laguerre_gen(int k, double alpha, double x) {
    if (k < 0 || k > 10000)
        throw std::invalid_argument("laguerre_gen: k out of range [0, 10000]");
    if (k == 0) return 1.0;
    double lm1 = 1.0;
    double l = 1.0 + alpha - x;
    for (int m = 1; m < k; ++m) {
        double lp1 = ((2.0 * m + 1.0 + alpha - x) * l - (m + alpha) * lm1) /
                     (m + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

double i_smoothed_jet(double a, double lambda0, int k, int n) {
    if (!(a > 0.0) || !(lambda0 > 0.0))
        throw std::domain_error("i_smoothed_jet: requires a > 0, lambda0 > 0");
    if (k < 0 || k > 64)
        throw std::invalid_argument("i_smoothed_jet: order budget is 0 <= k <= 64");
    if (n < 1) throw std::invalid_argument("i_smoothed_jet: n must be >= 1");
    TaylorJet lambda = TaylorJet::variable(lambda0, k);
    TaylorJet u = jet_reciprocal(jet_sqrt(lambda)) * (0.5 * a);
    TaylorJet p = jet_pow_int(jet_erf(u) * kPi, n);
    double ck = p.coeff(k);
    if (!std::isfinite(ck))
        throw std::overflow_error("i_smoothed_jet: jet coefficients overflowed");
    // coeff k = f^(k)/k!; report (-1)^k f^(k)
    double fact = 1.0;
    for (int j = 2; j <= k; ++j) fact *= j;
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    double out = sign * fact * ck;
    if (!std::isfinite(out))
        throw std::overflow_error("i_smoothed_jet: derivative overflows double");
    return out;
}

}  // namespace cubeball
