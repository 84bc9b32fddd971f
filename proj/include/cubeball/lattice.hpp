#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "cubeball/rng.hpp"

namespace cubeball {

// Exact Gaussian integer (element of Z[i]) used for reduction transforms.
struct GaussianInt {
    std::int64_t re = 0;
    std::int64_t im = 0;

    GaussianInt operator+(GaussianInt o) const { return {re + o.re, im + o.im}; }
    GaussianInt operator-(GaussianInt o) const { return {re - o.re, im - o.im}; }
    GaussianInt operator-() const { return {-re, -im}; }
    GaussianInt operator*(GaussianInt o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    bool operator==(GaussianInt o) const { return re == o.re && im == o.im; }
    std::complex<double> to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

// Row-major 2x2 matrix over Z[i]; reduction transforms are unimodular
// (determinant a unit: 1, -1, i or -i).
struct GaussMat2 {
    GaussianInt a{1, 0}, b{0, 0}, c{0, 0}, d{1, 0};
    GaussianInt det() const { return a * d - b * c; }
    bool det_is_unit() const {
        GaussianInt u = det();
        return (u.re * u.re + u.im * u.im) == 1;
    }
};

// Rank-2 basis in C^2 (rows of the implicit basis matrix).
struct Basis2C {
    Eigen::Vector2cd b1;
    Eigen::Vector2cd b2;
};

/// Nearest Gaussian integer; each component rounds half to even.
GaussianInt round_gaussian(std::complex<double> z);

struct ReductionResult {
    Basis2C basis;
    GaussMat2 transform;  // [b1'; b2'] = transform * [b1; b2]
    int iterations = 0;
};

/// Lagrange-Gauss reduction over Z[i]: alternately size-reduce b2 against b1
/// (mu = <b2,b1>/|b1|^2 rounded to Z[i]) and swap when it shortens b1.
/// Output satisfies |b1| <= |b2| and |Re mu*| <= 1/2, |Im mu*| <= 1/2.
/// Throws std::invalid_argument on a (numerically) dependent pair.
ReductionResult reduce_lagrange_gauss(const Basis2C& in);

/// Random basis (det = 1 up to 1e-12) of an invariant-measure random
/// unimodular Z[i]-lattice. The reduced shape (t, y1, y2) is drawn exactly
/// from the restricted invariant measure (proposal t ~ t^3 on (0, 2^(1/4)],
/// y uniform on the side-t square, accept outside the disk of radius
/// sqrt(t^2 - 1/t^2)), rotated by a Haar-SU(2) factor, then re-expressed in
/// a scrambled basis via a random determinant-1 word over Z[i] so that
/// reduction has nontrivial work to undo.
Basis2C sample_sl2c(RngState& rng);

/// Negative control: a 2x2 matrix of standard complex Gaussians divided by
/// the principal square root of its determinant (resampled while
/// |det| < 1e-9). det = 1 by construction, but the normalization weights
/// shapes by (tr M^* M)^-4, so the reduced shortest-vector law does NOT
/// match shortest_vector_density; kept to demonstrate that bias.
Basis2C sample_ginibre_sl2c(RngState& rng);

// Reduced-basis shape coordinates: t = ||shortest||, (y1, y2) the real and
// imaginary parts of the off-diagonal entry of the upper-triangular factor.
// The admissible domain is |y1| <= t/2, |y2| <= t/2, y1^2 + y2^2 >= t^2 - 1/t^2.
struct LatticeShape {
    double t = 1.0;
    double y1 = 0.0;
    double y2 = 0.0;
    bool in_domain() const;
};

/// Joint invariant density on shape space: 2 pi^2 t on the admissible
/// domain, 0 outside (unnormalized).
double shape_density(const LatticeShape& sh);

/// Density (unnormalized) of the shortest-vector length of a reduced
/// unit-covolume basis, the y-marginal of shape_density: 2 pi^2 t^3 on (0,1),
/// 2 pi^2 t^3 (1 - F_2(4(1 - t^-4))) on [1, 2^(1/4)], 0 elsewhere.
double shortest_vector_density(double t);

/// Normalizing constant Z = int_0^{2^(1/4)} of the above.
double shortest_vector_norm_const();

/// Normalized density and CDF.
double shortest_vector_density_normalized(double t);
double shortest_vector_cdf(double t);

/// Area of the disk of radius a intersected with the square [-b, b]^2
/// (b is the half-side): 4 b^2 F_2(a^2 / b^2).
double v2_overlap(double a, double b);

struct LatticeExperiment {
    std::vector<double> bin_centers;
    std::vector<double> empirical;  // density estimate per bin
    std::vector<double> analytic;   // normalized density at bin centers
    double ks_stat = 0.0;           // one-sample KS vs the analytic CDF
    double max_length = 0.0;        // largest sampled ||b1|| (support check)
    long samples = 0;
};

/// Sample `samples` reduced random bases, histogram ||b1||, and compare with
/// the analytic density.
LatticeExperiment lattice_experiment(long samples, int bins, RngState rng);

}  // namespace cubeball
