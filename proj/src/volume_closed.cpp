#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cubeball/volume.hpp"
#include "volume_internal.hpp"

namespace cubeball {

namespace detail {

CdfEstimate make_estimate(int n, double s, double raw, double err_est,
                          CdfMethod method,
                          std::map<std::string, double> params) {
    const double slack = err_est + 16.0 * 2.220446049250313e-16;
    if (raw < -slack || raw > 1.0 + slack)
        throw std::range_error(
            "cdf (" + cdf_method_name(method) + ", n=" + std::to_string(n) +
            ", s=" + std::to_string(s) + "): value " + std::to_string(raw) +
            " outside [0,1] by more than err_est " + std::to_string(err_est));
    CdfEstimate e;
    e.n = n;
    e.s = s;
    e.value = std::clamp(raw, 0.0, 1.0);
    e.err_est = err_est;
    e.method = method;
    e.params = std::move(params);
    return e;
}

void require_dim(int n) {
    if (n < 1) throw std::invalid_argument("cdf: n must be >= 1");
}

}  // namespace detail

using detail::kPi;

std::string cdf_method_name(CdfMethod m) {
    switch (m) {
        case CdfMethod::closed: return "closed";
        case CdfMethod::fourier: return "fourier";
        case CdfMethod::laplace: return "laplace";
        case CdfMethod::laguerre: return "laguerre";
        case CdfMethod::recursive: return "recursive";
        case CdfMethod::mc: return "mc";
        case CdfMethod::clt: return "clt";
        case CdfMethod::automatic: return "auto";
    }
    throw std::logic_error("cdf_method_name: unknown method");
}

void BoxSpec::validate() const {
    if (lo.size() != hi.size())
        throw std::invalid_argument("BoxSpec: lo/hi length mismatch");
    if (lo.empty()) throw std::invalid_argument("BoxSpec: empty box");
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!(lo[i] < hi[i]))
            throw std::invalid_argument(
                "BoxSpec: requires lo < hi on every axis (axis " +
                std::to_string(i) + ")");
        if (!std::isfinite(lo[i]) || !std::isfinite(hi[i]))
            throw std::invalid_argument("BoxSpec: bounds must be finite");
    }
}

namespace {

constexpr double kClosedErr = 1e-15;

// Vol(C_3([-a,a]) cap B_3(1)) on the middle range 1/sqrt(3) <= a <= 1/sqrt(2):
// the sphere cuts all six faces but the edges stay outside. The textbook
// form uses asin(a/sqrt(1-a^2)) and asin(a^2/(1-a^2)); both arguments reach
// 1 at a = 1/sqrt(2) where asin loses half the significant digits. Since
// (1-a^2)^2 - a^4 = 1 - 2a^2, both rewrite as atan2 against the same
// sqrt(1-2a^2), which stays fully accurate through the join.
double h3(double a) {
    const double a2 = a * a;
    const double root = std::sqrt(std::max(0.0, 1.0 - 2.0 * a2));
    const double asin_face = std::atan2(a, root);
    const double asin_edge = std::atan2(a2, root);
    return 8.0 * a2 * root +
           2.0 * (3.0 * a - a2 * a) * (4.0 * asin_face - kPi) -
           8.0 * asin_edge + 4.0 * kPi / 3.0;
}

}  // namespace

CdfEstimate cdf_closed_n2(double s) {
    double v;
    if (s <= 0.0) {
        v = 0.0;
    } else if (s <= 1.0) {
        v = 0.25 * kPi * s;
    } else if (s < 2.0) {
        // middle branch fixed to be continuous at s=1 (value pi/4) and s=2
        v = std::sqrt(s - 1.0) +
            0.25 * s * (kPi - 4.0 * std::acos(1.0 / std::sqrt(s)));
    } else {
        v = 1.0;
    }
    return detail::make_estimate(2, s, v, kClosedErr, CdfMethod::closed, {});
}

CdfEstimate cdf_closed_n3(double s) {
    double v;
    if (s <= 0.0) {
        v = 0.0;
    } else if (s <= 1.0) {
        v = kPi / 6.0 * std::pow(s, 1.5);
    } else if (s <= 2.0) {
        v = kPi / 8.0 * (6.0 * s - 2.0 - (8.0 / 3.0) * std::pow(s, 1.5));
    } else if (s < 3.0) {
        v = std::pow(s, 1.5) / 8.0 * h3(1.0 / std::sqrt(s));
    } else {
        v = 1.0;
    }
    return detail::make_estimate(3, s, v, 4.0 * kClosedErr, CdfMethod::closed,
                                 {});
}

double vol_sym_cube_ball(double a, int n) {
    if (!(a > 0.0)) throw std::invalid_argument("vol_sym_cube_ball: a > 0");
    if (n == 2) {
        if (a >= 1.0) return kPi;
        return 4.0 * a * a * cdf_closed_n2(1.0 / (a * a)).value;
    }
    if (n == 3) {
        const double inv_sqrt3 = 0.57735026918962576451;
        const double inv_sqrt2 = 0.70710678118654752440;
        if (a < inv_sqrt3) return 8.0 * a * a * a;
        if (a < inv_sqrt2) return h3(a);
        if (a <= 1.0) return kPi * (6.0 * a - 2.0 * a * a * a - 8.0 / 3.0);
        return 4.0 * kPi / 3.0;
    }
    throw std::invalid_argument(
        "vol_sym_cube_ball: closed forms exist for n in {2,3}; general n "
        "goes through box_ball_volume");
}

double pdf_closed(int n, double s) {
    // Kink points (integer s) return the shared one-sided limit; each branch
    // below is continuous up to its endpoints.
    if (n == 2) {
        if (s <= 0.0 || s >= 2.0) return 0.0;
        if (s <= 1.0) return 0.25 * kPi;
        return std::asin(1.0 / std::sqrt(s)) - 0.25 * kPi;
    }
    if (n == 3) {
        if (s <= 0.0 || s >= 3.0) return 0.0;
        if (s <= 1.0) return 0.25 * kPi * std::sqrt(s);
        if (s <= 2.0) return 0.25 * kPi * (3.0 - 2.0 * std::sqrt(s));
        const double asin_arg = std::min(1.0, 1.0 / std::sqrt(s - 1.0));
        return 3.0 * (std::asin(asin_arg) - 0.25 * kPi) +
               std::sqrt(s) * (std::atan(std::sqrt((s - 2.0) / s)) -
                               std::atan(std::sqrt(1.0 / (s * (s - 2.0)))));
    }
    throw std::invalid_argument("pdf_closed: n must be 2 or 3");
}

}  // namespace cubeball
