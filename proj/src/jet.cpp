#include "cubeball/jet.hpp"

#include <cmath>
#include <stdexcept>

namespace cubeball {

TaylorJet TaylorJet::constant(double value, int order) {
    TaylorJet j(order);
    j.coeff(0) = value;
    return j;
}

TaylorJet TaylorJet::variable(double x0, int order) {
    TaylorJet j(order);
    j.coeff(0) = x0;
    if (order >= 1) j.coeff(1) = 1.0;
    return j;
}

TaylorJet TaylorJet::operator+(const TaylorJet& o) const {
    TaylorJet r(order());
    for (int k = 0; k <= order(); ++k) r.coeff(k) = coeff(k) + o.coeff(k);
    return r;
}

TaylorJet TaylorJet::operator-(const TaylorJet& o) const {
    TaylorJet r(order());
    for (int k = 0; k <= order(); ++k) r.coeff(k) = coeff(k) - o.coeff(k);
    return r;
}

TaylorJet TaylorJet::operator*(const TaylorJet& o) const {
    TaylorJet r(order());
    for (int k = 0; k <= order(); ++k) {
        double acc = 0.0;
        for (int j = 0; j <= k; ++j) acc += coeff(j) * o.coeff(k - j);
        r.coeff(k) = acc;
    }
    return r;
}

TaylorJet TaylorJet::operator*(double a) const {
    TaylorJet r(order());
    for (int k = 0; k <= order(); ++k) r.coeff(k) = coeff(k) * a;
    return r;
}

TaylorJet TaylorJet::operator-() const { return (*this) * -1.0; }

TaylorJet TaylorJet::derivative() const {
    if (order() == 0) return TaylorJet(0);
    TaylorJet r(order() - 1);
    for (int k = 1; k <= order(); ++k) r.coeff(k - 1) = k * coeff(k);
    return r;
}

// exp: e_0 = exp(u_0), k e_k = sum_{j=1..k} j u_j e_{k-j}
TaylorJet jet_exp(const TaylorJet& u) {
    TaylorJet e(u.order());
    e.coeff(0) = std::exp(u.coeff(0));
    for (int k = 1; k <= u.order(); ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k; ++j) acc += j * u.coeff(j) * e.coeff(k - j);
        e.coeff(k) = acc / k;
    }
    return e;
}

TaylorJet jet_sqrt(const TaylorJet& u) {
    if (!(u.coeff(0) > 0))
        throw std::domain_error("jet_sqrt: leading coefficient must be positive");
    TaylorJet s(u.order());
    s.coeff(0) = std::sqrt(u.coeff(0));
    for (int k = 1; k <= u.order(); ++k) {
        double acc = u.coeff(k);
        for (int j = 1; j < k; ++j) acc -= s.coeff(j) * s.coeff(k - j);
        s.coeff(k) = acc / (2.0 * s.coeff(0));
    }
    return s;
}

TaylorJet jet_reciprocal(const TaylorJet& u) {
    if (u.coeff(0) == 0.0)
        throw std::domain_error("jet_reciprocal: leading coefficient is zero");
    TaylorJet r(u.order());
    r.coeff(0) = 1.0 / u.coeff(0);
    for (int k = 1; k <= u.order(); ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k; ++j) acc += u.coeff(j) * r.coeff(k - j);
        r.coeff(k) = -acc / u.coeff(0);
    }
    return r;
}

TaylorJet jet_pow_int(const TaylorJet& u, int n) {
    if (n < 0) throw std::invalid_argument("jet_pow_int: n must be >= 0");
    TaylorJet result = TaylorJet::constant(1.0, u.order());
    TaylorJet base = u;
    while (n > 0) {
        if (n & 1) result = result * base;
        base = base * base;
        n >>= 1;
    }
    return result;
}

// erf(u): w' = (2/sqrt(pi)) exp(-u^2) u', integrated coefficientwise.
TaylorJet jet_erf(const TaylorJet& u) {
    const double two_over_sqrt_pi = 1.1283791670955126;
    TaylorJet w(u.order());
    w.coeff(0) = std::erf(u.coeff(0));
    if (u.order() == 0) return w;
    TaylorJet g = jet_exp(-(u * u)) * two_over_sqrt_pi;
    TaylorJet du = u.derivative();  // order-1 shorter
    for (int k = 1; k <= u.order(); ++k) {
        double acc = 0.0;
        for (int j = 0; j <= k - 1 && j <= du.order(); ++j)
            acc += g.coeff(k - 1 - j) * du.coeff(j);
        w.coeff(k) = acc / k;
    }
    return w;
}

}  // namespace cubeball
