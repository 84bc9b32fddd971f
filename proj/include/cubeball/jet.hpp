#pragma once

#include <vector>

namespace cubeball {

// Truncated Taylor series (jet) of a function of one variable about a fixed
// expansion point. coeff(k) stores f^(k)(x0)/k!. Arithmetic is exact
// truncated power-series arithmetic, so high-order derivatives come out with
// none of the cancellation that plagues finite differences.
class TaylorJet {
  public:
    explicit TaylorJet(int order) : c_(order + 1, 0.0) {}

    static TaylorJet constant(double value, int order);
    // x0 + (x - x0): coefficient 1 in slot 1.
    static TaylorJet variable(double x0, int order);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    double coeff(int k) const { return c_[static_cast<size_t>(k)]; }
    double& coeff(int k) { return c_[static_cast<size_t>(k)]; }

    TaylorJet operator+(const TaylorJet& o) const;
    TaylorJet operator-(const TaylorJet& o) const;
    TaylorJet operator*(const TaylorJet& o) const;  // truncated Cauchy product
    TaylorJet operator*(double a) const;
    TaylorJet operator-() const;

    /// Jet of the derivative, one order shorter.
    TaylorJet derivative() const;

  private:
    std::vector<double> c_;
};

TaylorJet jet_exp(const TaylorJet& u);
TaylorJet jet_sqrt(const TaylorJet& u);        // requires u.coeff(0) > 0
TaylorJet jet_reciprocal(const TaylorJet& u);  // requires u.coeff(0) != 0
TaylorJet jet_pow_int(const TaylorJet& u, int n);
TaylorJet jet_erf(const TaylorJet& u);

}  // namespace cubeball
