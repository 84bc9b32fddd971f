#pragma once

#include <map>
#include <string>

#include "cubeball/volume.hpp"

namespace cubeball::detail {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrtPi = 1.7724538509055160273;

// Builds a CdfEstimate, clamping the raw value into [0,1] only when it is
// within err_est (plus a few ulps) of the boundary; a larger excursion is a
// method failure and throws.
CdfEstimate make_estimate(int n, double s, double raw, double err_est,
                          CdfMethod method,
                          std::map<std::string, double> params);

void require_dim(int n);  // n >= 1

}  // namespace cubeball::detail
