#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "cubeball/quadrature.hpp"

namespace cubeball {

struct SeriesError : std::runtime_error {
    SeriesError(const std::string& msg, double partial_sum, long terms_used)
        : std::runtime_error(msg), partial(partial_sum), terms(terms_used) {}
    double partial;
    long terms;
};

/// Sums term(k) for k = first_index, first_index+1, ... until
/// tail_bound(k) <= tol. tail_bound(K) must bound |sum_{k>K} term(k)|.
/// Throws SeriesError (carrying the partial sum) if the budget is exhausted
/// before the bound is met. err_est is the tail bound at the stopping index.
QuadResult sum_series(const std::function<double(long)>& term,
                      const std::function<double(long)>& tail_bound, double tol,
                      long first_index = 1, long budget = 10000000L);

}  // namespace cubeball
