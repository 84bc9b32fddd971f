#include "cubeball/series.hpp"

#include <cmath>

namespace cubeball {

QuadResult sum_series(const std::function<double(long)>& term,
                      const std::function<double(long)>& tail_bound, double tol,
                      long first_index, long budget) {
    double sum = 0.0;
    double comp = 0.0;  // Kahan compensation
    long k = first_index;
    long used = 0;
    for (; used < budget; ++k, ++used) {
        double t = term(k);
        double y = t - comp;
        double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        double bound = tail_bound(k);
        if (bound <= tol) {
            return {sum, bound, used + 1};
        }
    }
    throw SeriesError("sum_series: tolerance not reached within term budget",
                      sum, used);
}

}  // namespace cubeball
