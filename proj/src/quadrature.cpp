#include "cubeball/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace cubeball {

namespace {

// Kronrod 15 abscissae on [0,1] half-interval plus weights, and the embedded
// Gauss 7 weights on the odd Kronrod nodes (QUADPACK dqk15 constants).
const double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
const double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
const double kWg[4] = {0.129484966168870, 0.279705391489277,
                       0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b;
    double value;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b,
                 long& evals) {
    const double h = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double resg = 0.0, resk = 0.0;
    for (int i = 0; i < 8; ++i) {
        double fsum;
        if (i == 7) {
            fsum = f(mid);
            ++evals;
        } else {
            fsum = f(mid - h * kXgk[i]) + f(mid + h * kXgk[i]);
            evals += 2;
        }
        resk += kWgk[i] * fsum;
        if (i % 2 == 1) resg += kWg[i / 2] * fsum;
    }
    resk *= h;
    resg *= h;
    return {a, b, resk, std::abs(resk - resg)};
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, const QuadOptions& opts) {
    if (!(b > a)) {
        if (b == a) return {0.0, 0.0, 0};
        throw std::invalid_argument("integrate_adaptive: requires a <= b");
    }
    if (!(opts.tol > 0))
        throw std::invalid_argument("integrate_adaptive: tol must be positive");

    // Endpoint substitution t = a + (b-a) u^2 turns log or sqrt endpoint
    // singularities into bounded integrands: recurse on the transformed
    // problem with the flag cleared.
    if (opts.singular_lo || opts.singular_hi) {
        QuadOptions inner = opts;
        inner.singular_lo = inner.singular_hi = false;
        if (opts.singular_lo && opts.singular_hi) {
            double mid = 0.5 * (a + b);
            // split, then one substitution per side
            auto pts = opts.breakpoints;
            QuadOptions lo_opts = inner, hi_opts = inner;
            lo_opts.tol = hi_opts.tol = 0.5 * opts.tol;
            lo_opts.singular_lo = true;
            hi_opts.singular_hi = true;
            lo_opts.breakpoints.clear();
            hi_opts.breakpoints.clear();
            for (double p : pts) {
                if (p < mid)
                    lo_opts.breakpoints.push_back(p);
                else if (p > mid)
                    hi_opts.breakpoints.push_back(p);
            }
            QuadResult lo = integrate_adaptive(f, a, mid, lo_opts);
            QuadResult hi = integrate_adaptive(f, mid, b, hi_opts);
            return {lo.value + hi.value, lo.err_est + hi.err_est,
                    lo.evaluations + hi.evaluations};
        }
        const double len = b - a;
        std::function<double(double)> g;
        if (opts.singular_lo)
            g = [&f, a, len](double u) { return f(a + len * u * u) * 2.0 * len * u; };
        else
            g = [&f, b, len](double u) { return f(b - len * u * u) * 2.0 * len * u; };
        // breakpoints map through the substitution
        for (double& p : inner.breakpoints) {
            double t = opts.singular_lo ? (p - a) / len : (b - p) / len;
            p = std::sqrt(std::clamp(t, 0.0, 1.0));
        }
        return integrate_adaptive(g, 0.0, 1.0, inner);
    }

    // initial panels split at breakpoints
    std::vector<double> edges{a};
    std::vector<double> bp = opts.breakpoints;
    std::sort(bp.begin(), bp.end());
    for (double p : bp)
        if (p > a && p < b && p > edges.back()) edges.push_back(p);
    edges.push_back(b);

    long evals = 0;
    std::priority_queue<Panel> heap;
    double total = 0.0, err = 0.0;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        Panel p = eval_panel(f, edges[i], edges[i + 1], evals);
        total += p.value;
        err += p.err;
        heap.push(p);
    }

    int panels = static_cast<int>(edges.size()) - 1;
    while (err > opts.tol && panels < opts.max_panels) {
        Panel worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at rounding resolution; keep its estimate
            err = worst.err;
            for (std::priority_queue<Panel> rest = heap; !rest.empty();
                 rest.pop())
                err += rest.top().err;
            heap.push(worst);
            break;
        }
        Panel left = eval_panel(f, worst.a, mid, evals);
        Panel right = eval_panel(f, mid, worst.b, evals);
        total += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        panels += 1;
    }

    if (err > opts.tol && panels >= opts.max_panels)
        throw QuadratureError(
            "integrate_adaptive: panel budget exhausted before tolerance",
            {total, err, evals});
    return {total, std::max(err, 0.0), evals};
}

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, const std::vector<double>& breakpoints,
                              double tol) {
    QuadOptions opts;
    opts.tol = tol;
    opts.breakpoints = breakpoints;
    return integrate_adaptive(f, a, b, opts);
}

}  // namespace cubeball
