#include <algorithm>
#include <cmath>

#include "gamma1lab/special.hpp"

namespace g1lab::special {

namespace {

inline cplx integrand(const MellinProbe& pr, double v, double y) {
    const double eta = mellin_eta(y);
    if (eta == 0.0) return {0.0, 0.0};
    // phase of e(yX/j) e(sign*alpha sqrt(yX)/j) y^{iv}; amplitude eta y^{c-1}
    const double phase = 2.0 * M_PI * (y * pr.X / pr.j +
                                       pr.sign * pr.alpha * std::sqrt(y * pr.X) / pr.j) +
                         v * std::log(y);
    const double amp = eta * std::pow(y, pr.c - 1.0);
    return {amp * std::cos(phase), amp * std::sin(phase)};
}

}  // namespace

MellinValue mellin_M1(const MellinProbe& probe, double v) {
    // integrand is C_c^inf on (1/2, 4): trapezoid doubling converges
    // super-algebraically once the oscillation (~X/j + |v| cycles) resolves.
    const double a = 0.5, b = 4.0;
    std::uint64_t n = 512;
    double h = (b - a) / double(n);
    cplx total{0.0, 0.0};
    for (std::uint64_t i = 1; i < n; ++i) total += integrand(probe, v, a + h * double(i));
    cplx prev = total * h;
    int stable = 0;
    while (true) {
        // refine: add midpoints of the current grid
        cplx mids{0.0, 0.0};
        for (std::uint64_t i = 0; i < n; ++i)
            mids += integrand(probe, v, a + h * (double(i) + 0.5));
        n *= 2;
        h *= 0.5;
        total += mids;
        cplx cur = total * h;
        double diff = std::abs(cur - prev);
        double target = probe.atol + probe.rtol * std::abs(cur);
        prev = cur;
        if (diff <= target) {
            if (++stable >= 2) return {cur, diff, n};
        } else {
            stable = 0;
        }
        if (n > probe.max_nodes)
            throw QuadratureFailure("mellin_M1: no convergence within node budget");
    }
}

RegimeScan mellin_regime_scan(const MellinProbe& probe,
                              const std::vector<double>& v_grid) {
    // The phase 2pi(yX/j + sign*alpha sqrt(yX)/j) + v log y has a stationary
    // point at y0 solving y0 * 2piX/j + sign*pi*alpha sqrt(X y0)/j + v = 0;
    // it lies inside supp(eta) = (1/2, 4) exactly when |v| sits between the
    // boundary values below.  The fitted window takes margins 0.5x and 2x.
    auto v_of_y = [&](double y) {
        return std::fabs(-(2.0 * M_PI * probe.X * y / probe.j +
                           probe.sign * M_PI * probe.alpha * std::sqrt(probe.X * y) / probe.j));
    };
    const double scale = probe.X / probe.j;
    double vlo = std::min(v_of_y(0.5), v_of_y(4.0));
    double vhi = std::max(v_of_y(0.5), v_of_y(4.0));
    RegimeScan out;
    out.d1 = 0.5 * vlo / scale;
    out.c1 = 2.0 * vhi / scale;
    for (double v : v_grid) {
        MellinValue m = mellin_M1(probe, v);
        RegimeRow row;
        row.v = v;
        row.abs_m1 = std::abs(m.value);
        bool saddle = std::fabs(v) >= out.d1 * scale && std::fabs(v) <= out.c1 * scale;
        row.regime = saddle ? "saddle" : "decay";
        row.bound_ratio = saddle ? row.abs_m1 * std::sqrt(scale)
                                 : row.abs_m1 * std::pow(std::fabs(v) + scale, 2.0);
        out.rows.push_back(row);
    }
    return out;
}

}  // namespace g1lab::special
