#include <cmath>

#include "gamma1lab/special.hpp"

namespace g1lab::special {

double smooth_ramp(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double g = std::exp(-1.0 / u);
    const double h = std::exp(-1.0 / (1.0 - u));
    return g / (g + h);
}

double dyadic_window(double x) {
    if (x <= 0.75 || x >= 2.0) return 0.0;
    if (x < 1.0) return smooth_ramp(4.0 * (x - 0.75));
    if (x <= 1.5) return 1.0;
    return smooth_ramp(2.0 * (2.0 - x));
}

double dyadic_partition_residual(double x) {
    if (x < 1.0) throw OutOfRange("dyadic_partition_residual: x >= 1");
    double sum = 0.0;
    // W(x / 2^j) vanishes outside x/2^j in (3/4, 2); at most two j qualify.
    int jlo = std::max(0, int(std::floor(std::log2(x / 2.0))));
    for (int j = jlo; j <= jlo + 2; ++j)
        sum += dyadic_window(x / std::ldexp(1.0, j));
    return std::fabs(sum - 1.0);
}

double mellin_eta(double y) {
    if (y <= 0.5 || y >= 4.0) return 0.0;
    if (y < 1.0) return smooth_ramp(2.0 * y - 1.0);
    if (y <= 2.0) return 1.0;
    return smooth_ramp(0.5 * (4.0 - y));
}

double plateau_window(double x) {
    if (x <= 0.5 || x >= 2.5) return 0.0;
    if (x < 1.0) return smooth_ramp(2.0 * x - 1.0);
    if (x <= 2.0) return 1.0;
    return smooth_ramp(5.0 - 2.0 * x);
}

}  // namespace g1lab::special
