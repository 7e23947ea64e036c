#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "gamma1lab/errors.hpp"

namespace g1lab::special {

using cplx = std::complex<double>;

// ---- J-Bessel ----------------------------------------------------------
//
// Two branches: the ascending power series J_nu(2x) = sum (-1)^l
// x^(2l+nu)/(l! (l+nu)!) accumulated in double-double so the alternating
// cancellation does not eat the low bits, and the standard Hankel
// asymptotic sqrt(2/(pi x)) (P cos w - Q sin w), w = x - (2nu+1)pi/4, with
// eight terms in each of P and Q.  The switch point defaults to 18 + 2 nu,
// where both branches carry comfortably more than the 1e-9 overlap the
// cross-check demands.

struct BesselEvaluator {
    int nu;
    double x_switch;
    int series_terms;

    explicit BesselEvaluator(int order)
        : nu(order), x_switch(18.0 + 2.0 * order), series_terms(72) {}
    BesselEvaluator(int order, double xs, int terms)
        : nu(order), x_switch(xs), series_terms(terms) {}

    double operator()(double x) const;
    double series(double x) const;      // power-series branch
    double asymptotic(double x) const;  // Hankel branch
};

// J_nu(x) with the default evaluator for the order.  Requires nu >= 0,
// x >= 0 (OutOfRange otherwise).
double bessel_j(int nu, double x);

// |J_nu(x)| / min(x^{-1/2}, (x/2)^nu / nu!) for x > 0; the classical bound
// says this stays below a modest constant (~1.3 observed, constant 1 in the
// normalization of the envelope).
double bessel_bound_margin(int nu, double x);

// ---- smooth dyadic window ----------------------------------------------
//
// W in C_c^inf with support [3/4, 2], W = 1 on [1, 3/2], built from the
// classical ramp B(u) = g(u)/(g(u) + g(1-u)), g(u) = exp(-1/u), so that
// W(x) + W(x/2) = 1 on [1, 3] and {W(x/2^j)}_{j>=0} partitions unity on
// x >= 1.

double smooth_ramp(double u);      // B(u): 0 for u <= 0, 1 for u >= 1
double dyadic_window(double x);    // W(x)
// |sum_{j>=0} W(x / 2^j) - 1| for x >= 1.
double dyadic_partition_residual(double x);

// Plateau window for the Mellin factor: 1 on [1, 2], supported on (1/2, 4),
// same ramp construction.
double mellin_eta(double y);

// Plateau window on [1, 2] with support (1/2, 5/2), same ramp construction
// (the smoothing weight of the character prime-sum probe).
double plateau_window(double x);

// ---- truncated Mellin transform M1 --------------------------------------
//
//   M1(c + iv) = int_0^inf eta(y) e(yX/j) e(sign * alpha sqrt(yX)/j)
//                y^(c-1+iv) dy
//
// evaluated by trapezoid doubling on [1/2, 4] (the integrand is smooth and
// compactly supported, so the rule converges super-algebraically once the
// oscillation is resolved).

struct MellinProbe {
    double X = 1.0;
    double j = 1.0;
    double alpha = 0.0;
    int sign = +1;   // sign of the alpha sqrt(yX)/j phase term
    double c = 1.0;  // real part of s
    std::uint64_t max_nodes = std::uint64_t(1) << 22;
    double atol = 1e-12;
    double rtol = 1e-11;
};

struct MellinValue {
    cplx value;
    double error_estimate;
    std::uint64_t nodes;
};

// Throws QuadratureFailure if doubling does not stabilize within max_nodes.
MellinValue mellin_M1(const MellinProbe& probe, double v);

struct RegimeRow {
    double v;
    double abs_m1;
    std::string regime;  // "saddle" or "decay"
    double bound_ratio;  // |M1| sqrt(X/j) in band, |M1| (|v|+X/j)^2 outside
};

struct RegimeScan {
    double d1, c1;  // fitted saddle-window constants (units of X/j)
    std::vector<RegimeRow> rows;
};

// Labels each |v| against the window where the phase has a stationary point
// inside the support of eta (computed from the probe, margins 0.5x / 2x).
RegimeScan mellin_regime_scan(const MellinProbe& probe,
                              const std::vector<double>& v_grid);

}  // namespace g1lab::special
