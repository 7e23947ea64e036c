#include <cmath>
#include <limits>

#include "gamma1lab/special.hpp"

namespace g1lab::special {

namespace {

// Minimal double-double arithmetic (error-free transforms via fma), enough
// to run the alternating Bessel series without losing the low half of the
// answer to cancellation.
struct dd {
    double hi, lo;
};

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    return {p, err};
}

inline dd dd_add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    double lo = s.lo + (a.lo + b.lo);
    dd r = two_sum(s.hi, lo);
    return r;
}

inline dd dd_mul_d(dd a, double b) {
    dd p = two_prod(a.hi, b);
    p.lo = std::fma(a.lo, b, p.lo);
    dd r = two_sum(p.hi, p.lo);
    return r;
}

inline dd dd_div_d(dd a, double b) {
    double q1 = a.hi / b;
    dd p = two_prod(q1, b);
    double r = ((a.hi - p.hi) - p.lo) + a.lo;
    double q2 = r / b;
    return two_sum(q1, q2);
}

}  // namespace

double BesselEvaluator::series(double x) const {
    if (x == 0.0) return nu == 0 ? 1.0 : 0.0;
    const double h = 0.5 * x;
    // term_0 = h^nu / nu! in double-double.
    dd term{1.0, 0.0};
    for (int i = 1; i <= nu; ++i) term = dd_div_d(dd_mul_d(term, h), double(i));
    dd acc = term;
    const double h2 = h * h;
    double peak = std::fabs(term.hi);
    for (int l = 1; l < series_terms; ++l) {
        term = dd_mul_d(term, -h2);
        term = dd_div_d(term, double(l) * double(l + nu));
        acc = dd_add(acc, term);
        double at = std::fabs(term.hi);
        if (at > peak) peak = at;
        if (at < 1e-24 * peak) break;
    }
    return acc.hi + acc.lo;
}

double BesselEvaluator::asymptotic(double x) const {
    // a_j(nu) = prod_{i=1..j} (4nu^2 - (2i-1)^2) / (j! 8^j); eight terms in
    // each of the cosine (even j) and sine (odd j) series.
    const double mu = 4.0 * double(nu) * double(nu);
    double a[16];
    a[0] = 1.0;
    for (int j = 1; j < 16; ++j) {
        double odd = 2.0 * j - 1.0;
        a[j] = a[j - 1] * (mu - odd * odd) / (8.0 * j);
    }
    const double ix = 1.0 / x;
    const double ix2 = ix * ix;
    // Horner in 1/x^2 with alternating signs: P = sum (-1)^i a_{2i} x^{-2i},
    // Q = sum (-1)^i a_{2i+1} x^{-(2i+1)}.
    double p = 0.0, q = 0.0;
    for (int i = 7; i >= 0; --i) {
        p = a[2 * i] - ix2 * p;
        q = a[2 * i + 1] - ix2 * q;
    }
    q *= ix;
    const double omega = x - (2.0 * nu + 1.0) * (M_PI / 4.0);
    return std::sqrt(2.0 / (M_PI * x)) *
           (std::cos(omega) * p - std::sin(omega) * q);
}

double BesselEvaluator::operator()(double x) const {
    if (x < 0.0 || nu < 0) throw OutOfRange("bessel: need nu >= 0, x >= 0");
    return x < x_switch ? series(x) : asymptotic(x);
}

double bessel_j(int nu, double x) { return BesselEvaluator(nu)(x); }

double bessel_bound_margin(int nu, double x) {
    if (x <= 0.0 || nu < 0) throw OutOfRange("bessel_bound_margin: x > 0");
    const double j = bessel_j(nu, x);
    // envelope = min(x^{-1/2}, (x/2)^nu / nu!), computed in log space so
    // large orders cannot underflow the comparison.
    double log_small = nu * std::log(0.5 * x) - std::lgamma(double(nu) + 1.0);
    double log_env = std::min(-0.5 * std::log(x), log_small);
    double env = std::exp(log_env);
    if (env == 0.0) {
        if (j == 0.0) return 0.0;
        throw InternalError("bessel_bound_margin: envelope underflow");
    }
    return std::fabs(j) / env;
}

}  // namespace g1lab::special
