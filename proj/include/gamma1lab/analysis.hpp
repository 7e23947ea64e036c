#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "gamma1lab/family.hpp"
#include "gamma1lab/testfn.hpp"

// Empirical verification harness: decay regressions for the Petersson
// off-diagonal, windowed character-block diagnostics, the smoothed character
// prime-sum probe (observational), and the nonvanishing kernel arithmetic.

namespace g1lab::analysis {

using cplx = std::complex<double>;

struct RegressionResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<std::pair<double, double>> points;  // (log x, log y)
};

// Least squares on already-logged points; recomputable exactly from them.
RegressionResult least_squares(const std::vector<std::pair<double, double>>& points);

// Fit log y against log x; every y must be positive (all-zero or
// nonpositive data cannot be logged) else DegenerateRegression.
RegressionResult log_log_fit(const std::vector<std::pair<double, double>>& xy);

// Regression of log|Delta(m,n) - delta(m,n)| against log q over >= 4 family
// parameter sets sharing one weight k.
RegressionResult delta_decay_regression(const std::vector<family::FamilyParams>& grid,
                                        std::uint64_t m, std::uint64_t n,
                                        const family::TruncationPolicy& policy);

// Same regression on log max_{m,n <= max_mn} |Delta - delta| per q.
RegressionResult grid_decay_regression(const std::vector<family::FamilyParams>& grid,
                                       const family::TruncationPolicy& policy,
                                       int max_mn);

struct BlockSpec {
    double P, S, T;          // dyadic block centers
    std::string case_label;  // case1 | case2 | case3
};

// case1: ST >= P/q; case3: ST <= sqrt(P)/q; case2 between (margin 1).
BlockSpec make_block_spec(std::uint64_t q, double P, double S, double T);

// Windowed character-block sum over s ~ S, t ~ T, p ~ P with the prime
// weights a_p of the density pipeline; real via the K operator.  The
// display normalization is 1/(qst phi(t)) (no 2pi), so magnitude
// comparisons against the case bounds are up to that absolute constant.
double block_D(const family::FamilyParams& params,
               const testfn::TestFunctionPair& pair, const BlockSpec& spec,
               const family::TruncationPolicy& policy);

struct ProbeResult {
    cplx value{0.0, 0.0};
    double comparison_magnitude = 0.0;  // log^2(t + |Im z|), inspection only
    bool trivial_character = false;
};

// sum_p chi(p) log p psi(p/X) / p^z with psi the [1,2]-plateau window
// supported on (1/2, 5/2).  Observational: the comparison magnitude is
// reported, never asserted.  Re z must lie in (1/2 - 10/log t, 1/2 + 10/log t).
ProbeResult char_prime_sum_probe(std::uint64_t t, std::uint64_t character_index,
                                 cplx z, double X);

// sin(pi delta x)/(pi x), continuously extended to delta at x = 0.
double kernel_value(double delta, double x);

// 1 - 1/delta for delta >= 1 (share of the family that may vanish at the
// center is at most 1/delta).
double nonvanishing_bound(double delta);

}  // namespace g1lab::analysis
