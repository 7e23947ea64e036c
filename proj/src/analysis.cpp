#include <algorithm>
#include <cmath>

#include "gamma1lab/analysis.hpp"
#include "gamma1lab/arith.hpp"
#include "gamma1lab/density.hpp"
#include "gamma1lab/lattice.hpp"
#include "gamma1lab/special.hpp"

namespace g1lab::analysis {

RegressionResult least_squares(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2)
        throw DegenerateRegression("least_squares: need >= 2 points");
    const double n = double(points.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : points) {
        sx += x;
        sy += y;
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (sxx == 0.0) throw DegenerateRegression("least_squares: zero x-variance");
    RegressionResult R;
    R.slope = sxy / sxx;
    R.intercept = my - R.slope * mx;
    R.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    R.points = points;
    return R;
}

RegressionResult log_log_fit(const std::vector<std::pair<double, double>>& xy) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(xy.size());
    for (const auto& [x, y] : xy) {
        if (!(x > 0.0) || !(y > 0.0))
            throw DegenerateRegression("log_log_fit: nonpositive data");
        pts.emplace_back(std::log(x), std::log(y));
    }
    return least_squares(pts);
}

RegressionResult delta_decay_regression(const std::vector<family::FamilyParams>& grid,
                                        std::uint64_t m, std::uint64_t n,
                                        const family::TruncationPolicy& policy) {
    if (grid.size() < 4)
        throw OutOfRange("delta_decay_regression: need >= 4 values of q");
    for (const auto& p : grid)
        if (p.k != grid.front().k)
            throw OutOfRange("delta_decay_regression: fixed k across the grid");
    std::vector<std::pair<double, double>> xy;
    xy.reserve(grid.size());
    for (const auto& params : grid) {
        const auto pv = family::sigma_off(m, n, params, policy);
        xy.emplace_back(double(params.q), std::abs(pv.value));
    }
    return log_log_fit(xy);
}

RegressionResult grid_decay_regression(const std::vector<family::FamilyParams>& grid,
                                       const family::TruncationPolicy& policy,
                                       int max_mn) {
    if (grid.size() < 4)
        throw OutOfRange("grid_decay_regression: need >= 4 values of q");
    std::vector<std::pair<double, double>> xy;
    xy.reserve(grid.size());
    for (const auto& params : grid) {
        const auto dg = family::delta_grid(params, policy, max_mn);
        double worst = 0.0;
        for (int m = 1; m <= max_mn; ++m)
            for (int n = 1; n <= max_mn; ++n) {
                const double d = m == n ? 1.0 : 0.0;
                worst = std::max(
                    worst,
                    std::abs(dg[std::size_t(m - 1) * max_mn + (n - 1)].value - d));
            }
        xy.emplace_back(double(params.q), worst);
    }
    return log_log_fit(xy);
}

BlockSpec make_block_spec(std::uint64_t q, double P, double S, double T) {
    if (!(P > 0.0) || !(S > 0.0) || !(T > 0.0) || q < 3)
        throw OutOfRange("make_block_spec: positive centers, q >= 3");
    BlockSpec spec{P, S, T, "case2"};
    const double st = S * T;
    if (st >= P / double(q))
        spec.case_label = "case1";
    else if (st <= std::sqrt(P) / double(q))
        spec.case_label = "case3";
    return spec;
}

double block_D(const family::FamilyParams& params,
               const testfn::TestFunctionPair& pair, const BlockSpec& spec,
               const family::TruncationPolicy& policy) {
    const double qd = std::exp(pair.delta() * std::log(double(params.q)));
    if (!(spec.P < qd)) throw OutOfRange("block_D: P >= q^delta");
    lattice::BlockJob job{params.q, params.k, spec.P, spec.S, spec.T, {}};
    const std::uint64_t pmax = std::uint64_t(std::ceil(2.0 * spec.P));
    for (std::uint32_t p : arith::sieve_primes(pmax + 1)) {
        const double a = density::a_coeff(p, params.q, pair);
        if (a != 0.0) job.primes.push_back({p, a});
    }
    (void)policy;  // block ranges are finite; budget guards live in the kernel
    return family::kappa(params.k, lattice::block_lattice(job));
}

ProbeResult char_prime_sum_probe(std::uint64_t t, std::uint64_t character_index,
                                 cplx z, double X) {
    if (t < 2) throw OutOfRange("char_prime_sum_probe: t >= 2");
    if (!(X > 0.0)) throw OutOfRange("char_prime_sum_probe: X > 0");
    const double band = 10.0 / std::log(double(t));
    if (!(z.real() > 0.5 - band) || !(z.real() < 0.5 + band))
        throw OutOfRange("char_prime_sum_probe: Re z outside the probe band");
    const arith::CharacterGroup G(t);
    if (character_index >= G.order())
        throw OutOfRange("char_prime_sum_probe: bad character index");
    ProbeResult out;
    out.trivial_character = G.is_trivial(character_index);
    out.comparison_magnitude =
        std::pow(std::log(double(t) + std::abs(z.imag())), 2.0);
    const double pmax = 2.5 * X;
    if (pmax < 2.0) return out;
    for (std::uint32_t p : arith::sieve_primes(std::uint64_t(std::ceil(pmax)) + 1)) {
        const double psi = special::plateau_window(double(p) / X);
        if (psi == 0.0) continue;
        const double lp = std::log(double(p));
        out.value += G.value(character_index, p) * lp * psi * std::exp(-z * lp);
    }
    return out;
}

double kernel_value(double delta, double x) {
    if (!(delta > 0.0)) throw OutOfRange("kernel_value: delta > 0");
    if (x == 0.0) return delta;
    return std::sin(M_PI * delta * x) / (M_PI * x);
}

double nonvanishing_bound(double delta) {
    if (!(delta >= 1.0)) throw OutOfRange("nonvanishing_bound: delta >= 1");
    return 1.0 - 1.0 / delta;
}

}  // namespace g1lab::analysis
