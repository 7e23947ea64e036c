#include <cmath>
#include <numeric>

#include "gamma1lab/arith.hpp"
#include "gamma1lab/family.hpp"
#include "gamma1lab/lattice.hpp"

namespace g1lab::family {

double kappa(int k, cplx z) {
    if (k < 1 || k % 2 == 0) throw OutOfRange("kappa: k odd >= 1");
    // i^{-k} = -i for k = 1 (mod 4), +i for k = 3 (mod 4);
    // 2 Re(-i z) = 2 Im z, 2 Re(i z) = -2 Im z.
    return (k % 4 == 1) ? 2.0 * z.imag() : -2.0 * z.imag();
}

cplx v_sum(std::uint64_t q, std::uint64_t s, std::uint64_t m, std::uint64_t n,
           std::uint64_t t) {
    if (q < 1 || s < 1 || t < 1) throw OutOfRange("v_sum: q, s, t >= 1");
    if (t == 1) return {1.0, 0.0};
    const std::uint64_t qs = (q % t) * (s % t) % t;
    const std::uint64_t mr = m % t, nr = n % t;
    cplx acc(0.0, 0.0);
    for (std::uint64_t x = 0; x < t; ++x) {
        if (std::gcd(x, t) != 1) continue;
        const std::uint64_t b = (x + qs) % t;
        if (std::gcd(b, t) != 1) continue;
        const std::uint64_t ix = arith::mod_inverse(x, t);
        const std::uint64_t ib = arith::mod_inverse(b, t);
        const std::uint64_t num = (mr * ix + (t - nr * ib % t)) % t;
        acc += arith::unit_phase(num, t);
    }
    return acc;
}

std::pair<cplx, cplx> v_sum_m_average(std::uint64_t q, std::uint64_t s,
                                      std::uint64_t t) {
    if (t == 1) return {cplx(1.0, 0.0), cplx(1.0, 0.0)};
    cplx lhs(0.0, 0.0);
    for (std::uint64_t m = 1; m < t; ++m)
        if (std::gcd(m, t) == 1) lhs += v_sum(q, s, m, 1, t);
    const cplx rhs = double(arith::mobius(t)) * v_sum(q, s, 0, 1, t);
    return {lhs, rhs};
}

double sigma_tail_bound(std::uint64_t q, int k, double amp, double U) {
    if (q < 3 || k < 3 || k % 2 == 0)
        throw OutOfRange("sigma_tail_bound: q >= 3, k odd >= 3");
    if (!(U >= 1.0) || !(amp >= 0.0))
        throw OutOfRange("sigma_tail_bound: U >= 1, amp >= 0");
    // |J_{k-1}(x)| <= (x/2)^{k-1}/(k-1)! for all x >= 0, |V| <= phi(t) <= t,
    // so each discarded term is <= (2pi)^k amp / (q^k (k-1)! s^k t^{k-1}).
    // Sum over st > U:
    //   t <= U: sum_{s > U/t} s^{-k} <= (t/U)^k + (t/U)^{k-1}/(k-1)
    //   t  > U: full zeta(k), with sum_{t>U} t^{1-k} <= U^{1-k} + U^{2-k}/(k-2)
    // giving R <= (k/(k-1) + zeta(k)/(k-2)) U^{2-k} + zeta(k) U^{1-k}.
    // The K operator at most doubles the modulus.
    const double zk = std::riemann_zeta(double(k));
    const double pref =
        2.0 * amp * std::pow(2.0 * M_PI, double(k)) /
        (std::pow(double(q), double(k)) * std::tgamma(double(k)));
    const double a = double(k) / double(k - 1) + zk / double(k - 2);
    return pref * (a * std::pow(U, 2.0 - k) + zk * std::pow(U, 1.0 - k));
}

std::pair<std::uint64_t, bool> solve_truncation(std::uint64_t q, int k, double amp,
                                                double eps, std::uint64_t st_cap) {
    if (!(eps > 0.0)) throw OutOfRange("solve_truncation: eps > 0");
    if (st_cap < 1) throw OutOfRange("solve_truncation: st_cap >= 1");
    if (sigma_tail_bound(q, k, amp, double(st_cap)) > eps) return {st_cap, false};
    std::uint64_t lo = 1, hi = st_cap;  // bound(hi) <= eps
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (sigma_tail_bound(q, k, amp, double(mid)) <= eps)
            hi = mid;
        else
            lo = mid + 1;
    }
    return {lo, true};
}

PeterssonValue sigma_off(std::uint64_t m, std::uint64_t n, const FamilyParams& params,
                         const TruncationPolicy& policy) {
    if (m < 1 || n < 1) throw OutOfRange("sigma_off: m, n >= 1");
    const double amp =
        std::pow(double(m) * double(n), 0.5 * double(params.k - 1));
    const auto [U, cert] =
        solve_truncation(params.q, params.k, amp, policy.tail_eps, policy.st_cap);
    lattice::Options opt{params.q, params.k, U, policy.deterministic,
                         policy.threads};
    const auto acc = lattice::sigma_lattice(opt, {{m, n}});
    PeterssonValue out;
    out.value = kappa(params.k, acc[0].sum);
    out.tail_bound = sigma_tail_bound(params.q, params.k, amp, double(U));
    out.terms_used = acc[0].terms;
    out.certified = cert;
    return out;
}

PeterssonValue petersson_delta(std::uint64_t m, std::uint64_t n,
                               const FamilyParams& params,
                               const TruncationPolicy& policy) {
    PeterssonValue out = sigma_off(m, n, params, policy);
    if (m == n) out.value += 1.0;
    return out;
}

std::vector<PeterssonValue> delta_grid(const FamilyParams& params,
                                       const TruncationPolicy& policy, int max_mn) {
    if (max_mn < 1) throw OutOfRange("delta_grid: max_mn >= 1");
    const double amp_max =
        std::pow(double(max_mn), double(params.k - 1));
    const auto [U, cert_max] = solve_truncation(params.q, params.k, amp_max,
                                                policy.tail_eps, policy.st_cap);
    std::vector<lattice::Pair> pairs;
    pairs.reserve(std::size_t(max_mn) * max_mn);
    for (int m = 1; m <= max_mn; ++m)
        for (int n = 1; n <= max_mn; ++n)
            pairs.push_back({std::uint64_t(m), std::uint64_t(n)});
    lattice::Options opt{params.q, params.k, U, policy.deterministic,
                         policy.threads};
    const auto acc = lattice::sigma_lattice(opt, pairs);
    std::vector<PeterssonValue> out(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const double amp = std::pow(
            double(pairs[i].m) * double(pairs[i].n), 0.5 * double(params.k - 1));
        out[i].value = kappa(params.k, acc[i].sum) +
                       (pairs[i].m == pairs[i].n ? 1.0 : 0.0);
        out[i].tail_bound = sigma_tail_bound(params.q, params.k, amp, double(U));
        out[i].terms_used = acc[i].terms;
        out[i].certified = out[i].tail_bound <= policy.tail_eps;
    }
    return out;
}

}  // namespace g1lab::family
