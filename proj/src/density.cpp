#include <algorithm>
#include <cmath>

#include "gamma1lab/arith.hpp"
#include "gamma1lab/density.hpp"
#include "gamma1lab/lattice.hpp"

namespace g1lab::density {

namespace {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

struct PrimeSide {
    std::vector<std::uint64_t> primes;
    std::vector<double> a;  // a_p
    double amp = 0.0;       // sum |a_p| p^{(k-1)/2}
};

PrimeSide collect_primes(const family::FamilyParams& params,
                         const testfn::TestFunctionPair& pair) {
    PrimeSide ps;
    const double limit = std::exp(pair.delta() * std::log(double(params.q)));
    if (limit > 5e7) throw BudgetExceeded("density: q^delta prime range too large");
    for (std::uint32_t p : arith::sieve_primes(std::uint64_t(std::ceil(limit)) + 1)) {
        const double ap = a_coeff(p, params.q, pair);
        if (ap == 0.0) continue;
        ps.primes.push_back(p);
        ps.a.push_back(ap);
        ps.amp += std::abs(ap) * std::pow(double(p), 0.5 * double(params.k - 1));
    }
    return ps;
}

// Tail of sum_{st>U} (st)^{-k}-shaped mass (trivial-character and
// prime-power diagonal sums, where |mu(t) V/phi(t)| <= 1): d(u) <= 2 sqrt u
// gives 2 (U^{1/2-k} + U^{3/2-k}/(k-3/2)); prefactor as in sigma_tail_bound
// including the K-operator doubling.
double st_pow_tail_bound(std::uint64_t q, int k, double amp, double U) {
    const double pref = 2.0 * amp * std::pow(2.0 * M_PI, double(k)) /
                        (std::pow(double(q), double(k)) * std::tgamma(double(k)));
    return pref * 2.0 *
           (std::pow(U, 0.5 - k) + std::pow(U, 1.5 - k) / (double(k) - 1.5));
}

std::pair<std::uint64_t, bool> solve_st_pow(std::uint64_t q, int k, double amp,
                                            double eps, std::uint64_t cap) {
    if (st_pow_tail_bound(q, k, amp, double(cap)) > eps) return {cap, false};
    std::uint64_t lo = 1, hi = cap;
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (st_pow_tail_bound(q, k, amp, double(mid)) <= eps)
            hi = mid;
        else
            lo = mid + 1;
    }
    return {lo, true};
}

// Tail of the p | t slice truncated at s t' <= u_shift: the change of
// variable t -> t'p scales the t^{1-k} shape by p^{1-k}; u_shift = 0 means
// nothing was summed and the whole slice (including s = t' = 1) is bounded.
double eps_tail_bound(std::uint64_t q, int k, double amp, std::uint64_t p,
                      std::uint64_t u_shift) {
    const double scale = std::pow(double(p), 1.0 - double(k));
    if (u_shift >= 1)
        return scale * family::sigma_tail_bound(q, k, amp, double(u_shift));
    const double one_term = 2.0 * amp * std::pow(2.0 * M_PI, double(k)) /
                            (std::pow(double(q), double(k)) * std::tgamma(double(k)));
    return scale * (family::sigma_tail_bound(q, k, amp, 1.0) + one_term);
}

std::uint64_t master_u(const family::FamilyParams& params,
                       const family::TruncationPolicy& policy, const PrimeSide& ps,
                       bool& certified) {
    if (ps.primes.empty()) {
        certified = true;
        return 1;
    }
    const auto [U, cert] = family::solve_truncation(params.q, params.k, ps.amp,
                                                    policy.tail_eps, policy.st_cap);
    certified = cert;
    return U;
}

lattice::Options lattice_options(const family::FamilyParams& params,
                                 const family::TruncationPolicy& policy,
                                 std::uint64_t U) {
    return {params.q, params.k, U, policy.deterministic, policy.threads};
}

struct SnParts {
    double s_n = 0.0, tail = 0.0;
    std::uint64_t U = 1, terms = 0;
    bool certified = true;
};

SnParts compute_sn(const family::FamilyParams& params,
                   const family::TruncationPolicy& policy, const PrimeSide& ps) {
    SnParts out;
    out.U = master_u(params, policy, ps, out.certified);
    if (ps.primes.empty()) return out;
    std::vector<lattice::Pair> prs;
    prs.reserve(ps.primes.size());
    for (std::uint64_t p : ps.primes) prs.push_back({p, 1});
    const auto acc =
        lattice::sigma_lattice(lattice_options(params, policy, out.U), prs);
    const double lq = std::log(double(params.q));
    double sn = 0.0;
    for (std::size_t i = 0; i < ps.primes.size(); ++i)
        sn += ps.a[i] * family::kappa(params.k, acc[i].sum);
    out.s_n = sn / lq;
    out.terms = acc[0].terms;
    out.tail = family::sigma_tail_bound(params.q, params.k, ps.amp, double(out.U)) / lq;
    return out;
}

struct CharParts {
    double m_off = 0.0, s1 = 0.0, s2 = 0.0;
    double tail_m_off = 0.0, tail_s1 = 0.0, tail_s2 = 0.0;
    std::uint64_t U = 1;
};

CharParts compute_char(const family::FamilyParams& params,
                       const family::TruncationPolicy& policy, const PrimeSide& ps,
                       std::uint64_t u_master) {
    CharParts out;
    out.U = std::min(u_master, policy.character_st_cap);
    if (ps.primes.empty()) return out;
    std::vector<lattice::PrimeTerm> pts;
    pts.reserve(ps.primes.size());
    for (std::size_t i = 0; i < ps.primes.size(); ++i)
        pts.push_back({ps.primes[i], ps.a[i]});
    const auto cl =
        lattice::char_lattice(lattice_options(params, policy, out.U), pts);
    const double lq = std::log(double(params.q));
    out.m_off = family::kappa(params.k, cl.m_off) / lq;
    out.s1 = family::kappa(params.k, cl.s1) / lq;
    out.s2 = family::kappa(params.k, cl.s2) / lq;
    out.tail_m_off =
        family::sigma_tail_bound(params.q, params.k, ps.amp, double(out.U)) / lq;
    out.tail_s1 = st_pow_tail_bound(params.q, params.k, ps.amp, double(out.U)) / lq;
    out.tail_s2 = out.tail_m_off + out.tail_s1;
    return out;
}

struct EpsParts {
    double eps_off = 0.0, tail = 0.0;
};

EpsParts compute_eps(const family::FamilyParams& params,
                     const family::TruncationPolicy& policy, const PrimeSide& ps,
                     std::uint64_t u_master) {
    EpsParts out;
    if (ps.primes.empty()) return out;
    const double lq = std::log(double(params.q));
    const auto opt = lattice_options(params, policy, u_master);
    double eo = 0.0, teo = 0.0;
    for (std::size_t i = 0; i < ps.primes.size(); ++i) {
        const std::uint64_t p = ps.primes[i];
        const std::uint64_t u_shift = u_master / p;
        const auto e = lattice::eps_off_lattice(opt, p, u_shift);
        eo += ps.a[i] * family::kappa(params.k, e.sum);
        const double amp_p =
            std::abs(ps.a[i]) * std::pow(double(p), 0.5 * double(params.k - 1));
        teo += eps_tail_bound(params.q, params.k, amp_p, p, u_shift);
    }
    out.eps_off = eo / lq;
    out.tail = teo / lq;
    return out;
}

struct SqParts {
    double value = 0.0, chi_budget = 0.0, tail = 0.0;
    bool certified = true;
};

SqParts compute_sq(const family::FamilyParams& params,
                   const testfn::TestFunctionPair& pair,
                   const family::TruncationPolicy& policy) {
    SqParts out;
    const double lq = std::log(double(params.q));
    std::vector<std::uint64_t> primes;
    std::vector<double> w2;
    double amp2 = 0.0;
    const double limit =
        std::exp(0.5 * pair.delta() * std::log(double(params.q)));
    for (std::uint32_t p : arith::sieve_primes(std::uint64_t(std::ceil(limit)) + 1)) {
        const double ph = pair.phi_hat(2.0 * std::log(double(p)) / lq);
        if (ph == 0.0) continue;
        const double w = std::log(double(p)) / double(p) * ph;
        primes.push_back(p);
        w2.push_back(w);
        amp2 += std::abs(w) * std::pow(double(p), double(params.k - 1));
    }
    const double kap = policy.kappa_n < 0.0
                           ? 10.0 * std::pow(double(params.q), -1.5)
                           : policy.kappa_n;
    for (double w : w2) out.chi_budget += std::abs(w) * kap;
    if (primes.empty()) return out;
    const auto [U2, cert2] = family::solve_truncation(params.q, params.k, amp2,
                                                      policy.tail_eps, policy.st_cap);
    out.certified = cert2;
    std::vector<lattice::Pair> prs;
    prs.reserve(primes.size());
    for (std::uint64_t p : primes) prs.push_back({p * p, 1});
    const auto acc = lattice::sigma_lattice(lattice_options(params, policy, U2), prs);
    double v = 0.0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::uint64_t r = primes[i] % params.q;
        const double tp = (r == 1 ? 1.0 : 0.0) - (r == params.q - 1 ? 1.0 : 0.0);
        v += w2[i] * (family::kappa(params.k, acc[i].sum) - tp);
    }
    out.value = -v / lq;
    out.tail = family::sigma_tail_bound(params.q, params.k, amp2, double(U2)) / lq;
    return out;
}

struct HpParts {
    double value = 0.0, tail = 0.0;
    bool certified = true;
};

HpParts compute_eps_hp(const family::FamilyParams& params,
                       const testfn::TestFunctionPair& pair,
                       const family::TruncationPolicy& policy) {
    HpParts out;
    const double lq = std::log(double(params.q));
    std::vector<lattice::PowerTerm> powers;
    double amp = 0.0;
    const double limit = std::exp(0.5 * pair.delta() * lq);
    for (std::uint32_t p : arith::sieve_primes(std::uint64_t(std::ceil(limit)) + 1)) {
        const double lp = std::log(double(p));
        for (int j = 2;; ++j) {
            const double u = double(j) * lp / lq;
            const double ph = pair.phi_hat(u);
            if (ph == 0.0) break;  // phi_hat support is an interval around 0
            const double n = std::pow(double(p), double(j));
            const double a = lp / std::sqrt(n) * ph;
            powers.push_back({p, std::uint64_t(std::llround(n)), a});
            amp += std::abs(a) * std::pow(n, 0.5 * double(params.k - 1));
        }
    }
    if (powers.empty()) return out;
    const auto [U, cert] =
        solve_st_pow(params.q, params.k, amp, policy.tail_eps, policy.st_cap);
    out.certified = cert;
    const auto pre =
        lattice::higher_power_lattice(lattice_options(params, policy, U), powers);
    out.value = family::kappa(params.k, pre) / lq;
    out.tail = st_pow_tail_bound(params.q, params.k, amp, double(U)) / lq;
    return out;
}

}  // namespace

double a_coeff(std::uint64_t n, std::uint64_t q,
               const testfn::TestFunctionPair& pair) {
    if (n < 1 || q < 3) throw OutOfRange("a_coeff: n >= 1, q >= 3");
    const double lam = arith::von_mangoldt(n);
    if (lam == 0.0) return 0.0;
    const double u = std::log(double(n)) / std::log(double(q));
    const double ph = pair.phi_hat(u);
    if (ph == 0.0) return 0.0;
    return lam / std::sqrt(double(n)) * ph;
}

family::PeterssonValue s_n_direct(const family::FamilyParams& params,
                                  const testfn::TestFunctionPair& pair,
                                  const family::TruncationPolicy& policy) {
    const PrimeSide ps = collect_primes(params, pair);
    const SnParts sn = compute_sn(params, policy, ps);
    family::PeterssonValue out;
    out.value = sn.s_n;
    out.tail_bound = sn.tail;
    out.terms_used = sn.terms;
    out.certified = sn.certified;
    return out;
}

std::pair<family::PeterssonValue, family::PeterssonValue> m_off_eps_split(
    const family::FamilyParams& params, const testfn::TestFunctionPair& pair,
    const family::TruncationPolicy& policy) {
    const PrimeSide ps = collect_primes(params, pair);
    const SnParts sn = compute_sn(params, policy, ps);
    const CharParts ch = compute_char(params, policy, ps, sn.U);
    const EpsParts ep = compute_eps(params, policy, ps, sn.U);
    // route A (s_n - eps_off) vs route B (restricted sum): must agree
    // within the certified tails of all three quantities
    const double route_a = sn.s_n - ep.eps_off;
    const double slack = sn.tail + ch.tail_m_off + ep.tail + 1e-9;
    if (std::abs(route_a - ch.m_off) > slack)
        throw InternalError("m_off_eps_split: route disagreement beyond tails");
    family::PeterssonValue m_off, eps_off;
    m_off.value = ch.m_off;
    m_off.tail_bound = ch.tail_m_off;
    m_off.certified = ch.tail_m_off <= policy.tail_eps;
    eps_off.value = ep.eps_off;
    eps_off.tail_bound = ep.tail;
    eps_off.certified = ep.tail <= policy.tail_eps;
    return {m_off, eps_off};
}

double s1_trivial_character(const family::FamilyParams& params,
                            const testfn::TestFunctionPair& pair,
                            const family::TruncationPolicy& policy) {
    const PrimeSide ps = collect_primes(params, pair);
    bool cert = true;
    const std::uint64_t U = master_u(params, policy, ps, cert);
    return compute_char(params, policy, ps, U).s1;
}

double s2_nontrivial_characters(const family::FamilyParams& params,
                                const testfn::TestFunctionPair& pair,
                                const family::TruncationPolicy& policy) {
    const PrimeSide ps = collect_primes(params, pair);
    bool cert = true;
    const std::uint64_t U = master_u(params, policy, ps, cert);
    return compute_char(params, policy, ps, U).s2;
}

std::pair<double, double> s_sq_term(const family::FamilyParams& params,
                                    const testfn::TestFunctionPair& pair,
                                    const family::TruncationPolicy& policy) {
    const SqParts sq = compute_sq(params, pair, policy);
    return {sq.value, sq.chi_budget};
}

double higher_power_budget(const family::FamilyParams& params,
                           const testfn::TestFunctionPair& pair) {
    const double lq = std::log(double(params.q));
    double total = 0.0;
    const double limit = std::exp(pair.delta() * lq / 3.0);
    for (std::uint32_t p : arith::sieve_primes(std::uint64_t(std::ceil(limit)) + 1)) {
        const double lp = std::log(double(p));
        for (int b = 3;; ++b) {
            const double ph = pair.phi_hat(double(b) * lp / lq);
            if (ph == 0.0) break;
            total += 2.0 * lp / std::pow(double(p), 0.5 * double(b)) * std::abs(ph);
        }
    }
    return total / lq;
}

double eps_higher_power_diag(const family::FamilyParams& params,
                             const testfn::TestFunctionPair& pair,
                             const family::TruncationPolicy& policy) {
    return compute_eps_hp(params, pair, policy).value;
}

DensityReport one_level_density(const family::FamilyParams& params,
                                const testfn::TestFunctionPair& pair,
                                const family::TruncationPolicy& policy) {
    DensityReport R;
    R.q = params.q;
    R.k = params.k;
    R.delta = pair.delta();
    R.testfn = pair.id();
    R.main_term = pair.integral_phi();
    R.q_is_prime = is_prime_u64(params.q);
    R.delta_warning = pair.delta() > 8.0 / 3.0;

    const auto s11 = family::sigma_off(1, 1, params, policy);
    R.family_size_correction_bound =
        std::abs(R.main_term) * (std::abs(s11.value) + s11.tail_bound);

    const PrimeSide ps = collect_primes(params, pair);
    const SnParts sn = compute_sn(params, policy, ps);
    const CharParts ch = compute_char(params, policy, ps, sn.U);
    const EpsParts ep = compute_eps(params, policy, ps, sn.U);
    R.s_n = sn.s_n;
    R.lattice_u = sn.U;
    R.terms_used = sn.terms;
    R.tail_s_n = sn.tail;
    R.m_off = ch.m_off;
    R.s1 = ch.s1;
    R.s2 = ch.s2;
    R.tail_m_off = ch.tail_m_off;
    R.tail_s1 = ch.tail_s1;
    R.tail_s2 = ch.tail_s2;
    R.eps_off = ep.eps_off;
    R.tail_eps_off = ep.tail;
    const double slack = sn.tail + ch.tail_m_off + ep.tail + 1e-9;
    if (!ps.primes.empty() &&
        std::abs((sn.s_n - ep.eps_off) - ch.m_off) > slack)
        throw InternalError("one_level_density: split routes disagree beyond tails");

    const SqParts sq = compute_sq(params, pair, policy);
    R.p2_term = 2.0 * sq.value;
    R.p2_chi_budget = sq.chi_budget;
    R.tail_p2 = sq.tail;

    R.higher_power_budget = higher_power_budget(params, pair);
    const HpParts hp = compute_eps_hp(params, pair, policy);
    R.eps_higher_power = hp.value;
    R.tail_eps_hp = hp.tail;

    R.p_term = 2.0 * R.s_n;
    R.d_total = R.main_term - R.p_term - R.p2_term;
    R.tail_bound_total = R.tail_s_n + R.tail_m_off + R.tail_eps_off + R.tail_s1 +
                         R.tail_s2 + R.tail_p2 + R.tail_eps_hp;
    // The certification gate covers everything feeding d_total (and the
    // eps_off complement); s1/s2 are truncation-matched to m_off by design
    // and carry their own reported tails instead.
    R.certified = s11.certified && sn.certified && sq.certified && hp.certified &&
                  ep.tail <= policy.tail_eps;
    return R;
}

}  // namespace g1lab::density
