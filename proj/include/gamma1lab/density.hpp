#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "gamma1lab/family.hpp"
#include "gamma1lab/testfn.hpp"

// Assembly of the prime side of the explicit formula for the family average:
// the direct prime sum S_N, its coprime/divisible split M_off + eps_off, the
// trivial/non-trivial character split S1 + S2, the prime-square term, and the
// b >= 3 prime-power budgets.  All reported values are real (the K operator
// is applied to every lattice accumulation); every truncation carries a
// certified tail bound.

namespace g1lab::density {

struct DensityReport {
    std::uint64_t q = 0;
    int k = 0;
    double delta = 0.0;
    std::string testfn;  // test-function pair id, e.g. "fejer(1)"

    double main_term = 0.0;                     // integral of phi
    double family_size_correction_bound = 0.0;  // |integral| * |Delta(1,1) - 1|
    double s_n = 0.0;        // (1/log q) sum_p a_p K sigma(p,1)
    double p_term = 0.0;     // 2 * s_n (d_total subtracts it)
    double p2_term = 0.0;    // 2 * s_sq value
    double p2_chi_budget = 0.0;       // kappa_N allowance for the chi(p) count
    double higher_power_budget = 0.0;  // b >= 3 absolute budget
    double eps_higher_power = 0.0;     // signed prime-power diagonal extension
    double s1 = 0.0, s2 = 0.0, m_off = 0.0, eps_off = 0.0;
    double d_total = 0.0;  // main_term - p_term - p2_term

    // Certified truncation tails, itemized per component and totalled.
    double tail_s_n = 0.0, tail_m_off = 0.0, tail_eps_off = 0.0;
    double tail_s1 = 0.0, tail_s2 = 0.0, tail_p2 = 0.0, tail_eps_hp = 0.0;
    double tail_bound_total = 0.0;

    bool certified = true;    // every truncation met its tail_eps target
    bool q_is_prime = true;   // composite q accepted but flagged
    // delta > 8/3 is allowed for probing, but lies outside the range the
    // nonvanishing-kernel arithmetic covers; flagged rather than rejected.
    bool delta_warning = false;
    // The archimedean / explicit-formula remainder O_k(1/log q) is not
    // computable without the zero side; it stays an unresolved flag.
    bool archimedean_remainder_unresolved = true;

    std::uint64_t lattice_u = 0;   // shared s*t truncation for the prime sums
    std::uint64_t terms_used = 0;  // lattice points in the S_N accumulation
};

// a_n = Lambda(n)/sqrt(n) * phi_hat(log n / log q): exact zero off prime
// powers and outside the phi_hat support.
double a_coeff(std::uint64_t n, std::uint64_t q, const testfn::TestFunctionPair& pair);

// S_N = (1/log q) sum_p a_p K sum_{st<=U} (2pi/qst) e((p+1)/qst)
// V_qs(p,1;t) J_{k-1}(4pi sqrt p/qst).  One shared truncation U for every
// prime (solved against the aggregate amplitude) so the split identities
// below hold to roundoff on matched lattices.
family::PeterssonValue s_n_direct(const family::FamilyParams& params,
                                  const testfn::TestFunctionPair& pair,
                                  const family::TruncationPolicy& policy);

// (m_off, eps_off): the (p,t) = 1 restricted sum and the p | t slice after
// the change of variable t -> tp (truncated at s t' <= U/p, the exact
// complement of the shared lattice).  m_off is also recomputed as
// s_n - eps_off; the two routes must agree within combined tails.
std::pair<family::PeterssonValue, family::PeterssonValue> m_off_eps_split(
    const family::FamilyParams& params, const testfn::TestFunctionPair& pair,
    const family::TruncationPolicy& policy);

// Trivial-character part, Ramanujan-reduced: mu(t) V_qs(0,1;t)/phi(t) against
// the (p,t) = 1 prime sum.
double s1_trivial_character(const family::FamilyParams& params,
                            const testfn::TestFunctionPair& pair,
                            const family::TruncationPolicy& policy);

// Non-trivial-character double sum; equals m_off - s1 within tolerance.
double s2_nontrivial_characters(const family::FamilyParams& params,
                                const testfn::TestFunctionPair& pair,
                                const family::TruncationPolicy& policy);

// value = -(1/log q) sum_p (log p/p) phi_hat(2 log p/log q) [Delta(p^2,1) - T(p)]
// with T(p) = [p = 1 mod q] - [p = -1 mod q]; chi_budget = kappa_N *
// sum_p (log p/p)|phi_hat(2 log p/log q)| for the per-character count
// allowance kappa_N (policy.kappa_n, default 10 q^{-3/2}).
std::pair<double, double> s_sq_term(const family::FamilyParams& params,
                                    const testfn::TestFunctionPair& pair,
                                    const family::TruncationPolicy& policy);

// (1/log q) sum_{b>=3} sum_{p^b} (2 log p/p^{b/2}) |phi_hat(b log p/log q)|.
double higher_power_budget(const family::FamilyParams& params,
                           const testfn::TestFunctionPair& pair);

// Signed diagonal prime-power extension:
// (1/log q) K sum_{st<=U} (2pi mu(t)/(qst phi(t))) V_qs(0,1;t)
//   sum_{p^j, j>=2, (p,t)=1} a_{p^j} e((p^j+1)/qst) J_{k-1}(4pi p^{j/2}/qst).
double eps_higher_power_diag(const family::FamilyParams& params,
                             const testfn::TestFunctionPair& pair,
                             const family::TruncationPolicy& policy);

// Full report; d_total = main_term - 2 s_n - 2 (s_sq value), with the
// family-size, chi-count, higher-power, and archimedean budgets itemized
// separately (never folded into d_total).
DensityReport one_level_density(const family::FamilyParams& params,
                                const testfn::TestFunctionPair& pair,
                                const family::TruncationPolicy& policy);

}  // namespace g1lab::density
