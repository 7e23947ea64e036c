#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "gamma1lab/errors.hpp"

namespace g1lab::family {

using cplx = std::complex<double>;

struct FamilyParams {
    std::uint64_t q;  // level / nebentypus modulus, >= 3
    int k;            // weight, odd and >= 3

    FamilyParams(std::uint64_t q_, int k_) : q(q_), k(k_) {
        if (q < 3) throw OutOfRange("FamilyParams: q >= 3");
        if (k < 3 || k % 2 == 0) throw OutOfRange("FamilyParams: k odd >= 3");
    }
};

struct TruncationPolicy {
    double tail_eps = 1e-5;             // target bound on discarded (s,t) mass
    std::uint64_t st_cap = 8192;        // hard cap on s*t
    bool deterministic = false;         // serial fixed-order summation
    std::uint64_t character_st_cap = 512;  // cap for sums needing character groups
    int threads = 0;                    // <= 0: library default
    double kappa_n = -1.0;  // per-character count allowance; < 0: auto 10 q^{-3/2}
};

struct PeterssonValue {
    double value = 0.0;       // real part after the K operator
    double tail_bound = 0.0;  // certified upper bound on the discarded tail
    std::uint64_t terms_used = 0;
    bool certified = true;    // false when st_cap bound before tail_eps reached
};

// K z = i^{-k} z + i^{k} conj(z) = 2 Re(i^{-k} z); k must be odd.
double kappa(int k, cplx z);

// V_qs(m, n; t) = sum over x mod t with (x(x+qs), t) = 1 of
//   e((m * inv(x) - n * inv(x+qs)) / t).
// Exact unit phases per term; t = 1 returns 1.  Well-defined for every
// m, n >= 0 since admissibility makes both inverses exist.
cplx v_sum(std::uint64_t q, std::uint64_t s, std::uint64_t m, std::uint64_t n,
           std::uint64_t t);

// (lhs, rhs) of the Ramanujan-type reduction
//   sum over m coprime to t of V_qs(m,1;t)  =  mu(t) V_qs(0,1;t).
std::pair<cplx, cplx> v_sum_m_average(std::uint64_t q, std::uint64_t s, std::uint64_t t);

// sigma(m,n) = K sum_{s,t} (2pi/qst) V_qs(m,n;t) e((m+n)/qst)
//              J_{k-1}(4pi sqrt(mn)/qst)
// truncated at s*t <= U with U grown until the comparison tail bound is
// <= tail_eps (or st_cap binds; then certified=false and the honest bound
// is reported).
PeterssonValue sigma_off(std::uint64_t m, std::uint64_t n, const FamilyParams& params,
                         const TruncationPolicy& policy);

// Delta(m,n) = delta(m,n) + sigma(m,n).
PeterssonValue petersson_delta(std::uint64_t m, std::uint64_t n,
                               const FamilyParams& params,
                               const TruncationPolicy& policy);

// All of Delta(m,n) for 1 <= m,n <= max_mn in one batched lattice pass
// (row-major, index (m-1)*max_mn + (n-1)).
std::vector<PeterssonValue> delta_grid(const FamilyParams& params,
                                       const TruncationPolicy& policy, int max_mn);

// Tail machinery (exposed for tests): upper bound on
// sum_{s t > U} amp * (2pi)^k/(q^k (k-1)!) * t^{1-k} s^{-k}-shaped mass,
// valid for every U >= 1 by the unconditional envelope
// |J_{k-1}(x)| <= (x/2)^{k-1}/(k-1)!.
double sigma_tail_bound(std::uint64_t q, int k, double amp, double U);
// Smallest U in [1, st_cap] with sigma_tail_bound <= eps; second = certified.
std::pair<std::uint64_t, bool> solve_truncation(std::uint64_t q, int k, double amp,
                                                double eps, std::uint64_t st_cap);

}  // namespace g1lab::family
