#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "gamma1lab/errors.hpp"

// The (s,t)-lattice accumulation kernels behind every Petersson-type sum.
// All kernels here return pre-K complex accumulations; callers apply the K
// operator (and any 1/log q normalization).  Parallel runs partition by t
// into per-t partials and reduce them in ascending t order with compensated
// summation, so serial and parallel results are bit-identical.

namespace g1lab::lattice {

using cplx = std::complex<double>;

struct Options {
    std::uint64_t q;
    int k;
    std::uint64_t U;          // include every (s,t) with s*t <= U
    bool deterministic = false;  // force the serial path
    int threads = 0;             // <= 0: OpenMP default
};

struct Pair {
    std::uint64_t m, n;
};

struct PairAccum {
    cplx sum{0.0, 0.0};
    std::uint64_t terms = 0;  // lattice points contributing to this pair
};

// Batched: for each pair, sum_{st<=U} (2pi/qst) V_qs(m,n;t) e((m+n)/qst)
// J_{k-1}(4pi sqrt(mn)/qst).
std::vector<PairAccum> sigma_lattice(const Options& opt, const std::vector<Pair>& pairs);

struct PrimeTerm {
    std::uint64_t p;
    double a;  // real weight, e.g. a_p = (log p / sqrt p) phi_hat(log p / log q)
};

struct CharLatticeResult {
    cplx m_off{0.0, 0.0};  // sum with V(p,1;t), restricted to (p,t)=1
    cplx s1{0.0, 0.0};     // trivial-character part, mu(t) V(0,1;t)/phi(t) form
    cplx s2{0.0, 0.0};     // non-trivial characters via character-group tables
    std::uint64_t terms = 0;
};

// Shared lattice for the prime sums: per (s,t) builds the unit-footprint
// table V[m] = V_qs(m,1;t) for all units m, then accumulates
//   m_off: (2pi/qst) sum_{(p,t)=1} a_p w_p V[p mod t]
//   s1:    (2pi/qst) (mu(t)/phi(t)) V[0-average] sum_{(p,t)=1} a_p w_p
//   s2:    (2pi/(qst phi(t))) sum_{chi != chi0} G(chi) P(chi)
// with w_p = e((p+1)/qst) J_{k-1}(4pi sqrt p/qst), G(chi) = sum*_m
// conj(chi(m)) V[m], P(chi) = sum_{(p,t)=1} chi(p) a_p w_p.  Finite
// orthogonality makes s1 + s2 = m_off up to roundoff on the same lattice.
CharLatticeResult char_lattice(const Options& opt, const std::vector<PrimeTerm>& primes);

// The p | t slice of the (p,1) lattice after the change of variable
// t -> t'p: sum over s*t' <= U_shift of the term at modulus t'p.  Together
// with the (p,t)=1 restriction this reassembles the full (p,1) sum when
// U_shift = floor(U / p).
PairAccum eps_off_lattice(const Options& opt, std::uint64_t p, std::uint64_t u_shift);

struct PowerTerm {
    std::uint64_t p;  // base prime (for the (p,t)=1 restriction)
    std::uint64_t n;  // p^j, j >= 2
    double a;         // weight
};

// sum_{st<=U} (2pi mu(t)/(qst phi(t))) V_qs(0,1;t)
//   sum_{(p,t)=1} a * e((n+1)/qst) J_{k-1}(4pi sqrt n/qst).
cplx higher_power_lattice(const Options& opt, const std::vector<PowerTerm>& powers);

struct BlockJob {
    std::uint64_t q;
    int k;
    double P, S, T;  // dyadic block centers
    std::vector<PrimeTerm> primes;  // weights a_p WITHOUT the prime window
};

// Windowed block sum (headline diagnostic display):
//   sum_{s,t} (1/(qst phi(t))) X(s/S) Y(t/T) sum*_m V_qs(m,1;t)
//   sum_{chi != chi0} conj(chi(m)) sum_p chi(p) a_p U(p/P) e((p+1)/qst)
//   J_{k-1}(4pi sqrt p/qst)
// with X = Y = U = the smooth dyadic window; s,t range over the window
// supports.  Pre-K complex value.
cplx block_lattice(const BlockJob& job);

// Per-(s,t) inner value of the block sum (test hook; exact same term the
// block kernel accumulates, including windows and normalization).
cplx block_term(const BlockJob& job, std::uint64_t s, std::uint64_t t);

// Guard for table construction (character groups, twiddles): largest t a
// kernel may touch before throwing BudgetExceeded.
inline constexpr std::uint64_t t_table_budget = 1u << 21;

}  // namespace g1lab::lattice
