#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gamma1lab/arith.hpp"
#include "gamma1lab/lattice.hpp"
#include "gamma1lab/special.hpp"

namespace g1lab::lattice {

namespace {

constexpr double kTwoPi = 6.28318530717958647692528676656;

// Barrett reduction for a fixed modulus d < 2^32, applied to 64-bit
// products.  q-estimate may be low by a couple of units; the loop fixes up.
struct FastMod {
    std::uint64_t d = 2, m = ~std::uint64_t(0) / 2;
    void set(std::uint64_t dd) {
        d = dd;
        m = ~std::uint64_t(0) / dd;
    }
    std::uint64_t red(std::uint64_t x) const {
        std::uint64_t q = std::uint64_t((__uint128_t(x) * m) >> 64);
        std::uint64_t r = x - q * d;
        while (r >= d) r -= d;
        return r;
    }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return red(a * b); }
};

void factorize_distinct(std::uint64_t n, std::vector<std::uint32_t>& pf, int& mob) {
    pf.clear();
    mob = 1;
    std::uint64_t m = n;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d) continue;
        pf.push_back(std::uint32_t(d));
        int e = 0;
        while (m % d == 0) {
            m /= d;
            ++e;
        }
        mob = (e > 1) ? 0 : -mob;
    }
    if (m > 1) {
        pf.push_back(std::uint32_t(m));
        mob = -mob;
    }
}

// Per-modulus tables, rebuilt in place per t (buffers reused across t).
struct TT {
    std::uint64_t t = 0;
    FastMod fm;
    std::vector<std::uint8_t> is_unit;
    std::vector<std::uint32_t> inv;
    std::vector<std::uint32_t> units;
    std::vector<std::uint64_t> pref;
    std::vector<cplx> tw;  // e(j/t)
    std::vector<std::uint32_t> pf;
    int mobius = 1;
    std::uint64_t phi = 0;
    // kernel scratch
    std::vector<cplx> vacc, f, V, wv;
    std::vector<std::uint64_t> mr, nr;
    std::vector<std::uint32_t> pr;
    std::vector<std::uint8_t> skip;
};

void build_tt(std::uint64_t t, TT& T) {  // requires t >= 2
    T.t = t;
    T.fm.set(t);
    factorize_distinct(t, T.pf, T.mobius);
    T.is_unit.assign(t, 1);
    T.is_unit[0] = 0;
    for (std::uint32_t p : T.pf)
        for (std::uint64_t x = 0; x < t; x += p) T.is_unit[x] = 0;
    T.units.clear();
    for (std::uint64_t x = 1; x < t; ++x)
        if (T.is_unit[x]) T.units.push_back(std::uint32_t(x));
    T.phi = T.units.size();
    // batch inversion over the unit list
    T.inv.assign(t, 0);
    T.pref.resize(T.units.size());
    std::uint64_t run = 1;
    for (std::size_t i = 0; i < T.units.size(); ++i) {
        T.pref[i] = run;
        run = T.fm.mul(run, T.units[i]);
    }
    std::uint64_t ir = arith::mod_inverse(run, t);
    for (std::size_t i = T.units.size(); i-- > 0;) {
        T.inv[T.units[i]] = std::uint32_t(T.fm.mul(ir, T.pref[i]));
        ir = T.fm.mul(ir, T.units[i]);
    }
    // twiddles, re-anchored on exact rational phases every 64 steps
    T.tw.resize(t);
    const cplx step = arith::unit_phase(1, t);
    for (std::uint64_t j0 = 0; j0 < t; j0 += 64) {
        cplx z = arith::unit_phase(j0, t);
        const std::uint64_t jend = std::min<std::uint64_t>(j0 + 64, t);
        for (std::uint64_t j = j0; j < jend; ++j) {
            T.tw[j] = z;
            z *= step;
        }
    }
}

// J_{nu} tuned for the lattice's small arguments; falls back to the general
// evaluator past the plain-series comfort zone.
struct BesselK {
    int nu;
    double inv_fact;
    special::BesselEvaluator ev;
    explicit BesselK(int nu_) : nu(nu_), inv_fact(1.0), ev(nu_) {
        for (int i = 2; i <= nu_; ++i) inv_fact /= double(i);
    }
    double operator()(double x) const {
        if (x >= 2.0) return ev(x);
        if (x == 0.0) return nu == 0 ? 1.0 : 0.0;
        const double h = 0.5 * x, mh2 = -(h * h);
        double term = inv_fact;
        for (int i = 0; i < nu; ++i) term *= h;
        double acc = term;
        for (int l = 1; l < 26; ++l) {
            term *= mh2 / (double(l) * double(l + nu));
            acc += term;
            if (std::fabs(term) < 1e-20 * std::fabs(acc)) break;
        }
        return acc;
    }
};

// e(msum/qst) * J_{k-1}(sq4pi/qst)   (no amplitude prefactor)
inline cplx phase_bessel(double qst, double msum, double sq4pi, const BesselK& J) {
    const double amp = J(sq4pi / qst);
    const double th = kTwoPi * (msum / qst);
    return {amp * std::cos(th), amp * std::sin(th)};
}

// (2pi/qst) e(msum/qst) J_{k-1}(sq4pi/qst)
inline cplx lattice_weight(double qst, double msum, double sq4pi, const BesselK& J) {
    return (kTwoPi / qst) * phase_bessel(qst, msum, sq4pi, J);
}

struct KahanC {
    double sr = 0, cr = 0, si = 0, ci = 0;
    void add(cplx v) {
        double yr = v.real() - cr, tr = sr + yr;
        cr = (tr - sr) - yr;
        sr = tr;
        double yi = v.imag() - ci, ti = si + yi;
        ci = (ti - si) - yi;
        si = ti;
    }
    cplx get() const { return {sr, si}; }
};

int resolve_threads(const Options& opt) {
    if (opt.deterministic) return 1;
    if (opt.threads > 0) return opt.threads;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// All s-terms of one modulus t for the batched pair kernel.
void sigma_t_slice(const Options& opt, const std::vector<Pair>& pairs,
                   const double* msum, const double* sq4pi, const BesselK& J,
                   std::uint64_t t, TT& T, cplx* out, std::uint64_t& terms) {
    const std::size_t np = pairs.size();
    const std::uint64_t smax = opt.U / t;
    const double dq = double(opt.q);
    terms += smax;
    if (t == 1) {  // V = 1 for every pair
        for (std::uint64_t s = 1; s <= smax; ++s) {
            const double qst = dq * double(s);
            for (std::size_t i = 0; i < np; ++i)
                out[i] += lattice_weight(qst, msum[i], sq4pi[i], J);
        }
        return;
    }
    build_tt(t, T);
    T.mr.resize(np);
    T.nr.resize(np);
    bool all_n1 = true;
    std::uint64_t maxr = 0;
    for (std::size_t i = 0; i < np; ++i) {
        T.mr[i] = pairs[i].m % t;
        T.nr[i] = pairs[i].n % t;
        all_n1 = all_n1 && pairs[i].n == 1;
        maxr = std::max({maxr, T.mr[i], T.nr[i]});
    }
    const bool small_r = maxr <= 48;
    T.vacc.resize(np);
    const std::uint64_t cstep = opt.q % t;
    std::uint64_t cs = 0;
    for (std::uint64_t s = 1; s <= smax; ++s) {
        cs += cstep;
        if (cs >= t) cs -= t;
        std::fill(T.vacc.begin(), T.vacc.end(), cplx(0.0, 0.0));
        if (all_n1) {
            for (std::uint32_t x : T.units) {
                std::uint64_t b = x + cs;
                if (b >= t) b -= t;
                if (!T.is_unit[b]) continue;
                const std::uint64_t a = T.inv[x];
                const std::uint64_t shift = t - T.inv[b];
                for (std::size_t i = 0; i < np; ++i) {
                    std::uint64_t idx = T.fm.mul(T.mr[i], a) + shift;
                    if (idx >= t) idx -= t;
                    T.vacc[i] += T.tw[idx];
                }
            }
        } else if (small_r) {
            std::uint64_t am[49], bm[49];
            for (std::uint32_t x : T.units) {
                std::uint64_t b = x + cs;
                if (b >= t) b -= t;
                if (!T.is_unit[b]) continue;
                const std::uint64_t a = T.inv[x], ib = T.inv[b];
                am[0] = 0;
                bm[0] = 0;
                for (std::uint64_t j = 1; j <= maxr; ++j) {
                    am[j] = am[j - 1] + a;
                    if (am[j] >= t) am[j] -= t;
                    bm[j] = bm[j - 1] + ib;
                    if (bm[j] >= t) bm[j] -= t;
                }
                for (std::size_t i = 0; i < np; ++i) {
                    std::uint64_t idx = am[T.mr[i]] + t - bm[T.nr[i]];
                    if (idx >= t) idx -= t;
                    T.vacc[i] += T.tw[idx];
                }
            }
        } else {
            for (std::uint32_t x : T.units) {
                std::uint64_t b = x + cs;
                if (b >= t) b -= t;
                if (!T.is_unit[b]) continue;
                const std::uint64_t a = T.inv[x], ib = T.inv[b];
                for (std::size_t i = 0; i < np; ++i) {
                    std::uint64_t idx = T.fm.mul(T.mr[i], a) + t - T.fm.mul(T.nr[i], ib);
                    if (idx >= t) idx -= t;
                    T.vacc[i] += T.tw[idx];
                }
            }
        }
        const double qst = dq * double(s) * double(t);
        for (std::size_t i = 0; i < np; ++i)
            out[i] += lattice_weight(qst, msum[i], sq4pi[i], J) * T.vacc[i];
    }
}

}  // namespace

std::vector<PairAccum> sigma_lattice(const Options& opt, const std::vector<Pair>& pairs) {
    const std::size_t np = pairs.size();
    std::vector<PairAccum> out(np);
    if (np == 0 || opt.U == 0) return out;
    if (opt.q < 3 || opt.k < 3 || opt.k % 2 == 0)
        throw OutOfRange("sigma_lattice: need q >= 3, k odd >= 3");
    for (const Pair& pr : pairs)
        if (pr.m == 0 || pr.n == 0) throw OutOfRange("sigma_lattice: m,n >= 1");
    if (opt.U > t_table_budget)
        throw BudgetExceeded("sigma_lattice: U = " + std::to_string(opt.U) +
                             " beyond table budget");
    if (opt.U * np > (std::uint64_t(1) << 23))
        throw BudgetExceeded("sigma_lattice: partial-accumulator memory");

    std::vector<double> msum(np), sq4pi(np);
    for (std::size_t i = 0; i < np; ++i) {
        msum[i] = double(pairs[i].m) + double(pairs[i].n);
        sq4pi[i] = 2.0 * kTwoPi * std::sqrt(double(pairs[i].m) * double(pairs[i].n));
    }
    const BesselK J(opt.k - 1);
    std::vector<cplx> partial(opt.U * np, cplx(0.0, 0.0));
    std::vector<std::uint64_t> tcount(opt.U, 0);
    const int nthreads = resolve_threads(opt);
#ifdef _OPENMP
    if (nthreads > 1) {
#pragma omp parallel num_threads(nthreads)
        {
            TT T;
#pragma omp for schedule(dynamic, 8)
            for (std::int64_t t = 1; t <= std::int64_t(opt.U); ++t)
                sigma_t_slice(opt, pairs, msum.data(), sq4pi.data(), J,
                              std::uint64_t(t), T, &partial[(t - 1) * np],
                              tcount[t - 1]);
        }
    } else
#endif
    {
        TT T;
        for (std::uint64_t t = 1; t <= opt.U; ++t)
            sigma_t_slice(opt, pairs, msum.data(), sq4pi.data(), J, t, T,
                          &partial[(t - 1) * np], tcount[t - 1]);
    }
    // ascending-t compensated reduction: bit-identical serial or parallel
    std::vector<KahanC> red(np);
    std::uint64_t terms = 0;
    for (std::uint64_t t = 1; t <= opt.U; ++t) {
        const cplx* row = &partial[(t - 1) * np];
        for (std::size_t i = 0; i < np; ++i) red[i].add(row[i]);
        terms += tcount[t - 1];
    }
    for (std::size_t i = 0; i < np; ++i) out[i] = {red[i].get(), terms};
    return out;
}

namespace {

struct CharSlice {
    cplx m_off{0.0, 0.0}, s1{0.0, 0.0}, s2{0.0, 0.0};
    std::uint64_t terms = 0;
};

void char_t_slice(const Options& opt, const std::vector<PrimeTerm>& primes,
                  const double* pmsum, const double* psq, const BesselK& J,
                  std::uint64_t t, TT& T, CharSlice& out) {
    const std::size_t nP = primes.size();
    const std::uint64_t smax = opt.U / t;
    const double dq = double(opt.q);
    out.terms += smax;
    if (t == 1) {  // V = 1, mu = phi = 1, no non-trivial characters
        for (std::uint64_t s = 1; s <= smax; ++s) {
            const double qst = dq * double(s);
            cplx P0(0.0, 0.0);
            for (std::size_t i = 0; i < nP; ++i)
                P0 += primes[i].a * lattice_weight(qst, pmsum[i], psq[i], J);
            out.m_off += P0;
            out.s1 += P0;
        }
        return;
    }
    build_tt(t, T);
    arith::CharacterGroup G(t);
    if (!G.has_table())
        throw BudgetExceeded("char_lattice: no character table for t = " +
                             std::to_string(t));
    T.pr.resize(nP);
    T.skip.resize(nP);
    for (std::size_t i = 0; i < nP; ++i) {
        T.pr[i] = std::uint32_t(primes[i].p % t);
        T.skip[i] = (t % primes[i].p == 0) ? 1 : 0;
    }
    T.wv.resize(nP);
    const double mu_over_phi = double(T.mobius) / double(T.phi);
    const std::uint64_t cstep = opt.q % t;
    std::uint64_t cs = 0;
    for (std::uint64_t s = 1; s <= smax; ++s) {
        cs += cstep;
        if (cs >= t) cs -= t;
        // footprint f[inv(x)] += e(-inv(x+qs)/t) over admissible x
        T.f.assign(t, cplx(0.0, 0.0));
        for (std::uint32_t x : T.units) {
            std::uint64_t b = x + cs;
            if (b >= t) b -= t;
            if (!T.is_unit[b]) continue;
            T.f[T.inv[x]] += T.tw[t - T.inv[b]];
        }
        // V[m] = sum_j f[j] e(mj/t) on units; V0 = sum_j f[j]
        cplx V0(0.0, 0.0);
        for (std::uint32_t j : T.units) V0 += T.f[j];
        T.V.assign(t, cplx(0.0, 0.0));
        for (std::uint32_t m : T.units) {
            cplx acc(0.0, 0.0);
            for (std::uint32_t j : T.units) acc += T.f[j] * T.tw[T.fm.mul(m, j)];
            T.V[m] = acc;
        }
        // prime weights, (p,t)=1 enforced by zeroing
        const double qst = dq * double(s) * double(t);
        cplx P0(0.0, 0.0);
        for (std::size_t i = 0; i < nP; ++i) {
            T.wv[i] = T.skip[i] ? cplx(0.0, 0.0)
                                : primes[i].a * lattice_weight(qst, pmsum[i], psq[i], J);
            P0 += T.wv[i];
        }
        cplx mo(0.0, 0.0);
        for (std::size_t i = 0; i < nP; ++i)
            if (!T.skip[i]) mo += T.wv[i] * T.V[T.pr[i]];
        out.m_off += mo;
        out.s1 += mu_over_phi * V0 * P0;
        cplx s2acc(0.0, 0.0);
        for (std::uint64_t idx = 0; idx < G.order(); ++idx) {
            if (G.is_trivial(idx)) continue;
            const cplx* row = G.table_row(idx);
            cplx Gc(0.0, 0.0), Pc(0.0, 0.0);
            for (std::uint32_t m : T.units) Gc += std::conj(row[m]) * T.V[m];
            for (std::size_t i = 0; i < nP; ++i)
                if (!T.skip[i]) Pc += row[T.pr[i]] * T.wv[i];
            s2acc += Gc * Pc;
        }
        out.s2 += s2acc / double(T.phi);
    }
}

}  // namespace

CharLatticeResult char_lattice(const Options& opt, const std::vector<PrimeTerm>& primes) {
    CharLatticeResult R;
    if (primes.empty() || opt.U == 0) return R;
    if (opt.q < 3 || opt.k < 3 || opt.k % 2 == 0)
        throw OutOfRange("char_lattice: need q >= 3, k odd >= 3");
    std::vector<double> pmsum(primes.size()), psq(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (primes[i].p < 2) throw OutOfRange("char_lattice: p >= 2");
        pmsum[i] = double(primes[i].p) + 1.0;
        psq[i] = 2.0 * kTwoPi * std::sqrt(double(primes[i].p));
    }
    const BesselK J(opt.k - 1);
    std::vector<CharSlice> partial(opt.U);
    const int nthreads = resolve_threads(opt);
#ifdef _OPENMP
    if (nthreads > 1) {
#pragma omp parallel num_threads(nthreads)
        {
            TT T;
#pragma omp for schedule(dynamic, 4)
            for (std::int64_t t = 1; t <= std::int64_t(opt.U); ++t)
                char_t_slice(opt, primes, pmsum.data(), psq.data(), J,
                             std::uint64_t(t), T, partial[t - 1]);
        }
    } else
#endif
    {
        TT T;
        for (std::uint64_t t = 1; t <= opt.U; ++t)
            char_t_slice(opt, primes, pmsum.data(), psq.data(), J, t, T,
                         partial[t - 1]);
    }
    KahanC kmo, ks1, ks2;
    for (std::uint64_t t = 1; t <= opt.U; ++t) {
        kmo.add(partial[t - 1].m_off);
        ks1.add(partial[t - 1].s1);
        ks2.add(partial[t - 1].s2);
        R.terms += partial[t - 1].terms;
    }
    R.m_off = kmo.get();
    R.s1 = ks1.get();
    R.s2 = ks2.get();
    return R;
}

PairAccum eps_off_lattice(const Options& opt, std::uint64_t p, std::uint64_t u_shift) {
    PairAccum out;
    if (u_shift == 0) return out;
    if (p < 2) throw OutOfRange("eps_off_lattice: p >= 2");
    const BesselK J(opt.k - 1);
    const double dq = double(opt.q);
    const double msum = double(p) + 1.0;
    const double sq = 2.0 * kTwoPi * std::sqrt(double(p));
    KahanC acc;
    TT T;
    std::uint64_t terms = 0;
    for (std::uint64_t tp = 1; tp <= u_shift; ++tp) {
        const std::uint64_t tt = tp * p;  // modulus after t -> t'p
        if (tt > t_table_budget)
            throw BudgetExceeded("eps_off_lattice: modulus beyond table budget");
        build_tt(tt, T);
        const std::uint64_t mr = p % tt;  // 0 when tp == 1
        const std::uint64_t smax = u_shift / tp;
        const std::uint64_t cstep = opt.q % tt;
        std::uint64_t cs = 0;
        cplx slice(0.0, 0.0);
        for (std::uint64_t s = 1; s <= smax; ++s) {
            cs += cstep;
            if (cs >= tt) cs -= tt;
            cplx V(0.0, 0.0);
            for (std::uint32_t x : T.units) {
                std::uint64_t b = x + cs;
                if (b >= tt) b -= tt;
                if (!T.is_unit[b]) continue;
                std::uint64_t idx = T.fm.mul(mr, T.inv[x]) + tt - T.inv[b];
                if (idx >= tt) idx -= tt;
                V += T.tw[idx];
            }
            slice += lattice_weight(dq * double(s) * double(tt), msum, sq, J) * V;
        }
        acc.add(slice);
        terms += smax;
    }
    out.sum = acc.get();
    out.terms = terms;
    return out;
}

cplx higher_power_lattice(const Options& opt, const std::vector<PowerTerm>& powers) {
    if (powers.empty() || opt.U == 0) return {0.0, 0.0};
    const BesselK J(opt.k - 1);
    const double dq = double(opt.q);
    std::vector<double> nmsum(powers.size()), nsq(powers.size());
    for (std::size_t i = 0; i < powers.size(); ++i) {
        nmsum[i] = double(powers[i].n) + 1.0;
        nsq[i] = 2.0 * kTwoPi * std::sqrt(double(powers[i].n));
    }
    KahanC acc;
    TT T;
    for (std::uint64_t t = 1; t <= opt.U; ++t) {
        const std::uint64_t smax = opt.U / t;
        cplx slice(0.0, 0.0);
        if (t == 1) {
            for (std::uint64_t s = 1; s <= smax; ++s) {
                const double qst = dq * double(s);
                for (std::size_t i = 0; i < powers.size(); ++i)
                    slice += powers[i].a * lattice_weight(qst, nmsum[i], nsq[i], J);
            }
            acc.add(slice);
            continue;
        }
        build_tt(t, T);
        if (T.mobius == 0) continue;  // mu(t) kills non-squarefree t
        T.skip.resize(powers.size());
        for (std::size_t i = 0; i < powers.size(); ++i)
            T.skip[i] = (t % powers[i].p == 0) ? 1 : 0;
        const double mu_over_phi = double(T.mobius) / double(T.phi);
        const std::uint64_t cstep = opt.q % t;
        std::uint64_t cs = 0;
        for (std::uint64_t s = 1; s <= smax; ++s) {
            cs += cstep;
            if (cs >= t) cs -= t;
            cplx V0(0.0, 0.0);
            for (std::uint32_t x : T.units) {
                std::uint64_t b = x + cs;
                if (b >= t) b -= t;
                if (!T.is_unit[b]) continue;
                V0 += T.tw[t - T.inv[b]];
            }
            const double qst = dq * double(s) * double(t);
            cplx inner(0.0, 0.0);
            for (std::size_t i = 0; i < powers.size(); ++i)
                if (!T.skip[i])
                    inner += powers[i].a * lattice_weight(qst, nmsum[i], nsq[i], J);
            slice += mu_over_phi * V0 * inner;
        }
        acc.add(slice);
    }
    return acc.get();
}

namespace {

// One fully-windowed block term at (s, t); T and G already built for t.
cplx block_inner_term(const BlockJob& job, const BesselK& J, TT& T,
                      const arith::CharacterGroup& G, std::uint64_t s,
                      std::uint64_t t) {
    const double Xw = special::dyadic_window(double(s) / job.S);
    const double Yw = special::dyadic_window(double(t) / job.T);
    if (Xw == 0.0 || Yw == 0.0) return {0.0, 0.0};
    const double dq = double(job.q);
    const std::uint64_t cs = T.fm.red((job.q % t) * (s % t));
    T.f.assign(t, cplx(0.0, 0.0));
    for (std::uint32_t x : T.units) {
        std::uint64_t b = x + cs;
        if (b >= t) b -= t;
        if (!T.is_unit[b]) continue;
        T.f[T.inv[x]] += T.tw[t - T.inv[b]];
    }
    T.V.assign(t, cplx(0.0, 0.0));
    for (std::uint32_t m : T.units) {
        cplx acc(0.0, 0.0);
        for (std::uint32_t j : T.units) acc += T.f[j] * T.tw[T.fm.mul(m, j)];
        T.V[m] = acc;
    }
    const double qst = dq * double(s) * double(t);
    T.wv.resize(job.primes.size());
    T.pr.resize(job.primes.size());
    for (std::size_t i = 0; i < job.primes.size(); ++i) {
        const auto& pt = job.primes[i];
        T.pr[i] = std::uint32_t(pt.p % t);
        const double Uw = special::dyadic_window(double(pt.p) / job.P);
        T.wv[i] = (Uw == 0.0 || !T.is_unit[T.pr[i]])
                      ? cplx(0.0, 0.0)
                      : pt.a * Uw *
                            phase_bessel(qst, double(pt.p) + 1.0,
                                         2.0 * kTwoPi * std::sqrt(double(pt.p)), J);
    }
    cplx s2acc(0.0, 0.0);
    for (std::uint64_t idx = 0; idx < G.order(); ++idx) {
        if (G.is_trivial(idx)) continue;
        const cplx* row = G.table_row(idx);
        cplx Gc(0.0, 0.0), Pc(0.0, 0.0);
        for (std::uint32_t m : T.units) Gc += std::conj(row[m]) * T.V[m];
        for (std::size_t i = 0; i < job.primes.size(); ++i) Pc += row[T.pr[i]] * T.wv[i];
        s2acc += Gc * Pc;
    }
    return (Xw * Yw / (qst * double(T.phi))) * s2acc;
}

void block_range(double center, std::uint64_t& lo, std::uint64_t& hi) {
    lo = std::uint64_t(std::max(1.0, std::ceil(0.75 * center)));
    hi = std::uint64_t(std::floor(2.0 * center));
}

}  // namespace

cplx block_term(const BlockJob& job, std::uint64_t s, std::uint64_t t) {
    if (s < 1 || t < 1) throw OutOfRange("block_term: s,t >= 1");
    if (t <= 2) return {0.0, 0.0};  // no non-trivial characters mod 1, 2
    if (t > t_table_budget) throw BudgetExceeded("block_term: t beyond table budget");
    TT T;
    const BesselK J(job.k - 1);
    build_tt(t, T);
    arith::CharacterGroup G(t);
    if (!G.has_table())
        throw BudgetExceeded("block_term: no character table for t = " +
                             std::to_string(t));
    return block_inner_term(job, J, T, G, s, t);
}

cplx block_lattice(const BlockJob& job) {
    if (job.q < 3 || job.k < 3 || job.k % 2 == 0)
        throw OutOfRange("block_lattice: need q >= 3, k odd >= 3");
    if (!(job.P > 0.0) || !(job.S > 0.0) || !(job.T > 0.0))
        throw OutOfRange("block_lattice: positive block centers");
    std::uint64_t slo, shi, tlo, thi;
    block_range(job.S, slo, shi);
    block_range(job.T, tlo, thi);
    const BesselK J(job.k - 1);
    TT T;
    KahanC acc;
    for (std::uint64_t t = std::max<std::uint64_t>(tlo, 3); t <= thi; ++t) {
        if (t > t_table_budget)
            throw BudgetExceeded("block_lattice: t beyond table budget");
        build_tt(t, T);
        arith::CharacterGroup G(t);
        if (!G.has_table())
            throw BudgetExceeded("block_lattice: no character table for t = " +
                                 std::to_string(t));
        cplx slice(0.0, 0.0);
        for (std::uint64_t s = slo; s <= shi; ++s)
            slice += block_inner_term(job, J, T, G, s, t);
        acc.add(slice);
    }
    return acc.get();
}

}  // namespace g1lab::lattice
