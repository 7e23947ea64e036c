#include <cmath>
#include <numeric>

#include "gamma1lab/arith.hpp"
#include "gamma1lab/family.hpp"
#include "gamma1lab/reference.hpp"
#include "gamma1lab/special.hpp"

namespace g1lab::reference {

using lattice::cplx;

namespace {

constexpr double kTwoPi = 6.28318530717958647692528676656;

cplx weight(std::uint64_t q, std::uint64_t s, std::uint64_t t, double msum,
            double sq4pi, int k) {
    const double qst = double(q) * double(s) * double(t);
    const double amp = (kTwoPi / qst) * special::bessel_j(k - 1, sq4pi / qst);
    const double th = kTwoPi * (msum / qst);
    return {amp * std::cos(th), amp * std::sin(th)};
}

}  // namespace

std::vector<lattice::PairAccum> sigma_reference(const lattice::Options& opt,
                                                const std::vector<lattice::Pair>& pairs) {
    std::vector<lattice::PairAccum> out(pairs.size());
    for (std::uint64_t t = 1; t <= opt.U; ++t) {
        for (std::uint64_t s = 1; s * t <= opt.U; ++s) {
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                const auto& pr = pairs[i];
                const double msum = double(pr.m) + double(pr.n);
                const double sq4pi =
                    2.0 * kTwoPi * std::sqrt(double(pr.m) * double(pr.n));
                out[i].sum += weight(opt.q, s, t, msum, sq4pi, opt.k) *
                              family::v_sum(opt.q, s, pr.m, pr.n, t);
                out[i].terms += 1;
            }
        }
    }
    return out;
}

lattice::CharLatticeResult char_reference(const lattice::Options& opt,
                                          const std::vector<lattice::PrimeTerm>& primes) {
    lattice::CharLatticeResult R;
    for (std::uint64_t t = 1; t <= opt.U; ++t) {
        const arith::CharacterGroup G(t);
        const double phi = double(G.order());
        const int mu = arith::mobius(t);
        for (std::uint64_t s = 1; s * t <= opt.U; ++s) {
            R.terms += 1;
            const cplx v0 = family::v_sum(opt.q, s, 0, 1, t);
            cplx p0(0.0, 0.0);
            for (const auto& pt : primes) {
                if (t % pt.p == 0) continue;
                const cplx w = pt.a * weight(opt.q, s, t, double(pt.p) + 1.0,
                                             2.0 * kTwoPi * std::sqrt(double(pt.p)),
                                             opt.k);
                p0 += w;
                R.m_off += w * family::v_sum(opt.q, s, pt.p, 1, t);
            }
            R.s1 += double(mu) / phi * v0 * p0;
            for (std::uint64_t idx = 0; idx < G.order(); ++idx) {
                if (G.is_trivial(idx)) continue;
                cplx gc(0.0, 0.0), pc(0.0, 0.0);
                for (std::uint64_t m = 1; m < std::max<std::uint64_t>(t, 2); ++m) {
                    if (t > 1 && std::gcd(m, t) != 1) continue;
                    gc += std::conj(G.value(idx, m)) * family::v_sum(opt.q, s, m, 1, t);
                }
                for (const auto& pt : primes) {
                    if (t % pt.p == 0) continue;
                    pc += G.value(idx, pt.p) *
                          (pt.a * weight(opt.q, s, t, double(pt.p) + 1.0,
                                         2.0 * kTwoPi * std::sqrt(double(pt.p)),
                                         opt.k));
                }
                R.s2 += gc * pc / phi;
            }
        }
    }
    return R;
}

lattice::PairAccum eps_off_reference(const lattice::Options& opt, std::uint64_t p,
                                     std::uint64_t u_shift) {
    lattice::PairAccum out;
    for (std::uint64_t tp = 1; tp <= u_shift; ++tp) {
        const std::uint64_t t = tp * p;
        for (std::uint64_t s = 1; s * tp <= u_shift; ++s) {
            out.sum += weight(opt.q, s, t, double(p) + 1.0,
                              2.0 * kTwoPi * std::sqrt(double(p)), opt.k) *
                       family::v_sum(opt.q, s, p, 1, t);
            out.terms += 1;
        }
    }
    return out;
}

}  // namespace g1lab::reference
