#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "CLI11.hpp"

#include "gamma1lab/lattice.hpp"
#include "gamma1lab/reference.hpp"

// Times the production lattice kernels (OpenMP, batched tables) against the
// serial brute-force references on one configuration and reports the
// agreement alongside the speedup.

namespace {

template <typename F>
double best_ms(int reps, F&& run) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        run();
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
        best = std::min(best, ms);
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice kernel benchmark: parallel vs serial reference"};
    std::uint64_t q = 101, u = 800, char_u = 256;
    int k = 3, max_mn = 4, reps = 3, threads = 0;
    app.add_option("--q", q);
    app.add_option("--k", k);
    app.add_option("--u", u);
    app.add_option("--char-u", char_u);
    app.add_option("--max-mn", max_mn);
    app.add_option("--reps", reps);
    app.add_option("--threads", threads);
    CLI11_PARSE(app, argc, argv);

    std::vector<g1lab::lattice::Pair> pairs;
    for (int m = 1; m <= max_mn; ++m)
        for (int n = 1; n <= max_mn; ++n)
            pairs.push_back({std::uint64_t(m), std::uint64_t(n)});

    g1lab::lattice::Options fast{q, k, u, false, threads};
    g1lab::lattice::Options serial{q, k, u, true, 1};

    std::vector<g1lab::lattice::PairAccum> out_fast, out_serial, out_ref;
    const double ms_fast = best_ms(reps, [&] { out_fast = sigma_lattice(fast, pairs); });
    const double ms_serial = best_ms(reps, [&] { out_serial = sigma_lattice(serial, pairs); });
    const double ms_ref = best_ms(reps, [&] {
        out_ref = g1lab::reference::sigma_reference(serial, pairs);
    });
    double worst = 0.0, worst_serial = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        worst = std::max(worst, std::abs(out_fast[i].sum - out_ref[i].sum));
        worst_serial = std::max(worst_serial, std::abs(out_fast[i].sum - out_serial[i].sum));
    }
    std::printf("sigma kernel   q=%llu k=%d U=%llu pairs=%zu\n",
                (unsigned long long)q, k, (unsigned long long)u, pairs.size());
    std::printf("  parallel   %10.2f ms\n", ms_fast);
    std::printf("  serial     %10.2f ms   |parallel-serial| = %.3g\n", ms_serial, worst_serial);
    std::printf("  reference  %10.2f ms   |parallel-reference| = %.3g   speedup vs ref %.1fx\n",
                ms_ref, worst, ms_ref / ms_fast);

    std::vector<g1lab::lattice::PrimeTerm> primes;
    // fixed synthetic prime weights: enough mass to exercise every slice
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u})
        primes.push_back({p, std::log(double(p)) / std::sqrt(double(p))});

    g1lab::lattice::Options copt{q, k, char_u, false, threads};
    g1lab::lattice::CharLatticeResult cf{}, cr{};
    const double ms_cfast = best_ms(reps, [&] { cf = char_lattice(copt, primes); });
    const double ms_cref = best_ms(reps, [&] {
        cr = g1lab::reference::char_reference(copt, primes);
    });
    const double cworst = std::max(std::abs(cf.m_off - cr.m_off),
                                   std::max(std::abs(cf.s1 - cr.s1),
                                            std::abs(cf.s2 - cr.s2)));
    std::printf("character kernel   q=%llu k=%d U=%llu primes=%zu\n",
                (unsigned long long)q, k, (unsigned long long)char_u, primes.size());
    std::printf("  parallel   %10.2f ms\n", ms_cfast);
    std::printf("  reference  %10.2f ms   worst |parallel-reference| = %.3g   speedup %.1fx\n",
                ms_cref, cworst, ms_cref / ms_cfast);
    return 0;
}
