// Acceptance gate: one pass/fail line per criterion, nonzero exit when any
// fails.  Tolerances are pinned here, not configurable, so a regression
// cannot be waved through by loosening a knob at run time.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gamma1lab/analysis.hpp"
#include "gamma1lab/arith.hpp"
#include "gamma1lab/density.hpp"
#include "gamma1lab/family.hpp"
#include "gamma1lab/runner.hpp"
#include "gamma1lab/special.hpp"
#include "gamma1lab/testfn.hpp"

using namespace g1lab;
using cplx = std::complex<double>;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
    if (!pass) ++g_failures;
    std::printf("criterion %2d [%s] %s: %s (%.1f s)\n", id, pass ? "PASS" : "FAIL",
                name.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
}

template <typename F>
void run_criterion(int id, const std::string& name, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        std::tie(pass, detail) = body();
    } catch (const std::exception& e) {
        pass = false;
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(id, name, pass, detail, secs);
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i)
        xs[i] = lo * std::exp(std::log(hi / lo) * i / double(n - 1));
    return xs;
}

// ---- criterion 9/12 shared scan configuration --------------------------

runner::RunConfig scan_config() {
    runner::RunConfig cfg;
    cfg.q_min = 101;
    cfg.q_max = 1009;
    cfg.primes_only = true;
    cfg.k = 3;
    cfg.delta = 1.0;
    cfg.testfn = "fejer";
    cfg.tail_eps = 1e-5;
    cfg.st_cap = 8192;
    cfg.character_st_cap = 512;
    cfg.deterministic = true;
    return cfg;
}

struct ScanRow {
    std::uint64_t q;
    double d_total;
    bool certified;
    std::vector<double> numerics;  // all real-valued columns, for snapshots
    std::string testfn, cert_text;
};

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

std::vector<ScanRow> parse_scan(const std::string& csv) {
    std::vector<ScanRow> rows;
    std::stringstream ss(csv);
    std::string line;
    bool header = true;
    while (std::getline(ss, line)) {
        if (header) {
            header = false;
            continue;
        }
        if (line.empty()) continue;
        auto f = split(line, ',');
        if (f.size() != 14) throw std::runtime_error("scan row arity: " + line);
        ScanRow r;
        r.q = std::stoull(f[0]);
        r.testfn = f[3];
        r.cert_text = f[13];
        r.certified = f[13] == "true";
        r.d_total = std::stod(f[4]);
        r.numerics = {std::stod(f[1]), std::stod(f[2])};
        for (int i = 4; i <= 12; ++i) r.numerics.push_back(std::stod(f[i]));
        rows.push_back(r);
    }
    return rows;
}

bool rows_match(const ScanRow& a, const ScanRow& b, double rel) {
    if (a.q != b.q || a.testfn != b.testfn || a.cert_text != b.cert_text) return false;
    if (a.numerics.size() != b.numerics.size()) return false;
    for (std::size_t i = 0; i < a.numerics.size(); ++i) {
        double tol = rel * std::max({1.0, std::abs(a.numerics[i]), std::abs(b.numerics[i])});
        if (std::abs(a.numerics[i] - b.numerics[i]) > tol) return false;
    }
    return true;
}

}  // namespace

int main() {
    // 1. odd-character orthogonality against the closed form
    run_criterion(1, "character orthogonality", []() {
        double worst = 0.0;
        for (std::uint64_t q = 3; q <= 50; ++q)
            for (std::uint64_t m = 0; m < q; ++m)
                for (std::uint64_t n = 0; n < q; ++n)
                    worst = std::max(worst,
                                     std::abs(arith::odd_character_average_table(q, m, n) -
                                              arith::odd_character_average_closed(q, m, n)));
        return std::make_pair(worst <= 1e-10, "max residual " + fmt(worst));
    });

    // 2. mobius reduction of the m-averaged twisted sums, with the worked
    //    t = 3 instance
    run_criterion(2, "mobius reduction of V-sums", []() {
        double worst = 0.0;
        for (std::uint64_t q : {5, 7, 11})
            for (std::uint64_t s = 1; s <= 4; ++s)
                for (std::uint64_t t = 1; t <= 60; ++t) {
                    auto [lhs, rhs] = family::v_sum_m_average(q, s, t);
                    worst = std::max(worst, std::abs(lhs - rhs));
                }
        auto [lhs, rhs] = family::v_sum_m_average(5, 1, 3);
        const cplx expect = arith::unit_phase(1, 3) + 1.0;
        const cplx reduced =
            double(arith::mobius(3)) * family::v_sum(5, 1, 0, 1, 3);
        bool worked = std::abs(lhs - expect) <= 1e-12 && std::abs(rhs - reduced) <= 1e-15;
        return std::make_pair(worst <= 1e-9 && worked,
                              "max |lhs-rhs| " + fmt(worst) + ", worked t=3 instance " +
                                  (worked ? "ok" : "BROKEN"));
    });

    // 3. dyadic partition of unity
    run_criterion(3, "dyadic partition of unity", []() {
        double worst = 0.0;
        for (double x : log_grid(1.0, 1e8, 1000))
            worst = std::max(worst, special::dyadic_partition_residual(x));
        return std::make_pair(worst <= 1e-10, "max residual " + fmt(worst));
    });

    // 4. Bessel branches, envelope, and oracle
    run_criterion(4, "bessel evaluator", []() {
        double worst_rel = 0.0, worst_margin = 0.0;
        for (int nu : {2, 4, 6}) {
            special::BesselEvaluator ev(nu);
            for (int i = 0; i <= 100; ++i) {
                double x = ev.x_switch * (0.8 + 0.4 * i / 100.0);
                double a = ev.series(x), b = ev.asymptotic(x);
                worst_rel = std::max(worst_rel,
                                     std::abs(a - b) / std::max(std::abs(a), 1e-300));
            }
            for (double x : log_grid(1e-3, 1e4, 400))
                worst_margin = std::max(worst_margin, special::bessel_bound_margin(nu, x));
        }
        double oracle_err =
            std::abs(special::bessel_j(2, 1.0) - 0.1149034849319004804696469);
        bool pass = worst_rel <= 1e-9 && worst_margin <= 1.3 && oracle_err <= 1e-12;
        return std::make_pair(pass, "overlap " + fmt(worst_rel) + ", margin " +
                                        fmt(worst_margin) + ", oracle " + fmt(oracle_err));
    });

    // 5. diagonal-delta decay across the q grid
    run_criterion(5, "delta-grid decay", []() {
        family::TruncationPolicy pol;
        pol.tail_eps = 1e-12;  // deliberately unreachable: pins U at st_cap
        pol.st_cap = 20000;
        pol.deterministic = true;
        std::vector<family::FamilyParams> grid{{101, 3}, {211, 3}, {401, 3}, {809, 3}};
        auto r = analysis::grid_decay_regression(grid, pol, 6);
        bool pass = r.slope <= -1.8 && r.r_squared >= 0.9;
        return std::make_pair(pass, "slope " + fmt(r.slope) + ", r^2 " + fmt(r.r_squared));
    });

    // 6/7/8 share one density report per q
    std::vector<density::DensityReport> reports;
    {
        family::TruncationPolicy pol;
        pol.tail_eps = 1e-9;
        pol.st_cap = 8192;
        pol.character_st_cap = 2048;
        pol.deterministic = true;
        auto pair = testfn::TestFunctionPair::fejer(1.0);
        for (std::uint64_t q : {101, 211, 401, 809}) {
            try {
                reports.push_back(
                    density::one_level_density(family::FamilyParams(q, 3), pair, pol));
            } catch (const std::exception& e) {
                std::printf("shared density run failed at q=%llu: %s\n",
                            static_cast<unsigned long long>(q), e.what());
            }
        }
    }

    run_criterion(6, "reassembly identities", [&]() {
        if (reports.empty() || reports[0].q != 101)
            return std::make_pair(false, std::string("q=101 report missing"));
        const auto& R = reports[0];
        double split_err = std::abs(R.s1 + R.s2 - R.m_off);
        double split_tol = 1e-8 + R.tail_s1 + R.tail_s2 + R.tail_m_off;
        double route_err = std::abs(R.m_off + R.eps_off - R.s_n);
        double route_tol = R.tail_m_off + R.tail_eps_off + R.tail_s_n;
        bool pass = split_err <= split_tol && route_err <= route_tol;
        return std::make_pair(pass, "|S1+S2-M_off| " + fmt(split_err) + " vs " +
                                        fmt(split_tol) + "; |M_off+eps-S_N| " +
                                        fmt(route_err) + " vs " + fmt(route_tol));
    });

    run_criterion(7, "eps_off decay", [&]() {
        if (reports.size() != 4)
            return std::make_pair(false, std::string("incomplete q grid"));
        std::vector<std::pair<double, double>> xy;
        for (const auto& R : reports) xy.push_back({double(R.q), std::abs(R.eps_off)});
        auto r = analysis::log_log_fit(xy);
        return std::make_pair(r.slope <= -2.5, "slope " + fmt(r.slope));
    });

    run_criterion(8, "higher-power diagonal decay", [&]() {
        if (reports.size() != 4)
            return std::make_pair(false, std::string("incomplete q grid"));
        std::vector<std::pair<double, double>> xy;
        for (const auto& R : reports)
            xy.push_back({double(R.q), std::abs(R.eps_higher_power)});
        auto r = analysis::log_log_fit(xy);
        return std::make_pair(r.slope <= -0.8, "slope " + fmt(r.slope));
    });

    // 9 and 12 share the deterministic scan
    std::string scan_first;
    run_criterion(9, "density trend with snapshot", [&]() {
        auto cfg = scan_config();
        scan_first = runner::scan_csv(cfg);
        auto rows = parse_scan(scan_first);
        if (rows.size() != 144)
            return std::make_pair(false, "expected 144 primes, got " +
                                             std::to_string(rows.size()));
        bool all_cert = true;
        std::vector<std::pair<double, double>> xy;
        for (const auto& r : rows) {
            all_cert = all_cert && r.certified;
            xy.push_back({1.0 / std::log(double(r.q)), std::abs(r.d_total - 1.0)});
        }
        auto fit = analysis::least_squares(xy);
        const std::size_t quart = rows.size() / 4;
        double bottom_max = 0.0, top_max = 0.0;
        for (std::size_t i = 0; i < quart; ++i)
            bottom_max = std::max(bottom_max, std::abs(rows[i].d_total - 1.0));
        for (std::size_t i = rows.size() - quart; i < rows.size(); ++i)
            top_max = std::max(top_max, std::abs(rows[i].d_total - 1.0));

        const std::string snap_path =
            std::string(G1LAB_SNAPSHOT_DIR) + "/scan_snapshot.csv";
        std::string snap_note;
        bool snap_ok = true;
        std::ifstream snap_in(snap_path, std::ios::binary);
        if (!snap_in.good()) {
            std::ofstream out(snap_path, std::ios::binary | std::ios::trunc);
            out << scan_first;
            snap_note = "snapshot created";
        } else {
            std::ostringstream ss;
            ss << snap_in.rdbuf();
            auto old_rows = parse_scan(ss.str());
            snap_ok = old_rows.size() == rows.size();
            if (snap_ok)
                for (std::size_t i = 0; i < rows.size(); ++i)
                    snap_ok = snap_ok && rows_match(old_rows[i], rows[i], 1e-12);
            snap_note = snap_ok ? "snapshot matched" : "SNAPSHOT MISMATCH";
        }

        bool pass = all_cert && fit.r_squared >= 0.5 && fit.slope > 0.0 &&
                    top_max < bottom_max && snap_ok;
        return std::make_pair(
            pass, "certified " + std::string(all_cert ? "all" : "NOT ALL") + ", r^2 " +
                      fmt(fit.r_squared) + ", quartile max " + fmt(top_max) + " < " +
                      fmt(bottom_max) + ", " + snap_note);
    });

    run_criterion(10, "mellin saddle/decay regimes", []() {
        bool pass = true;
        std::string detail;
        for (double alpha : {0.0, 2.0}) {
            double scan_max[2] = {0.0, 0.0};
            double decay_worst = 0.0;
            int which = 0;
            std::vector<special::RegimeScan> scans;
            for (double X : {100.0, 1000.0}) {
                special::MellinProbe probe;
                probe.X = X;
                probe.alpha = alpha;
                probe.sign = -1;
                auto vmag = [&](double y) {
                    return std::abs(2.0 * M_PI * X * y - M_PI * alpha * std::sqrt(X * y));
                };
                double vmin = -2.5 * std::max(vmag(0.5), vmag(4.0));
                std::vector<double> grid(64);
                for (int i = 0; i < 64; ++i) grid[i] = vmin * (63 - i) / 63.0;
                auto scan = special::mellin_regime_scan(probe, grid);
                for (const auto& row : scan.rows)
                    if (row.regime == "saddle")
                        scan_max[which] = std::max(scan_max[which], row.bound_ratio);
                scans.push_back(scan);
                ++which;
            }
            const double C = std::max(scan_max[0], scan_max[1]);
            for (const auto& scan : scans)
                for (const auto& row : scan.rows)
                    if (row.regime == "decay")
                        decay_worst = std::max(decay_worst, row.bound_ratio);
            bool saddle_ok = scan_max[0] > 0.0 && scan_max[1] > 0.0 &&
                             scan_max[0] >= C / 3.0 && scan_max[1] >= C / 3.0;
            bool decay_ok = decay_worst <= C;
            pass = pass && saddle_ok && decay_ok;
            detail += "alpha=" + fmt(alpha) + ": saddle C " + fmt(C) + " (cross-scale x" +
                      fmt(C / std::max(std::min(scan_max[0], scan_max[1]), 1e-300)) +
                      "), decay max " + fmt(decay_worst) + "; ";
        }
        return std::make_pair(pass, detail);
    });

    run_criterion(11, "nonvanishing corollary arithmetic", []() {
        bool pass = analysis::nonvanishing_bound(8.0 / 3.0) == 0.625 &&
                    analysis::kernel_value(8.0 / 3.0, 0.0) == 8.0 / 3.0;
        return std::make_pair(pass, std::string(pass ? "exact" : "NOT exact"));
    });

    run_criterion(12, "deterministic scan byte-identity", [&]() {
        if (scan_first.empty())
            return std::make_pair(false, std::string("criterion 9 scan missing"));
        auto cfg = scan_config();
        const std::string again = runner::scan_csv(cfg);
        bool pass = again == scan_first;
        return std::make_pair(pass, std::string(pass ? "rerun byte-identical"
                                                     : "rerun DIFFERS from first scan"));
    });

    std::printf("acceptance: %d of 12 criteria passed\n", 12 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
