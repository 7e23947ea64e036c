#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gamma1lab/density.hpp"
#include "gamma1lab/family.hpp"
#include "gamma1lab/testfn.hpp"

// Experiment orchestration behind the CLI: resolved run configuration,
// the verify invariant suite, single-density runs, q-scans, block
// diagnostics, and Mellin probes.  Exit codes: 0 success, 1 invariant
// failure, 2 non-certified numerics, 64 usage error (mapped by the CLI).

namespace g1lab::runner {

struct RunConfig {
    std::uint64_t q = 101;
    std::uint64_t q_min = 0, q_max = 0;  // scan range, inclusive
    bool primes_only = false;
    int k = 3;
    double delta = 1.0;
    std::string testfn = "fejer";  // fejer | bump
    double tail_eps = 1e-5;
    bool deterministic = false;
    int threads = 0;  // 0 = library default
    std::string out;  // empty = stdout
    std::string format;  // json | csv; empty = per-command default
    std::string filter;  // verify: restrict to one module

    // config-file-only knobs (no dedicated flags)
    std::uint64_t st_cap = 8192;
    std::uint64_t character_st_cap = 512;
    double kappa_n = -1.0;  // <0 = default 10 q^{-3/2}

    // diagnose-blocks grid (dyadic centers)
    std::vector<double> block_p{2, 4, 8, 16, 32, 64};
    std::vector<double> block_s{1, 2, 4, 8};
    std::vector<double> block_t{2, 4, 8};

    // mellin-probe spec
    double mellin_x = 100.0, mellin_j = 1.0, mellin_alpha = 0.0;
    int mellin_sign = 1;
    double mellin_c = 1.0;
    std::uint64_t mellin_points = 200;
    double mellin_v_min = 0.0;
    double mellin_v_max = -1.0;  // v_max < v_min = auto saddle-side grid
};

// Throws OutOfRange on any violated invariant (k odd >= 3, q >= 3,
// tail_eps in (0,1), delta > 0, names in range) -> usage exit.
void validate(const RunConfig& cfg);

// Overlay JSON config-file keys (same names as the struct fields) onto cfg.
void apply_config_file(RunConfig& cfg, const std::string& path);

family::TruncationPolicy policy_of(const RunConfig& cfg);
testfn::TestFunctionPair pair_of(const RunConfig& cfg);

struct CheckResult {
    std::string module;     // arith | special | testfn | family | density | analysis
    std::string invariant;  // stable id
    std::string detail;     // observed vs bound
    bool pass = false;
};

// The invariant suite: orthogonality, Ramanujan reduction, partition of
// unity, Bessel cross-checks, reassembly identities on a fixed small
// configuration, plus the exact corollary arithmetic.  filter empty = all
// modules.  Env G1LAB_FAULT=bessel_x_switch corrupts the Bessel switch
// point (test hook for the failure path).
std::vector<CheckResult> run_verify(const std::string& filter);

// Scan CSV content for the configured q range (header always present,
// rows ascending q, failures as certified=false rows).
std::string scan_csv(const RunConfig& cfg);

int cmd_verify(const RunConfig& cfg);
int cmd_density(const RunConfig& cfg);
int cmd_scan(const RunConfig& cfg);
int cmd_diagnose_blocks(const RunConfig& cfg);
int cmd_mellin_probe(const RunConfig& cfg);

}  // namespace g1lab::runner
