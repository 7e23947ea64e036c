#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "gamma1lab/errors.hpp"
#include "gamma1lab/runner.hpp"

// Exit codes: 0 success, 1 invariant failure, 2 non-certified numerics,
// 64 usage error.  Config precedence: flags > --config JSON > env
// (GAMMA1_LAB_THREADS, threads only) > built-in defaults.

namespace {

using g1lab::runner::RunConfig;

struct SubOpts {
    CLI::App* cmd = nullptr;
    std::map<std::string, CLI::Option*> opts;
};

SubOpts add_common(CLI::App& app, const char* name, const char* desc,
                   RunConfig& cli, std::string& config_path) {
    SubOpts so;
    so.cmd = app.add_subcommand(name, desc);
    auto* c = so.cmd;
    so.opts["q"] = c->add_option("--q", cli.q, "modulus q (>= 3)");
    so.opts["q_min"] = c->add_option("--q-min", cli.q_min, "scan lower bound (inclusive)");
    so.opts["q_max"] = c->add_option("--q-max", cli.q_max, "scan upper bound (inclusive)");
    so.opts["primes_only"] =
        c->add_flag("--primes-only", cli.primes_only, "restrict the scan range to primes");
    so.opts["k"] = c->add_option("--k", cli.k, "weight k (odd, >= 3)");
    so.opts["delta"] = c->add_option("--delta", cli.delta, "test-function support parameter");
    so.opts["testfn"] = c->add_option("--testfn", cli.testfn, "test-function pair: fejer | bump");
    so.opts["tail_eps"] = c->add_option("--tail-eps", cli.tail_eps,
                                        "certified truncation-tail target, in (0,1)");
    so.opts["deterministic"] = c->add_flag("--deterministic", cli.deterministic,
                                           "single worker, fixed order, byte-identical reruns");
    so.opts["threads"] = c->add_option("--threads", cli.threads,
                                       "worker count (0 = library default; env GAMMA1_LAB_THREADS)");
    so.opts["out"] = c->add_option("--out", cli.out, "output path (default: stdout)");
    so.opts["format"] = c->add_option("--format", cli.format, "output format: json | csv");
    so.opts["filter"] = c->add_option("--filter", cli.filter, "verify: run a single module suite");
    c->add_option("--config", config_path, "JSON config file (flags take precedence)");
    return so;
}

void overlay(RunConfig& dst, const RunConfig& src, const SubOpts& so) {
    for (const auto& [field, opt] : so.opts) {
        if (opt->count() == 0) continue;
        if (field == "q") dst.q = src.q;
        else if (field == "q_min") dst.q_min = src.q_min;
        else if (field == "q_max") dst.q_max = src.q_max;
        else if (field == "primes_only") dst.primes_only = src.primes_only;
        else if (field == "k") dst.k = src.k;
        else if (field == "delta") dst.delta = src.delta;
        else if (field == "testfn") dst.testfn = src.testfn;
        else if (field == "tail_eps") dst.tail_eps = src.tail_eps;
        else if (field == "deterministic") dst.deterministic = src.deterministic;
        else if (field == "threads") dst.threads = src.threads;
        else if (field == "out") dst.out = src.out;
        else if (field == "format") dst.format = src.format;
        else if (field == "filter") dst.filter = src.filter;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-level density laboratory for a holomorphic cusp-form family"};
    app.require_subcommand(1);

    RunConfig cli;  // flag storage; presence tracked per option
    std::string config_path;
    SubOpts subs[] = {
        add_common(app, "verify", "run the invariant suite", cli, config_path),
        add_common(app, "density", "one-level density report for a single q", cli, config_path),
        add_common(app, "scan", "density CSV over a q range", cli, config_path),
        add_common(app, "diagnose-blocks", "windowed character-block diagnostics", cli, config_path),
        add_common(app, "mellin-probe", "truncated Mellin transform regime scan", cli, config_path),
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        RunConfig cfg;  // built-in defaults
        if (const char* env = std::getenv("GAMMA1_LAB_THREADS")) {
            char* end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (end != env && *end == '\0' && v >= 0) cfg.threads = int(v);
        }
        if (!config_path.empty()) g1lab::runner::apply_config_file(cfg, config_path);
        for (const auto& so : subs) {
            if (!so.cmd->parsed()) continue;
            overlay(cfg, cli, so);
            const std::string name = so.cmd->get_name();
            if (name == "verify") return g1lab::runner::cmd_verify(cfg);
            if (name == "density") return g1lab::runner::cmd_density(cfg);
            if (name == "scan") return g1lab::runner::cmd_scan(cfg);
            if (name == "diagnose-blocks") return g1lab::runner::cmd_diagnose_blocks(cfg);
            if (name == "mellin-probe") return g1lab::runner::cmd_mellin_probe(cfg);
        }
        std::cerr << "usage error: no subcommand\n";
        return 64;
    } catch (const g1lab::OutOfRange& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 64;
    } catch (const g1lab::NotInvertible& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 64;
    } catch (const g1lab::BudgetExceeded& e) {
        std::cerr << "not certified: " << e.what() << "\n";
        return 2;
    } catch (const g1lab::QuadratureFailure& e) {
        std::cerr << "not certified: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "invariant failure: " << e.what() << "\n";
        return 1;
    }
}
