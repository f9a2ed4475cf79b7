// banditlab CLI: seeded contextual-bandit experiments with per-round
// regret-analysis instrumentation.
//
// Verbs:
//   run        one seeded run, trace + summary to --out
//   replicate  k runs with split streams
//   scaling    (d, T) grid study with a fitted regret exponent
//   audit      concentration-event audit over fresh or stored traces
//
// Exit codes: 0 ok, 1 config error, 2 audit invariant failure, 3 I/O error.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "banditlab/emit.hpp"
#include "banditlab/errors.hpp"
#include "banditlab/harness.hpp"

namespace hn = banditlab::harness;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    std::string format = "both";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int reps = 0;
    long thin = 0;
    int jobs = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool need_config = true) {
    auto* c = cmd->add_option("--config", opts.config_path,
                              "experiment config (JSON manifest)");
    if (need_config) c->required();
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--format", opts.format, "csv | json | both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    cmd->add_option("--seed", opts.seed, "override master seed")
        ->each([&opts](const std::string&) { opts.seed_set = true; });
    cmd->add_option("--reps", opts.reps, "override replication count");
    cmd->add_option("--thin", opts.thin, "trace detail stride");
    cmd->add_option("--jobs", opts.jobs, "worker threads across replications");
}

hn::ExperimentConfig load_config(const CommonOpts& opts) {
    hn::ExperimentConfig cfg = hn::ExperimentConfig::load_file(opts.config_path);
    if (opts.seed_set) cfg.master_seed = opts.seed;
    if (opts.reps > 0) cfg.replications = opts.reps;
    if (opts.thin > 0) cfg.thin_stride = opts.thin;
    if (opts.jobs > 0) cfg.jobs = opts.jobs;
    cfg.validate();
    return cfg;
}

std::vector<long> default_audit_rounds(long horizon) {
    std::vector<long> rounds;
    for (long t : {5L, 10L, 20L, 50L, 100L, 200L})
        if (t <= horizon) rounds.push_back(t);
    if (rounds.empty()) rounds.push_back(horizon);
    return rounds;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"contextual-bandit simulation laboratory"};
    app.require_subcommand(1);

    CommonOpts run_opts, rep_opts, scale_opts, audit_opts;

    CLI::App* run_cmd = app.add_subcommand("run", "one seeded run");
    add_common(run_cmd, run_opts);

    CLI::App* rep_cmd = app.add_subcommand("replicate", "k replicated runs");
    add_common(rep_cmd, rep_opts);

    CLI::App* scale_cmd =
        app.add_subcommand("scaling", "grid study over (d, T)");
    add_common(scale_cmd, scale_opts);
    std::vector<int> d_grid;
    std::vector<long> t_grid;
    scale_cmd->add_option("--d-grid", d_grid, "dimension grid")
        ->required()
        ->delimiter(',');
    scale_cmd->add_option("--T-grid", t_grid, "horizon grid")
        ->required()
        ->delimiter(',');

    CLI::App* audit_cmd =
        app.add_subcommand("audit", "concentration-event audit");
    add_common(audit_cmd, audit_opts, /*need_config=*/false);
    std::string traces_dir;
    double audit_delta = 0.0;
    std::vector<long> audit_rounds;
    audit_cmd->add_option("--traces", traces_dir,
                          "directory of stored run_*.csv traces");
    audit_cmd->add_option("--delta", audit_delta,
                          "confidence parameter (required with --traces)");
    audit_cmd->add_option("--rounds", audit_rounds, "rounds to sample");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            hn::ExperimentConfig cfg = load_config(run_opts);
            std::vector<hn::RunResult> results = {hn::run_experiment(cfg)};
            hn::emit_output(results, cfg, hn::parse_format(run_opts.format),
                            run_opts.out_dir);
            std::printf("run: T=%ld regret=%.6g -> %s\n", cfg.horizon,
                        results[0].bound.cum_regret, run_opts.out_dir.c_str());
        } else if (rep_cmd->parsed()) {
            hn::ExperimentConfig cfg = load_config(rep_opts);
            std::vector<hn::RunResult> results =
                hn::replicate(cfg, cfg.replications);
            hn::emit_output(results, cfg, hn::parse_format(rep_opts.format),
                            rep_opts.out_dir);
            double mean = 0.0;
            for (const auto& r : results) mean += r.bound.cum_regret;
            mean /= results.size();
            std::printf("replicate: k=%d mean_regret=%.6g -> %s\n",
                        cfg.replications, mean, rep_opts.out_dir.c_str());
        } else if (scale_cmd->parsed()) {
            hn::ExperimentConfig cfg = load_config(scale_opts);
            hn::ScalingReport report =
                hn::scaling_study(cfg, d_grid, t_grid, cfg.replications);
            hn::emit_scaling(report, cfg, scale_opts.out_dir);
            for (const auto& f : report.fits)
                std::printf("scaling: d=%d beta=%.3f [%.3f, %.3f]\n", f.d,
                            f.beta, f.beta_low, f.beta_high);
        } else if (audit_cmd->parsed()) {
            std::vector<std::vector<banditlab::diag::StepTrace>> traces;
            double delta;
            long horizon;
            if (!traces_dir.empty()) {
                if (audit_delta <= 0.0)
                    throw banditlab::ConfigError(
                        "audit --traces requires --delta");
                traces = hn::load_traces(traces_dir);
                delta = audit_delta;
                horizon = traces.empty() ? 0
                                         : static_cast<long>(traces[0].size());
            } else {
                if (audit_opts.config_path.empty())
                    throw banditlab::ConfigError(
                        "audit needs --config or --traces");
                hn::ExperimentConfig cfg = load_config(audit_opts);
                std::vector<hn::RunResult> results =
                    hn::replicate(cfg, cfg.replications);
                for (const auto& r : results) {
                    if (!r.bound.all_ok()) {
                        std::fprintf(stderr,
                                     "audit: hard invariant failed in "
                                     "replication %d\n",
                                     r.replication_index);
                        return 2;
                    }
                    traces.push_back(r.trace);
                }
                delta = cfg.delta;
                horizon = cfg.horizon;
            }
            if (audit_rounds.empty()) audit_rounds = default_audit_rounds(horizon);
            banditlab::diag::AuditReport report =
                banditlab::diag::event_probability_audit(traces, delta,
                                                         audit_rounds);
            hn::emit_audit(report, audit_opts.out_dir);
            std::printf("audit: e_mu_fail=%.4f (<= %.4f) pass=%s\n",
                        report.e_mu_ever_fail_fraction, report.e_mu_threshold,
                        report.pass ? "yes" : "no");
            if (!report.pass) return 2;
        }
    } catch (const banditlab::IoError& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return 3;
    } catch (const banditlab::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
