#pragma once

#include <string>
#include <vector>

#include "banditlab/config.hpp"
#include "banditlab/diagnostics.hpp"

namespace banditlab::harness {

struct RunResult {
    std::string config_digest;
    int replication_index = 0;
    std::uint64_t master_seed = 0;
    std::vector<diag::StepTrace> trace;
    diag::BoundReport bound;
    double wall_seconds = 0.0;
};

// One seeded run of the round loop: contexts -> sample -> select -> reward ->
// update -> diagnostics, for t = 1..T. Fully deterministic given
// (config, master_seed, replication index).
RunResult run_experiment(const ExperimentConfig& cfg, int replication = 0);

// k replications with streams split from the master seed. Replication i is
// identical whether it runs alone or in a batch, and independent of worker
// count (cfg.jobs > 1 parallelizes across replications only).
std::vector<RunResult> replicate(const ExperimentConfig& cfg, int k);

struct ScalingCell {
    int d = 0;
    long horizon = 0;
    double mean_regret = 0.0;
    double median_regret = 0.0;
    double stddev = 0.0;
    std::vector<double> final_regrets;  // one per seed
};

struct ScalingFit {
    int d = 0;
    double beta = 0.0;       // exponent in R(T) ~ c T^beta
    double beta_low = 0.0;   // ~95% interval (beta +- 2 SE)
    double beta_high = 0.0;
    double log_intercept = 0.0;
};

struct ScalingReport {
    std::vector<ScalingCell> cells;
    std::vector<ScalingFit> fits;
};

// k replications per (d, T) cell; the exponent is fitted by log-log least
// squares over the per-seed R(T) values in the upper half of the horizon
// grid (T >= max T / 2), one fit per d.
ScalingReport scaling_study(const ExperimentConfig& base,
                            const std::vector<int>& d_grid,
                            const std::vector<long>& horizon_grid, int k);

}  // namespace banditlab::harness
