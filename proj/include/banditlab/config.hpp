#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "banditlab/environment.hpp"
#include "banditlab/policy.hpp"

namespace banditlab::harness {

// Per-round constants are computed from the closed forms by default; any of
// them can be pinned to a fixed value from the config.
struct ConstantOverrides {
    std::optional<double> ell;
    std::optional<double> v;
    std::optional<double> g;
    std::optional<double> p;
};

// Full declarative description of one experiment. Serializes to/from a JSON
// manifest (schema_version 1); CLI flags override file keys.
struct ExperimentConfig {
    int schema_version = 1;

    int d = 2;
    int n_arms = 2;
    bool unit_ball = false;
    long horizon = 100;

    double R = 1.0;
    double delta = 0.1;

    std::string policy = "ts";  // ts | linucb | greedy | uniform
    double linucb_alpha = 1.0;
    std::string v_mode = "anytime";  // anytime | fixed-horizon

    // Either a named instance preset (greedy-trap, sphere-iid,
    // orthogonal-drift) or an explicit adversary + mu_star.
    std::string instance;
    std::string adversary = "iid_sphere";
    // fixed_slate | iid_sphere | rotating_basis | orthogonal_drift | unit_ball
    std::vector<std::vector<double>> fixed_slate;
    std::vector<double> mu_star;

    std::string noise = "gaussian";  // none | gaussian | bounded_uniform | rademacher

    std::uint64_t master_seed = 1;
    int replications = 1;
    int jobs = 1;
    long thin_stride = 1;
    bool assert_unit_gaps = false;

    ConstantOverrides overrides;

    void validate() const;

    policy::SamplerConfig sampler_config() const;
    env::LinearEnvironment environment() const;
    env::AdversaryKind adversary_kind() const;

    // Canonical JSON (sorted keys) and its FNV-1a digest; two configs with
    // the same digest produce identical experiments.
    std::string to_json() const;
    std::string digest() const;

    static ExperimentConfig from_json(const std::string& text);
    static ExperimentConfig load_file(const std::string& path);
};

}  // namespace banditlab::harness
