#include "banditlab/config.hpp"

#include <fstream>

#include <json.hpp>

#include "banditlab/errors.hpp"

namespace banditlab::harness {

using nlohmann::json;

void ExperimentConfig::validate() const {
    if (schema_version != 1)
        throw ConfigError("config: unsupported schema_version " +
                          std::to_string(schema_version));
    if (d < 1) throw ConfigError("config: d must be >= 1");
    if (horizon < 1) throw ConfigError("config: horizon must be >= 1");
    if (replications < 1) throw ConfigError("config: replications must be >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw ConfigError("config: delta must lie in (0, 1)");
    if (R < 0.0) throw ConfigError("config: R must be >= 0");
    if (thin_stride < 1) throw ConfigError("config: thin_stride must be >= 1");
    if (jobs < 1) throw ConfigError("config: jobs must be >= 1");
    if (policy != "ts" && policy != "linucb" && policy != "greedy" &&
        policy != "uniform")
        throw ConfigError("config: unknown policy '" + policy + "'");
    if (!instance.empty() && instance != "greedy-trap" &&
        instance != "sphere-iid" && instance != "orthogonal-drift")
        throw ConfigError("config: unknown instance '" + instance + "'");
    if (v_mode != "anytime" && v_mode != "fixed-horizon")
        throw ConfigError("config: unknown v_mode '" + v_mode + "'");
    if (noise != "none" && noise != "gaussian" && noise != "bounded_uniform" &&
        noise != "rademacher")
        throw ConfigError("config: unknown noise '" + noise + "'");
    if (instance.empty()) {
        if (adversary != "fixed_slate" && adversary != "iid_sphere" &&
            adversary != "rotating_basis" && adversary != "orthogonal_drift" &&
            adversary != "unit_ball")
            throw ConfigError("config: unknown adversary '" + adversary + "'");
        if (adversary == "fixed_slate" && fixed_slate.empty())
            throw ConfigError("config: fixed_slate adversary needs contexts");
    }
    if (unit_ball && policy != "ts" && policy != "greedy")
        throw ConfigError("config: unit-ball arm set supports ts/greedy only");
    // a preset instance carries its own mu_star; otherwise one is required
    if (instance.empty() && mu_star.empty())
        throw ConfigError("config: mu_star required without an instance preset");
    if (!mu_star.empty() && static_cast<int>(mu_star.size()) != d)
        throw ConfigError("config: mu_star dimension does not match d");
}

policy::SamplerConfig ExperimentConfig::sampler_config() const {
    policy::SamplerConfig s;
    s.R = R;
    s.delta = delta;
    s.d = d;
    s.v_mode = v_mode == "fixed-horizon" ? policy::VMode::kFixedHorizon
                                         : policy::VMode::kAnytime;
    s.horizon = horizon;
    return s;
}

namespace {
env::NoiseKind parse_noise(const std::string& name, double R) {
    env::NoiseKind n;
    n.R = R;
    if (name == "none")
        n.family = env::NoiseFamily::kNone;
    else if (name == "gaussian")
        n.family = env::NoiseFamily::kGaussian;
    else if (name == "bounded_uniform")
        n.family = env::NoiseFamily::kBoundedUniform;
    else if (name == "rademacher")
        n.family = env::NoiseFamily::kRademacher;
    else
        throw ConfigError("config: unknown noise '" + name + "'");
    return n;
}
}  // namespace

env::LinearEnvironment ExperimentConfig::environment() const {
    env::LinearEnvironment e;
    if (!mu_star.empty()) {
        e.mu_star = Eigen::Map<const Eigen::VectorXd>(mu_star.data(),
                                                      mu_star.size());
    } else {
        e.mu_star = env::make_instance(instance, d, n_arms).mu_star;
    }
    e.noise = parse_noise(noise, R);
    e.validate();
    return e;
}

env::AdversaryKind ExperimentConfig::adversary_kind() const {
    if (!instance.empty()) return env::make_instance(instance, d, n_arms).adversary;
    if (adversary == "fixed_slate") {
        env::FixedSlateAdversary a;
        for (const auto& row : fixed_slate) {
            if (static_cast<int>(row.size()) != d)
                throw ConfigError("config: fixed_slate context dimension mismatch");
            a.slate.arms.push_back(
                Eigen::Map<const Eigen::VectorXd>(row.data(), row.size()));
        }
        return a;
    }
    if (adversary == "iid_sphere") return env::IidSphereAdversary{n_arms, d};
    if (adversary == "rotating_basis") return env::RotatingBasisAdversary{d};
    if (adversary == "orthogonal_drift")
        return env::OrthogonalDriftAdversary{n_arms, d};
    return env::UnitBallAdversary{d};
}

std::string ExperimentConfig::to_json() const {
    json j;
    j["schema_version"] = schema_version;
    j["d"] = d;
    j["n_arms"] = n_arms;
    j["unit_ball"] = unit_ball;
    j["horizon"] = horizon;
    j["R"] = R;
    j["delta"] = delta;
    j["policy"] = policy;
    j["linucb_alpha"] = linucb_alpha;
    j["v_mode"] = v_mode;
    j["instance"] = instance;
    j["adversary"] = adversary;
    j["fixed_slate"] = fixed_slate;
    j["mu_star"] = mu_star;
    j["noise"] = noise;
    j["master_seed"] = master_seed;
    j["replications"] = replications;
    j["jobs"] = jobs;
    j["thin_stride"] = thin_stride;
    j["assert_unit_gaps"] = assert_unit_gaps;
    json ov = json::object();
    if (overrides.ell) ov["ell"] = *overrides.ell;
    if (overrides.v) ov["v"] = *overrides.v;
    if (overrides.g) ov["g"] = *overrides.g;
    if (overrides.p) ov["p"] = *overrides.p;
    j["overrides"] = ov;
    return j.dump(2);
}

std::string ExperimentConfig::digest() const {
    // FNV-1a over the canonical dump (nlohmann sorts keys)
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : to_json()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    ExperimentConfig c;
    try {
        c.schema_version = j.value("schema_version", 1);
        c.d = j.value("d", c.d);
        c.n_arms = j.value("n_arms", c.n_arms);
        c.unit_ball = j.value("unit_ball", c.unit_ball);
        c.horizon = j.value("horizon", c.horizon);
        c.R = j.value("R", c.R);
        c.delta = j.value("delta", c.delta);
        c.policy = j.value("policy", c.policy);
        c.linucb_alpha = j.value("linucb_alpha", c.linucb_alpha);
        c.v_mode = j.value("v_mode", c.v_mode);
        c.instance = j.value("instance", c.instance);
        c.adversary = j.value("adversary", c.adversary);
        c.fixed_slate = j.value("fixed_slate", c.fixed_slate);
        c.mu_star = j.value("mu_star", c.mu_star);
        c.noise = j.value("noise", c.noise);
        c.master_seed = j.value("master_seed", c.master_seed);
        c.replications = j.value("replications", c.replications);
        c.jobs = j.value("jobs", c.jobs);
        c.thin_stride = j.value("thin_stride", c.thin_stride);
        c.assert_unit_gaps = j.value("assert_unit_gaps", c.assert_unit_gaps);
        if (j.contains("overrides")) {
            const json& ov = j["overrides"];
            if (ov.contains("ell")) c.overrides.ell = ov["ell"].get<double>();
            if (ov.contains("v")) c.overrides.v = ov["v"].get<double>();
            if (ov.contains("g")) c.overrides.g = ov["g"].get<double>();
            if (ov.contains("p")) c.overrides.p = ov["p"].get<double>();
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: bad field type: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return from_json(text);
}

}  // namespace banditlab::harness
