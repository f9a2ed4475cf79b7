#pragma once

#include <vector>

#include "banditlab/environment.hpp"
#include "banditlab/policy.hpp"

namespace banditlab::diag {

using env::FiniteSlate;
using env::LinearEnvironment;
using env::OracleResult;
using linalg::Vector;
using policy::PosteriorState;
using policy::SamplerConfig;

// Proof constants evaluated at round t:
//   ell_t = R sqrt(d ln(t^3/delta)) + 1
//   v_t   per the sampler schedule
//   g_t   = min{sqrt(4 d ln t), sqrt(4 ln(N t))} * v_t + ell_t
//   p     = 1/(4e sqrt(pi))
// Every ln argument goes through the log floor (clamped at e).
struct AnalysisConstants {
    double ell = 0.0;
    double v = 0.0;
    double g = 0.0;
    double p = 0.0;
    double dev_multiplier = 0.0;  // min{sqrt(4 d ln t), sqrt(4 ln(N t))}
    double theta_dev = 0.0;       // dev_multiplier * v_t
};

AnalysisConstants analysis_constants(const SamplerConfig& cfg, long t, int n_arms);

// Per-round record of everything the regret analysis tracks.
struct StepTrace {
    long t = 0;
    int chosen = 0;
    int optimal = 0;
    double gap_regret = 0.0;
    double realized_regret = 0.0;
    double cum_regret = 0.0;
    double s_chosen = 0.0;
    bool e_mu = false;
    bool e_theta = false;
    bool saturated_played = false;
    double x_t = 0.0;
    double y_t = 0.0;
    AnalysisConstants constants;
    // full per-arm detail, kept every `stride` rounds when thinning
    bool has_detail = false;
    std::vector<double> theta;       // b_i . mu_tilde
    std::vector<double> widths;      // s_i(t)
    std::vector<double> gaps;        // Delta_i(t)
    std::vector<double> mu_margins;  // |b_i.(mu_hat - mu)| - ell_t s_i(t)
    std::vector<int> saturated;      // C(t)
};

struct RegretPair {
    double gap = 0.0;       // Delta_{a(t)}(t), >= 0
    double realized = 0.0;  // r_{a*} - r_{a}, counterfactual draw, may be < 0
};

// Gap regret from the oracle; realized regret draws the optimal arm's
// counterfactual reward from an independent noise stream coupled by round
// index. With NoiseKind=None the two coincide exactly.
RegretPair regret_step(const FiniteSlate& slate, const OracleResult& oracle,
                       int chosen, double chosen_reward,
                       const LinearEnvironment& environment,
                       Rng& counterfactual_rng);

struct EventMuResult {
    bool holds = true;
    std::vector<double> margins;  // |b_i.(mu_hat - mu)| - ell_t s_i; <= 0 ok
};

// E^mu(t): every arm's mean estimate is within ell_t s_i(t) of truth.
EventMuResult check_event_mu(const PosteriorState& state,
                             const FiniteSlate& slate, const Vector& mu_star,
                             double ell_t);

// E^theta(t): every sampled score is within theta_dev * s_i(t) of its mean.
bool check_event_theta(const std::vector<double>& theta,
                       const std::vector<double>& predicted_means,
                       const std::vector<double>& widths, double theta_dev);

// C(t) = { i : Delta_i(t) > g_t s_i(t) }. Never contains the optimal arm.
std::vector<int> saturated_set(const std::vector<double>& gaps,
                               const std::vector<double>& widths, double g_t);

struct MartingaleStep {
    double x = 0.0;
    double y = 0.0;
    double x_cap = 0.0;  // 6 g_t / p, the proof's bound on |X_t|
};

// X_t = regret(t) 1{E^mu(t)} - (3 g_t / p) s_{a(t)}(t) - 2 g_t / (p t^2),
// Y_t = Y_{t-1} + X_t.
MartingaleStep martingale_step(double gap_regret, bool e_mu, double s_chosen,
                               const AnalysisConstants& c, long t,
                               double y_prev);

// 5 sqrt(d T ln T), the cap on sum_t s_{a(t)}(t).
double s_sum_cap(int d, long horizon);

// Rank-one eigenvalue relation: s^2 <= 10 sum_j (lambda'_j - lambda_j) /
// lambda_j, with both spectra sorted the same way.
bool lemma10_holds(double s_chosen_sq, const Vector& spectrum_before,
                   const Vector& spectrum_after);

// Explicit high-probability envelope, the pre-big-O form of the regret bound:
// (3 g_T / p) 5 sqrt(d T ln T) + (2 g_T / p)(pi^2/6)
//   + (6 g_T / p) sqrt(2 T ln(2/delta)).
double theorem_bound(const SamplerConfig& cfg, long horizon, int n_arms);

// End-of-run summary of the explicit bounds and the hard invariants checked
// on every round.
struct BoundReport {
    double s_sum = 0.0;            // sum_t s_{a(t)}(t)
    double s_sum_cap = 0.0;        // 5 sqrt(d T ln T)
    double theorem_envelope = 0.0; // explicit high-probability bound
    double cum_regret = 0.0;       // realized R(T), gap form
    bool x_bound_ok = true;        // |X_t| <= 6 g_t / p every round
    bool telescope_ok = true;      // Y_t = sum of X_w, zero drift
    bool optimal_unsaturated_ok = true;  // a*(t) never in C(t)
    bool s_sum_ok = true;          // s_sum <= s_sum_cap
    bool lemma10_ok = true;        // per-round eigenvalue relation

    bool all_ok() const {
        return x_bound_ok && telescope_ok && optimal_unsaturated_ok &&
               s_sum_ok && lemma10_ok;
    }
};

struct RoundStat {
    long t = 0;
    double frequency = 0.0;
    double threshold = 0.0;
    long samples = 0;
    bool ok = true;
};

struct AuditReport {
    int replications = 0;
    // fraction of replications where E^mu ever fails vs delta pi^2/6 + 3 SE
    double e_mu_ever_fail_fraction = 0.0;
    double e_mu_threshold = 0.0;
    bool e_mu_ok = true;
    // per-round E^theta failure frequency vs 1/t^2 + 3 SE
    std::vector<RoundStat> e_theta;
    // unsaturated-play frequency on E^mu rounds vs p - 1/t^2 - 3 SE (floor)
    std::vector<RoundStat> unsaturated;
    // across-replication mean of X_t vs 0 + 3 SE
    std::vector<RoundStat> x_drift;
    bool pass = true;
};

// Replication-level audit of the concentration events, the saturated-play
// floor and the super-martingale drift. Needs >= 200 replications.
AuditReport event_probability_audit(
    const std::vector<std::vector<StepTrace>>& runs, double delta,
    const std::vector<long>& sample_rounds);

}  // namespace banditlab::diag
