#include "banditlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "banditlab/errors.hpp"
#include "banditlab/tail_bounds.hpp"

namespace banditlab::diag {

using policy::floored_log;

AnalysisConstants analysis_constants(const SamplerConfig& cfg, long t,
                                     int n_arms) {
    if (t < 1) throw ConfigError("analysis_constants: t must be >= 1");
    AnalysisConstants c;
    double td = static_cast<double>(t);
    c.ell = cfg.R * std::sqrt(cfg.d * floored_log(td * td * td / cfg.delta)) + 1.0;
    c.v = policy::v_schedule(cfg, t);
    double dim_branch = std::sqrt(4.0 * cfg.d * floored_log(td));
    double arm_branch = std::sqrt(4.0 * floored_log(static_cast<double>(n_arms) * td));
    c.dev_multiplier = std::min(dim_branch, arm_branch);
    c.theta_dev = c.dev_multiplier * c.v;
    c.g = c.theta_dev + c.ell;
    c.p = linalg::anti_concentration_constant();
    return c;
}

RegretPair regret_step(const FiniteSlate& slate, const OracleResult& oracle,
                       int chosen, double chosen_reward,
                       const LinearEnvironment& environment,
                       Rng& counterfactual_rng) {
    RegretPair out;
    out.gap = oracle.gaps.at(chosen);
    double opt_reward = env::draw_reward(slate.arms.at(oracle.optimal_arm),
                                         environment, counterfactual_rng);
    out.realized = opt_reward - chosen_reward;
    return out;
}

EventMuResult check_event_mu(const PosteriorState& state,
                             const FiniteSlate& slate, const Vector& mu_star,
                             double ell_t) {
    EventMuResult res;
    res.margins.reserve(slate.arms.size());
    for (const Vector& b : slate.arms) {
        double err = std::abs(b.dot(state.mu_hat) - b.dot(mu_star));
        double s = linalg::mahalanobis_width(b, state.B_inv);
        double margin = err - ell_t * s;
        res.margins.push_back(margin);
        if (margin > 0.0) res.holds = false;
    }
    return res;
}

bool check_event_theta(const std::vector<double>& theta,
                       const std::vector<double>& predicted_means,
                       const std::vector<double>& widths, double theta_dev) {
    for (std::size_t i = 0; i < theta.size(); ++i) {
        if (std::abs(theta[i] - predicted_means[i]) > theta_dev * widths[i])
            return false;
    }
    return true;
}

std::vector<int> saturated_set(const std::vector<double>& gaps,
                               const std::vector<double>& widths, double g_t) {
    std::vector<int> out;
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        if (gaps[i] > g_t * widths[i]) out.push_back(static_cast<int>(i));
    }
    return out;
}

MartingaleStep martingale_step(double gap_regret, bool e_mu, double s_chosen,
                               const AnalysisConstants& c, long t,
                               double y_prev) {
    MartingaleStep out;
    double regret_prime = e_mu ? gap_regret : 0.0;
    double td = static_cast<double>(t);
    out.x = regret_prime - (3.0 * c.g / c.p) * s_chosen -
            2.0 * c.g / (c.p * td * td);
    out.y = y_prev + out.x;
    out.x_cap = 6.0 * c.g / c.p;
    return out;
}

double s_sum_cap(int d, long horizon) {
    double T = static_cast<double>(horizon);
    return 5.0 * std::sqrt(d * T * std::log(T));
}

bool lemma10_holds(double s_chosen_sq, const Vector& spectrum_before,
                   const Vector& spectrum_after) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < spectrum_before.size(); ++j) {
        sum += (spectrum_after(j) - spectrum_before(j)) / spectrum_before(j);
    }
    return s_chosen_sq <= 10.0 * sum + 1e-9;
}

double theorem_bound(const SamplerConfig& cfg, long horizon, int n_arms) {
    if (horizon < 2) throw ConfigError("theorem_bound: horizon must be >= 2");
    AnalysisConstants c = analysis_constants(cfg, horizon, n_arms);
    double T = static_cast<double>(horizon);
    double gp = c.g / c.p;
    return 3.0 * gp * s_sum_cap(cfg.d, horizon) +
           2.0 * gp * (std::numbers::pi * std::numbers::pi / 6.0) +
           6.0 * gp * std::sqrt(2.0 * T * std::log(2.0 / cfg.delta));
}

namespace {
double binomial_se(double p0, long n) {
    p0 = std::clamp(p0, 0.0, 1.0);
    return std::sqrt(p0 * (1.0 - p0) / static_cast<double>(std::max(n, 1L)));
}
}  // namespace

AuditReport event_probability_audit(
    const std::vector<std::vector<StepTrace>>& runs, double delta,
    const std::vector<long>& sample_rounds) {
    if (runs.size() < 200)
        throw ConfigError("event_probability_audit: need >= 200 replications");
    AuditReport rep;
    rep.replications = static_cast<int>(runs.size());
    const long n = static_cast<long>(runs.size());

    // (a) E^mu ever fails, per replication
    long mu_fail = 0;
    for (const auto& run : runs) {
        for (const auto& step : run) {
            if (!step.e_mu) {
                ++mu_fail;
                break;
            }
        }
    }
    rep.e_mu_ever_fail_fraction = static_cast<double>(mu_fail) / n;
    double mu_bound = std::min(delta * std::numbers::pi * std::numbers::pi / 6.0, 1.0);
    rep.e_mu_threshold = mu_bound + 3.0 * binomial_se(mu_bound, n);
    rep.e_mu_ok = rep.e_mu_ever_fail_fraction <= rep.e_mu_threshold;
    if (!rep.e_mu_ok) rep.pass = false;

    const double p = linalg::anti_concentration_constant();
    for (long t : sample_rounds) {
        double inv_t2 = 1.0 / (static_cast<double>(t) * static_cast<double>(t));

        // (b) E^theta failure frequency at round t
        RoundStat theta_stat;
        theta_stat.t = t;
        long theta_fail = 0, theta_n = 0;
        // (c) unsaturated play frequency on rounds where E^mu holds
        RoundStat unsat_stat;
        unsat_stat.t = t;
        long unsat = 0, unsat_n = 0;
        // (d) mean X_t across replications
        RoundStat drift_stat;
        drift_stat.t = t;
        double x_sum = 0.0, x_sq = 0.0;
        long x_n = 0;

        for (const auto& run : runs) {
            if (t > static_cast<long>(run.size())) continue;
            const StepTrace& step = run[static_cast<std::size_t>(t - 1)];
            ++theta_n;
            if (!step.e_theta) ++theta_fail;
            if (step.e_mu) {
                ++unsat_n;
                if (!step.saturated_played) ++unsat;
            }
            x_sum += step.x_t;
            x_sq += step.x_t * step.x_t;
            ++x_n;
        }
        if (theta_n == 0) continue;

        theta_stat.samples = theta_n;
        theta_stat.frequency = static_cast<double>(theta_fail) / theta_n;
        theta_stat.threshold = inv_t2 + 3.0 * binomial_se(inv_t2, theta_n);
        theta_stat.ok = theta_stat.frequency <= theta_stat.threshold;
        rep.e_theta.push_back(theta_stat);

        unsat_stat.samples = unsat_n;
        unsat_stat.frequency =
            unsat_n > 0 ? static_cast<double>(unsat) / unsat_n : 1.0;
        double floor = p - inv_t2;
        unsat_stat.threshold =
            floor - 3.0 * binomial_se(unsat_stat.frequency, std::max(unsat_n, 1L));
        unsat_stat.ok = unsat_stat.frequency >= unsat_stat.threshold;
        rep.unsaturated.push_back(unsat_stat);

        drift_stat.samples = x_n;
        drift_stat.frequency = x_sum / x_n;  // mean X_t
        double var = std::max(x_sq / x_n - drift_stat.frequency * drift_stat.frequency, 0.0);
        drift_stat.threshold = 3.0 * std::sqrt(var / x_n);
        drift_stat.ok = drift_stat.frequency <= drift_stat.threshold;
        rep.x_drift.push_back(drift_stat);

        if (!theta_stat.ok || !unsat_stat.ok || !drift_stat.ok) rep.pass = false;
    }
    return rep;
}

}  // namespace banditlab::diag
