#include "banditlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <future>

#include "banditlab/errors.hpp"

namespace banditlab::harness {

using diag::StepTrace;
using env::FiniteSlate;
using linalg::Vector;

namespace {

// Stream ids inside one replication; the replication index is the substream.
enum StreamId : std::uint64_t {
    kPolicyStream = 1,
    kRewardStream = 2,
    kCounterfactualStream = 3,
    kAdversaryStream = 4,
};

void apply_overrides(diag::AnalysisConstants& c, const ConstantOverrides& ov) {
    if (ov.ell) c.ell = *ov.ell;
    if (ov.v) {
        c.v = *ov.v;
        c.theta_dev = c.dev_multiplier * c.v;
    }
    if (ov.ell || ov.v) c.g = c.theta_dev + c.ell;
    if (ov.g) c.g = *ov.g;
    if (ov.p) c.p = *ov.p;
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg, int replication) {
    cfg.validate();
    auto start = std::chrono::steady_clock::now();

    const policy::SamplerConfig sampler = cfg.sampler_config();
    const env::LinearEnvironment environment = cfg.environment();
    const env::AdversaryKind adversary = cfg.adversary_kind();
    const std::uint64_t rep = static_cast<std::uint64_t>(replication);

    Rng policy_rng = Rng::derive(cfg.master_seed, kPolicyStream, rep);
    Rng reward_rng = Rng::derive(cfg.master_seed, kRewardStream, rep);
    Rng cf_rng = Rng::derive(cfg.master_seed, kCounterfactualStream, rep);
    Rng adv_rng = Rng::derive(cfg.master_seed, kAdversaryStream, rep);

    policy::PosteriorState state = policy::init_state(cfg.d);
    env::History history;
    history.played_contexts.reserve(cfg.horizon);

    RunResult result;
    result.config_digest = cfg.digest();
    result.replication_index = replication;
    result.master_seed = cfg.master_seed;
    result.trace.reserve(cfg.horizon);

    double y = 0.0;
    double cum_regret = 0.0;
    double s_sum = 0.0;
    Vector spectrum_prev = Vector::Ones(cfg.d);  // spectrum of B(1) = I

    for (long t = 1; t <= cfg.horizon; ++t) {
        env::ContextSet ctx =
            env::generate_contexts(adversary, history, t, adv_rng);

        // The unit-ball case is diagnosed on the two-arm pseudo-slate
        // {optimal, chosen}; everything else is the finite-slate path.
        FiniteSlate slate;
        int chosen = 0;
        Vector mu_tilde;
        bool sampled = false;
        if (const auto* ball = std::get_if<policy::UnitBall>(&ctx)) {
            double v = cfg.policy == "greedy" ? 0.0 : policy::v_schedule(sampler, t);
            if (cfg.overrides.v) v = *cfg.overrides.v;
            mu_tilde = policy::sample_parameter(state, v, policy_rng);
            sampled = true;
            Vector b_chosen = policy::select_continuous(*ball, mu_tilde);
            slate.arms = {env::oracle_ball_arm(*ball, environment.mu_star),
                          b_chosen};
            chosen = 1;
        } else {
            slate = std::get<FiniteSlate>(ctx);
            if (cfg.policy == "ts") {
                double v = policy::v_schedule(sampler, t);
                if (cfg.overrides.v) v = *cfg.overrides.v;
                mu_tilde = policy::sample_parameter(state, v, policy_rng);
                sampled = true;
                chosen = policy::select_arm(slate, mu_tilde);
            } else if (cfg.policy == "linucb") {
                chosen = policy::lin_ucb_select(state, slate, cfg.linucb_alpha);
            } else if (cfg.policy == "greedy") {
                chosen = policy::lin_ucb_select(state, slate, 0.0);
            } else {  // uniform
                chosen = policy::uniform_select(slate, policy_rng);
            }
        }
        const int n_arms = static_cast<int>(slate.arms.size());

        diag::AnalysisConstants constants =
            diag::analysis_constants(sampler, t, n_arms);
        apply_overrides(constants, cfg.overrides);

        std::vector<double> widths(n_arms), predicted(n_arms), theta(n_arms);
        for (int i = 0; i < n_arms; ++i) {
            widths[i] = linalg::mahalanobis_width(slate.arms[i], state.B_inv);
            predicted[i] = slate.arms[i].dot(state.mu_hat);
            theta[i] = sampled ? slate.arms[i].dot(mu_tilde) : predicted[i];
        }

        env::OracleResult oracle = env::oracle(slate, environment.mu_star);
        if (cfg.assert_unit_gaps) {
            for (double gap : oracle.gaps) {
                if (gap > 1.0 + 1e-12)
                    throw DataError("assert_unit_gaps: gap " +
                                    std::to_string(gap) + " exceeds 1");
            }
        }

        const Vector& b_chosen = slate.arms[chosen];
        double reward = env::draw_reward(b_chosen, environment, reward_rng);
        diag::RegretPair regrets = diag::regret_step(
            slate, oracle, chosen, reward, environment, cf_rng);

        diag::EventMuResult e_mu = diag::check_event_mu(
            state, slate, environment.mu_star, constants.ell);
        bool e_theta = diag::check_event_theta(theta, predicted, widths,
                                               constants.theta_dev);
        std::vector<int> saturated =
            diag::saturated_set(oracle.gaps, widths, constants.g);
        bool saturated_played =
            std::binary_search(saturated.begin(), saturated.end(), chosen);
        if (std::binary_search(saturated.begin(), saturated.end(),
                               oracle.optimal_arm))
            result.bound.optimal_unsaturated_ok = false;

        double s_chosen = widths[chosen];
        diag::MartingaleStep ms = diag::martingale_step(
            regrets.gap, e_mu.holds, s_chosen, constants, t, y);
        y = ms.y;
        if (std::abs(ms.x) > ms.x_cap + 1e-9) result.bound.x_bound_ok = false;

        policy::posterior_update(state, b_chosen, reward);
        Vector spectrum_next = linalg::eigen_spectrum(state.B);
        if (!diag::lemma10_holds(s_chosen * s_chosen, spectrum_prev,
                                 spectrum_next))
            result.bound.lemma10_ok = false;
        spectrum_prev = std::move(spectrum_next);
        history.played_contexts.push_back(b_chosen);

        cum_regret += regrets.gap;
        s_sum += s_chosen;

        StepTrace step;
        step.t = t;
        step.chosen = chosen;
        step.optimal = oracle.optimal_arm;
        step.gap_regret = regrets.gap;
        step.realized_regret = regrets.realized;
        step.cum_regret = cum_regret;
        step.s_chosen = s_chosen;
        step.e_mu = e_mu.holds;
        step.e_theta = e_theta;
        step.saturated_played = saturated_played;
        step.x_t = ms.x;
        step.y_t = ms.y;
        step.constants = constants;
        if (t == 1 || t % cfg.thin_stride == 0) {
            step.has_detail = true;
            step.theta = std::move(theta);
            step.widths = std::move(widths);
            step.gaps = oracle.gaps;
            step.mu_margins = std::move(e_mu.margins);
            step.saturated = std::move(saturated);
        }
        result.trace.push_back(std::move(step));
    }

    result.bound.cum_regret = cum_regret;
    result.bound.s_sum = s_sum;
    if (cfg.horizon >= 2) {
        result.bound.s_sum_cap = diag::s_sum_cap(cfg.d, cfg.horizon);
        result.bound.s_sum_ok = s_sum <= result.bound.s_sum_cap;
        result.bound.theorem_envelope =
            diag::theorem_bound(sampler, cfg.horizon, cfg.unit_ball ? 2 : cfg.n_arms);
    }
    // recompute the prefix sum in trace order; must match the stored Y exactly
    double y_check = 0.0;
    for (const StepTrace& step : result.trace) {
        y_check += step.x_t;
        if (y_check != step.y_t) result.bound.telescope_ok = false;
    }

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

std::vector<RunResult> replicate(const ExperimentConfig& cfg, int k) {
    if (k < 1) throw ConfigError("replicate: k must be >= 1");
    std::vector<RunResult> results(k);
    if (cfg.jobs <= 1) {
        for (int i = 0; i < k; ++i) results[i] = run_experiment(cfg, i);
        return results;
    }
    std::vector<std::future<void>> workers;
    std::atomic<int> next{0};
    int n_workers = std::min(cfg.jobs, k);
    for (int w = 0; w < n_workers; ++w) {
        workers.push_back(std::async(std::launch::async, [&]() {
            for (int i = next.fetch_add(1); i < k; i = next.fetch_add(1))
                results[i] = run_experiment(cfg, i);
        }));
    }
    for (auto& f : workers) f.get();
    return results;
}

ScalingReport scaling_study(const ExperimentConfig& base,
                            const std::vector<int>& d_grid,
                            const std::vector<long>& horizon_grid, int k) {
    if (d_grid.empty() || horizon_grid.empty())
        throw ConfigError("scaling_study: grids must be nonempty");
    ScalingReport report;
    long max_T = *std::max_element(horizon_grid.begin(), horizon_grid.end());

    for (int d : d_grid) {
        std::vector<double> log_T, log_R;  // fit points, upper half of horizon
        for (long T : horizon_grid) {
            ExperimentConfig cfg = base;
            cfg.d = d;
            cfg.horizon = T;
            if (!cfg.mu_star.empty() &&
                static_cast<int>(cfg.mu_star.size()) != d) {
                if (cfg.instance.empty()) {
                    // truncate or zero-pad: ||mu|| can only shrink, so the
                    // unit-ball constraint stays satisfied
                    cfg.mu_star.resize(d, 0.0);
                } else {
                    cfg.mu_star.clear();  // fall back to the instance preset
                }
            }
            std::vector<RunResult> runs = replicate(cfg, k);
            ScalingCell cell;
            cell.d = d;
            cell.horizon = T;
            for (const RunResult& r : runs)
                cell.final_regrets.push_back(r.bound.cum_regret);
            std::vector<double> sorted = cell.final_regrets;
            std::sort(sorted.begin(), sorted.end());
            double sum = 0.0, sq = 0.0;
            for (double v : sorted) {
                sum += v;
                sq += v * v;
            }
            cell.mean_regret = sum / k;
            cell.median_regret = k % 2 ? sorted[k / 2]
                                       : 0.5 * (sorted[k / 2 - 1] + sorted[k / 2]);
            cell.stddev =
                std::sqrt(std::max(sq / k - cell.mean_regret * cell.mean_regret, 0.0));
            if (2 * T >= max_T) {
                for (double v : cell.final_regrets) {
                    if (v > 0.0) {
                        log_T.push_back(std::log(static_cast<double>(T)));
                        log_R.push_back(std::log(v));
                    }
                }
            }
            report.cells.push_back(std::move(cell));
        }

        // least squares log R = a + beta log T over the collected points
        ScalingFit fit;
        fit.d = d;
        std::size_t n = log_T.size();
        if (n >= 2) {
            double mx = 0.0, my = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                mx += log_T[i];
                my += log_R[i];
            }
            mx /= n;
            my /= n;
            double sxx = 0.0, sxy = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                sxx += (log_T[i] - mx) * (log_T[i] - mx);
                sxy += (log_T[i] - mx) * (log_R[i] - my);
            }
            if (sxx > 0.0) {
                fit.beta = sxy / sxx;
                fit.log_intercept = my - fit.beta * mx;
                double rss = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    double e = log_R[i] - fit.log_intercept - fit.beta * log_T[i];
                    rss += e * e;
                }
                double se = n > 2 ? std::sqrt(rss / (n - 2) / sxx) : 0.0;
                fit.beta_low = fit.beta - 2.0 * se;
                fit.beta_high = fit.beta + 2.0 * se;
            }
        }
        report.fits.push_back(fit);
    }
    return report;
}

}  // namespace banditlab::harness
