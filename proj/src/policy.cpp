#include "banditlab/policy.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "banditlab/errors.hpp"

namespace banditlab::policy {

double floored_log(double x) { return std::log(std::max(x, std::numbers::e)); }

void SamplerConfig::validate() const {
    if (d < 1) throw ConfigError("SamplerConfig: d must be >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw ConfigError("SamplerConfig: delta must lie in (0, 1)");
    if (R < 0.0) throw ConfigError("SamplerConfig: R must be >= 0");
    if (v_mode == VMode::kFixedHorizon && horizon < 1)
        throw ConfigError("SamplerConfig: fixed-horizon mode needs horizon >= 1");
}

PosteriorState init_state(int d) {
    if (d < 1) throw ConfigError("init_state: d must be >= 1");
    PosteriorState s;
    s.B = Matrix::Identity(d, d);
    s.B_inv = Matrix::Identity(d, d);
    s.chol_B = Matrix::Identity(d, d);
    s.f = Vector::Zero(d);
    s.mu_hat = Vector::Zero(d);
    s.t = 1;
    return s;
}

double v_schedule(const SamplerConfig& cfg, long t) {
    if (t < 1) throw ConfigError("v_schedule: t must be >= 1");
    double at = cfg.v_mode == VMode::kFixedHorizon
                    ? static_cast<double>(cfg.horizon)
                    : static_cast<double>(t);
    return cfg.R * std::sqrt(9.0 * cfg.d * floored_log(at / cfg.delta));
}

Vector sample_parameter(const PosteriorState& state, double v, Rng& rng) {
    return linalg::sample_mvn(state.mu_hat, v, state.chol_B, rng);
}

int select_arm(const FiniteSlate& slate, const Vector& mu_tilde) {
    if (slate.arms.empty()) throw ConfigError("select_arm: empty slate");
    int best = 0;
    double best_score = slate.arms[0].dot(mu_tilde);
    for (std::size_t i = 1; i < slate.arms.size(); ++i) {
        double score = slate.arms[i].dot(mu_tilde);
        if (score > best_score) {
            best_score = score;
            best = static_cast<int>(i);
        }
    }
    return best;
}

Vector select_continuous(const UnitBall& ball, const Vector& mu_tilde) {
    if (mu_tilde.size() != ball.d)
        throw ConfigError("select_continuous: dimension mismatch");
    double n = mu_tilde.norm();
    if (n == 0.0) return Vector::Unit(ball.d, 0);
    return mu_tilde / n;
}

void posterior_update(PosteriorState& state, const Vector& b, double r) {
    if (b.size() != state.dim())
        throw ConfigError("posterior_update: dimension mismatch");
    if (!std::isfinite(r)) throw DataError("posterior_update: non-finite reward");
    static std::atomic<bool> warned{false};
    if (b.squaredNorm() > 1.0 + 1e-9 && !warned.exchange(true)) {
        std::fprintf(stderr,
                     "banditlab: warning: context norm %.6g exceeds 1; "
                     "proceeding anyway\n",
                     b.norm());
    }
    state.B = linalg::rank_one_update(state.B, b);
    state.B_inv = linalg::sherman_morrison_inverse(state.B_inv, b);
    linalg::cholesky_rank_one_update(state.chol_B, b);
    state.f += b * r;
    state.t += 1;
    if (++state.updates_since_refresh >= PosteriorState::kRefreshInterval) {
        refresh_state(state);
    } else {
        state.mu_hat = state.B_inv * state.f;
    }
}

void refresh_state(PosteriorState& state) {
    state.chol_B = linalg::cholesky_lower(state.B);
    // B^{-1} = L^{-T} L^{-1} from the fresh factor
    Matrix id = Matrix::Identity(state.dim(), state.dim());
    Matrix Linv = state.chol_B.triangularView<Eigen::Lower>().solve(id);
    state.B_inv = Linv.transpose() * Linv;
    state.B_inv = ((state.B_inv + state.B_inv.transpose()) * 0.5).eval();
    state.mu_hat = state.B_inv * state.f;
    state.updates_since_refresh = 0;
}

int lin_ucb_select(const PosteriorState& state, const FiniteSlate& slate,
                   double alpha) {
    if (slate.arms.empty()) throw ConfigError("lin_ucb_select: empty slate");
    int best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < slate.arms.size(); ++i) {
        const Vector& b = slate.arms[i];
        double score = b.dot(state.mu_hat) +
                       alpha * linalg::mahalanobis_width(b, state.B_inv);
        if (score > best_score) {
            best_score = score;
            best = static_cast<int>(i);
        }
    }
    return best;
}

int uniform_select(const FiniteSlate& slate, Rng& rng) {
    if (slate.arms.empty()) throw ConfigError("uniform_select: empty slate");
    return static_cast<int>(rng.next_index(slate.arms.size()));
}

}  // namespace banditlab::policy
