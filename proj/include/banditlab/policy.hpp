#pragma once

#include <optional>
#include <vector>

#include "banditlab/linalg.hpp"
#include "banditlab/rng.hpp"

namespace banditlab::policy {

using linalg::Matrix;
using linalg::Vector;

// ln with the argument clamped below at e, so the result is >= 1. Keeps every
// scale positive at t = 1 and for tiny t/delta ratios.
double floored_log(double x);

enum class VMode { kAnytime, kFixedHorizon };

struct SamplerConfig {
    double R = 1.0;       // sub-Gaussian scale of the reward noise
    double delta = 0.1;   // confidence parameter, in (0, 1)
    int d = 1;            // context dimension
    VMode v_mode = VMode::kAnytime;
    long horizon = 0;     // required for kFixedHorizon

    void validate() const;
};

// Sufficient statistics of the Gaussian posterior N(mu_hat, v^2 B^{-1}).
// B = I_d + sum of b b^T over updates; f = sum of b * r; mu_hat = B^{-1} f.
// B_inv and chol_B are maintained incrementally (Sherman-Morrison and
// cholupdate) with a full refactorization every kRefreshInterval updates to
// cap floating-point drift.
struct PosteriorState {
    Matrix B;
    Matrix B_inv;
    Matrix chol_B;  // lower factor of B
    Vector f;
    Vector mu_hat;
    long t = 1;     // 1 + number of updates applied
    int updates_since_refresh = 0;

    static constexpr int kRefreshInterval = 512;

    int dim() const { return static_cast<int>(f.size()); }
};

struct FiniteSlate {
    std::vector<Vector> arms;  // each ||b|| <= 1
};

struct UnitBall {
    int d = 1;
};

PosteriorState init_state(int d);

// v_t = R sqrt(9 d ln(t/delta)) (anytime) or the same at t = T (fixed
// horizon). Monotone nondecreasing in t; R = 0 collapses the posterior
// sample to mu_hat.
double v_schedule(const SamplerConfig& cfg, long t);

// One draw mu_tilde ~ N(mu_hat, v^2 B^{-1}).
Vector sample_parameter(const PosteriorState& state, double v, Rng& rng);

// argmax_i b_i . mu_tilde; ties broken by lowest index.
int select_arm(const FiniteSlate& slate, const Vector& mu_tilde);

// Unit-ball maximizer mu_tilde / ||mu_tilde||; zero vector -> e_1.
Vector select_continuous(const UnitBall& ball, const Vector& mu_tilde);

// B += b b^T, f += b r, mu_hat = B^{-1} f, t += 1. ||b|| > 1 warns on first
// occurrence and proceeds. Non-finite r -> DataError.
void posterior_update(PosteriorState& state, const Vector& b, double r);

// Recomputes B_inv, chol_B and mu_hat from B and f. Called automatically
// every kRefreshInterval updates.
void refresh_state(PosteriorState& state);

// argmax_i [b_i . mu_hat + alpha * s_i]; ties by lowest index.
int lin_ucb_select(const PosteriorState& state, const FiniteSlate& slate,
                   double alpha);

int uniform_select(const FiniteSlate& slate, Rng& rng);

}  // namespace banditlab::policy
