#pragma once

#include <string>
#include <variant>
#include <vector>

#include "banditlab/policy.hpp"
#include "banditlab/rng.hpp"

namespace banditlab::env {

using linalg::Matrix;
using linalg::Vector;
using policy::FiniteSlate;
using policy::UnitBall;

using ContextSet = std::variant<FiniteSlate, UnitBall>;

enum class NoiseFamily { kNone, kBoundedUniform, kGaussian, kRademacher };

// All families are R-sub-Gaussian: None trivially, BoundedUniform and
// Rademacher because they take values in [-R, R], Gaussian by having
// standard deviation R.
struct NoiseKind {
    NoiseFamily family = NoiseFamily::kGaussian;
    double R = 1.0;

    double draw(Rng& rng) const;
};

// Fixed but unknown linear parameter plus noise; hidden from policies.
struct LinearEnvironment {
    Vector mu_star;  // ||mu_star|| <= 1
    NoiseKind noise;

    void validate() const;
};

// History visible to an adaptive adversary: contexts played so far. The
// adversary never sees the current round's noise draws.
struct History {
    std::vector<Vector> played_contexts;
};

struct FixedSlateAdversary {
    FiniteSlate slate;
};
struct IidSphereAdversary {
    int n_arms = 1;
    int d = 1;
};
// Emits the d basis vectors, cyclically shifted by the round index.
struct RotatingBasisAdversary {
    int d = 1;
};
// "orthogonal-drift": contexts concentrated around the minimum-eigenvalue
// direction of B(t) = I + sum b b^T over the history; chases whatever the
// policy has explored least. Falls back to an iid sphere draw at t = 1.
struct OrthogonalDriftAdversary {
    int n_arms = 1;
    int d = 1;
    double spread = 0.2;  // perturbation scale around the weak direction
};
struct UnitBallAdversary {
    int d = 1;
};

using AdversaryKind =
    std::variant<FixedSlateAdversary, IidSphereAdversary,
                 RotatingBasisAdversary, OrthogonalDriftAdversary,
                 UnitBallAdversary>;

// Slate for round t given rounds 1..t-1. Every emitted context has
// ||b|| <= 1; a violation is an internal bug and asserts.
ContextSet generate_contexts(const AdversaryKind& adv, const History& history,
                             long t, Rng& rng);

// b . mu_star + eta, eta ~ NoiseKind, mean zero given the history.
double draw_reward(const Vector& b, const LinearEnvironment& env, Rng& rng);

struct OracleResult {
    int optimal_arm = 0;      // lowest index among ties
    std::vector<double> gaps; // gaps[i] = (b* - b_i) . mu_star >= 0
};

OracleResult oracle(const FiniteSlate& slate, const Vector& mu_star);

// Continuous analogue: the maximizer mu/||mu|| and its value ||mu||.
Vector oracle_ball_arm(const UnitBall& ball, const Vector& mu_star);

// Named hard instances used by the acceptance experiments.
// "greedy-trap": fixed slate {e1, e2}, mu* = (0.4, 0.6); the tie rule makes
//   a greedy policy start on the 0.2-suboptimal arm and lock in.
// "sphere-iid": benign iid unit-sphere contexts.
// "orthogonal-drift": the adaptive weak-direction chaser above.
struct Instance {
    AdversaryKind adversary;
    Vector mu_star;
};
Instance make_instance(const std::string& name, int d, int n_arms);

}  // namespace banditlab::env
