#include "banditlab/environment.hpp"

#include <cassert>
#include <cmath>

#include "banditlab/errors.hpp"

namespace banditlab::env {

double NoiseKind::draw(Rng& rng) const {
    switch (family) {
        case NoiseFamily::kNone:
            return 0.0;
        case NoiseFamily::kBoundedUniform:
            return R * (2.0 * rng.next_double() - 1.0);
        case NoiseFamily::kGaussian:
            return R * rng.next_gaussian();
        case NoiseFamily::kRademacher:
            return rng.next_double() < 0.5 ? -R : R;
    }
    return 0.0;
}

void LinearEnvironment::validate() const {
    if (mu_star.size() < 1)
        throw ConfigError("LinearEnvironment: mu_star must have dim >= 1");
    if (mu_star.norm() > 1.0 + 1e-12)
        throw ConfigError("LinearEnvironment: ||mu_star|| must be <= 1");
    if (noise.R < 0.0) throw ConfigError("LinearEnvironment: R must be >= 0");
}

namespace {

Vector unit_sphere_draw(int d, Rng& rng) {
    Vector v(d);
    double n = 0.0;
    do {
        for (int i = 0; i < d; ++i) v(i) = rng.next_gaussian();
        n = v.norm();
    } while (n == 0.0);
    return v / n;
}

FiniteSlate iid_sphere_slate(int n_arms, int d, Rng& rng) {
    FiniteSlate slate;
    slate.arms.reserve(n_arms);
    for (int i = 0; i < n_arms; ++i) slate.arms.push_back(unit_sphere_draw(d, rng));
    return slate;
}

FiniteSlate orthogonal_drift_slate(const OrthogonalDriftAdversary& adv,
                                   const History& history, Rng& rng) {
    if (history.played_contexts.empty())
        return iid_sphere_slate(adv.n_arms, adv.d, rng);
    Matrix B = Matrix::Identity(adv.d, adv.d);
    for (const Vector& b : history.played_contexts) B += b * b.transpose();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(B);
    if (solver.info() != Eigen::Success)
        throw DegeneracyError("orthogonal-drift adversary: eigensolver failed");
    Vector weak = solver.eigenvectors().col(0);  // smallest eigenvalue
    FiniteSlate slate;
    slate.arms.reserve(adv.n_arms);
    for (int i = 0; i < adv.n_arms; ++i) {
        Vector v = weak;
        for (int k = 0; k < adv.d; ++k)
            v(k) += adv.spread * rng.next_gaussian();
        slate.arms.push_back(v / v.norm());
    }
    return slate;
}

void assert_norms(const FiniteSlate& slate) {
    for (const Vector& b : slate.arms) {
        assert(b.norm() <= 1.0 + 1e-12 && "adversary emitted ||b|| > 1");
        (void)b;
    }
}

}  // namespace

ContextSet generate_contexts(const AdversaryKind& adv, const History& history,
                             long t, Rng& rng) {
    if (static_cast<long>(history.played_contexts.size()) != t - 1)
        throw ConfigError("generate_contexts: history must cover rounds 1..t-1");
    ContextSet out = std::visit(
        [&](const auto& a) -> ContextSet {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, FixedSlateAdversary>) {
                return a.slate;
            } else if constexpr (std::is_same_v<T, IidSphereAdversary>) {
                return iid_sphere_slate(a.n_arms, a.d, rng);
            } else if constexpr (std::is_same_v<T, RotatingBasisAdversary>) {
                FiniteSlate slate;
                for (int i = 0; i < a.d; ++i)
                    slate.arms.push_back(
                        Vector::Unit(a.d, static_cast<int>((t - 1 + i) % a.d)));
                return slate;
            } else if constexpr (std::is_same_v<T, OrthogonalDriftAdversary>) {
                return orthogonal_drift_slate(a, history, rng);
            } else {
                static_assert(std::is_same_v<T, UnitBallAdversary>);
                return UnitBall{a.d};
            }
        },
        adv);
    if (const auto* slate = std::get_if<FiniteSlate>(&out)) assert_norms(*slate);
    return out;
}

double draw_reward(const Vector& b, const LinearEnvironment& env, Rng& rng) {
    return b.dot(env.mu_star) + env.noise.draw(rng);
}

OracleResult oracle(const FiniteSlate& slate, const Vector& mu_star) {
    if (slate.arms.empty()) throw ConfigError("oracle: empty slate");
    OracleResult res;
    std::vector<double> scores(slate.arms.size());
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < slate.arms.size(); ++i) {
        scores[i] = slate.arms[i].dot(mu_star);
        if (scores[i] > best) {
            best = scores[i];
            res.optimal_arm = static_cast<int>(i);
        }
    }
    res.gaps.resize(slate.arms.size());
    for (std::size_t i = 0; i < slate.arms.size(); ++i)
        res.gaps[i] = best - scores[i];
    res.gaps[res.optimal_arm] = 0.0;
    return res;
}

Vector oracle_ball_arm(const UnitBall& ball, const Vector& mu_star) {
    if (mu_star.size() != ball.d)
        throw ConfigError("oracle_ball_arm: dimension mismatch");
    double n = mu_star.norm();
    if (n == 0.0) return Vector::Unit(ball.d, 0);
    return mu_star / n;
}

Instance make_instance(const std::string& name, int d, int n_arms) {
    if (name == "greedy-trap") {
        FiniteSlate slate;
        slate.arms = {Vector::Unit(2, 0), Vector::Unit(2, 1)};
        Vector mu(2);
        mu << 0.4, 0.6;
        return {FixedSlateAdversary{std::move(slate)}, mu};
    }
    if (name == "sphere-iid") {
        Vector mu = Vector::Zero(d);
        mu(0) = 0.8;
        if (d > 1) mu(1) = 0.4;
        return {IidSphereAdversary{n_arms, d}, mu};
    }
    if (name == "orthogonal-drift") {
        Vector mu = Vector::Zero(d);
        mu(0) = 0.8;
        if (d > 1) mu(1) = 0.4;
        return {OrthogonalDriftAdversary{n_arms, d}, mu};
    }
    throw ConfigError("make_instance: unknown instance '" + name + "'");
}

}  // namespace banditlab::env
