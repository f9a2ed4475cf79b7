#include <doctest.h>

#include <cmath>

#include "banditlab/errors.hpp"
#include "banditlab/policy.hpp"

using namespace banditlab;
using namespace banditlab::policy;
using linalg::Matrix;
using linalg::Vector;

namespace {
Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

// Batch oracle: rebuild B and mu_hat from scratch out of the raw updates.
struct BatchOracle {
    Matrix B;
    Vector f;
    explicit BatchOracle(int d) : B(Matrix::Identity(d, d)), f(Vector::Zero(d)) {}
    void add(const Vector& b, double r) {
        B += b * b.transpose();
        f += b * r;
    }
    Vector mu_hat() const { return B.ldlt().solve(f); }
};
}  // namespace

TEST_CASE("init_state") {
    PosteriorState s = init_state(3);
    CHECK(s.B.isApprox(Matrix::Identity(3, 3)));
    CHECK(s.B_inv.isApprox(Matrix::Identity(3, 3)));
    CHECK(s.mu_hat.isZero());
    CHECK(s.t == 1);

    PosteriorState s1 = init_state(1);
    CHECK(s1.B(0, 0) == 1.0);
    CHECK(s1.mu_hat(0) == 0.0);

    CHECK_THROWS_AS(init_state(0), ConfigError);

    // identity metric at t = 1
    Vector b = vec2(0.3, -0.7);
    PosteriorState s2 = init_state(2);
    CHECK(linalg::mahalanobis_width(b, s2.B_inv) == doctest::Approx(b.norm()));
}

TEST_CASE("v_schedule") {
    SamplerConfig cfg;
    cfg.R = 1.0;
    cfg.d = 2;
    cfg.delta = 0.1;

    CHECK(v_schedule(cfg, 10) == doctest::Approx(9.104562776310878).epsilon(1e-12));

    cfg.R = 0.0;
    CHECK(v_schedule(cfg, 10) == 0.0);

    cfg.R = 1.0;
    cfg.v_mode = VMode::kFixedHorizon;
    cfg.horizon = 10;
    for (long t : {1L, 3L, 10L})
        CHECK(v_schedule(cfg, t) == doctest::Approx(9.104562776310878));

    // anytime schedule is monotone nondecreasing, log floor included
    cfg.v_mode = VMode::kAnytime;
    cfg.delta = 0.9;
    double prev = 0.0;
    for (long t = 1; t <= 50; ++t) {
        double v = v_schedule(cfg, t);
        CHECK(v >= prev);
        CHECK(v >= cfg.R * std::sqrt(9.0 * cfg.d));  // floor: ln >= 1
        prev = v;
    }
}

TEST_CASE("sample_parameter") {
    PosteriorState s = init_state(2);
    Rng rng(1);
    CHECK(sample_parameter(s, 0.0, rng) == s.mu_hat);

    // fresh state, v = 1: empirical covariance close to identity
    const int n = 100000;
    double c00 = 0, c11 = 0, c01 = 0;
    for (int i = 0; i < n; ++i) {
        Vector x = sample_parameter(s, 1.0, rng);
        c00 += x(0) * x(0);
        c11 += x(1) * x(1);
        c01 += x(0) * x(1);
    }
    CHECK(c00 / n == doctest::Approx(1.0).epsilon(0.05));
    CHECK(c11 / n == doctest::Approx(1.0).epsilon(0.05));
    CHECK(std::abs(c01 / n) < 0.05);

    // after one update with b = e1, marginal variances are v^2/2 and v^2
    posterior_update(s, vec2(1, 0), 0.5);
    double v = 2.0;
    double m0 = 0, m1 = 0, q0 = 0, q1 = 0;
    for (int i = 0; i < n; ++i) {
        Vector x = sample_parameter(s, v, rng);
        m0 += x(0);
        m1 += x(1);
        q0 += x(0) * x(0);
        q1 += x(1) * x(1);
    }
    m0 /= n;
    m1 /= n;
    CHECK(q0 / n - m0 * m0 == doctest::Approx(v * v / 2.0).epsilon(0.05));
    CHECK(q1 / n - m1 * m1 == doctest::Approx(v * v).epsilon(0.05));
}

TEST_CASE("select_arm") {
    FiniteSlate slate{{vec2(1, 0), vec2(0, 1)}};
    CHECK(select_arm(slate, vec2(1, 0)) == 0);
    CHECK(select_arm(slate, vec2(0, 0)) == 0);  // tie -> lowest index

    FiniteSlate slate3{{vec2(1, 0), vec2(0.5, 0.5), vec2(0, 1)}};
    CHECK(select_arm(slate3, vec2(0.3, 0.9)) == 2);

    CHECK_THROWS_AS(select_arm(FiniteSlate{}, vec2(1, 0)), ConfigError);
}

TEST_CASE("select_arm is scale invariant") {
    Rng rng(55);
    for (int trial = 0; trial < 100; ++trial) {
        FiniteSlate slate;
        for (int i = 0; i < 4; ++i) {
            Vector b(3);
            for (int k = 0; k < 3; ++k) b(k) = rng.next_gaussian();
            slate.arms.push_back(b / std::max(b.norm(), 1.0));
        }
        Vector mu(3);
        for (int k = 0; k < 3; ++k) mu(k) = rng.next_gaussian();
        double c = 0.01 + 100.0 * rng.next_double();
        CHECK(select_arm(slate, mu) == select_arm(slate, (c * mu).eval()));
    }
}

TEST_CASE("select_continuous") {
    UnitBall ball{2};
    Vector out = select_continuous(ball, vec2(3, 4));
    CHECK(out(0) == doctest::Approx(0.6));
    CHECK(out(1) == doctest::Approx(0.8));
    CHECK(out.dot(vec2(3, 4)) == doctest::Approx(5.0));

    CHECK(select_continuous(ball, vec2(0, 0)) == Vector::Unit(2, 0));
    CHECK(select_continuous(ball, vec2(-1, 0)) == vec2(-1, 0));
}

TEST_CASE("posterior_update") {
    PosteriorState s = init_state(2);
    posterior_update(s, vec2(1, 0), 1.0);
    Matrix expectB(2, 2);
    expectB << 2, 0, 0, 1;
    CHECK(s.B.isApprox(expectB));
    CHECK(s.f == vec2(1, 0));
    CHECK(s.mu_hat(0) == doctest::Approx(0.5));
    CHECK(s.mu_hat(1) == doctest::Approx(0.0));
    CHECK(s.t == 2);

    // zero context: nothing moves but the counter
    PosteriorState z = init_state(2);
    posterior_update(z, vec2(0, 0), 3.0);
    CHECK(z.B.isApprox(Matrix::Identity(2, 2)));
    CHECK(z.f.isZero());
    CHECK(z.t == 2);

    CHECK_THROWS_AS(posterior_update(s, vec2(1, 0), std::nan("")), DataError);
}

TEST_CASE("incremental state equals batch recomputation") {
    Rng rng(202);
    const int d = 4;
    PosteriorState s = init_state(d);
    BatchOracle oracle(d);
    for (int k = 0; k < 2000; ++k) {
        Vector b(d);
        for (int i = 0; i < d; ++i) b(i) = rng.next_gaussian();
        b /= std::max(b.norm(), 1.0);
        double r = rng.next_gaussian();
        posterior_update(s, b, r);
        oracle.add(b, r);
    }
    CHECK(s.B.isApprox(oracle.B, 1e-8));
    CHECK(s.mu_hat.isApprox(oracle.mu_hat(), 1e-8));
    CHECK((s.B * s.B_inv).isApprox(Matrix::Identity(d, d), 1e-8));
}

TEST_CASE("maintained inverse drift stays under 1e-6 over 1e4 updates") {
    Rng rng(303);
    const int d = 3;
    PosteriorState s = init_state(d);
    for (int k = 0; k < 10000; ++k) {
        Vector b(d);
        for (int i = 0; i < d; ++i) b(i) = rng.next_gaussian();
        b /= std::max(b.norm(), 1.0);
        posterior_update(s, b, rng.next_gaussian());
    }
    Matrix drift = s.B * s.B_inv - Matrix::Identity(d, d);
    CHECK(drift.cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("posterior contraction on a repeated context") {
    PosteriorState s = init_state(2);
    Vector b = vec2(0.6, 0.3);
    double prev = 1e300;
    for (int n = 1; n <= 50; ++n) {
        posterior_update(s, b, 0.1);
        double w = linalg::mahalanobis_width(b, s.B_inv);
        double expect = b.squaredNorm() / (1.0 + n * b.squaredNorm());
        CHECK(w * w == doctest::Approx(expect).epsilon(1e-9));
        CHECK(w < prev);
        prev = w;
    }
}

TEST_CASE("lin_ucb_select") {
    PosteriorState fresh = init_state(2);
    FiniteSlate slate{{vec2(0.5, 0), vec2(0, 1)}};
    // fresh state: argmax of the widths, i.e. the widest arm
    CHECK(lin_ucb_select(fresh, slate, 1.0) == 1);

    PosteriorState s = init_state(2);
    posterior_update(s, vec2(1, 0), 1.0);
    FiniteSlate basis{{vec2(1, 0), vec2(0, 1)}};
    // scores (0.5 + sqrt(0.5), 1.0) -> arm 0
    CHECK(lin_ucb_select(s, basis, 1.0) == 0);
    // alpha = 0 is pure greedy on mu_hat
    CHECK(lin_ucb_select(s, basis, 0.0) == 0);
}

TEST_CASE("v = 0 Thompson reduces to greedy") {
    Rng rng(404);
    PosteriorState s = init_state(3);
    for (int k = 0; k < 20; ++k) {
        Vector b(3);
        for (int i = 0; i < 3; ++i) b(i) = rng.next_gaussian();
        b /= std::max(b.norm(), 1.0);
        posterior_update(s, b, rng.next_gaussian());

        FiniteSlate slate;
        for (int i = 0; i < 5; ++i) {
            Vector a(3);
            for (int j = 0; j < 3; ++j) a(j) = rng.next_gaussian();
            slate.arms.push_back(a / std::max(a.norm(), 1.0));
        }
        Vector mu_tilde = sample_parameter(s, 0.0, rng);
        CHECK(select_arm(slate, mu_tilde) == lin_ucb_select(s, slate, 0.0));
    }
}

TEST_CASE("uniform_select") {
    Rng rng(9);
    FiniteSlate one{{vec2(1, 0)}};
    CHECK(uniform_select(one, rng) == 0);

    FiniteSlate four{{vec2(1, 0), vec2(0, 1), vec2(-1, 0), vec2(0, -1)}};
    Rng a(77), b(77);
    for (int i = 0; i < 50; ++i)
        CHECK(uniform_select(four, a) == uniform_select(four, b));

    const int n = 100000;
    std::vector<int> counts(4, 0);
    for (int i = 0; i < n; ++i) ++counts[uniform_select(four, rng)];
    for (int c : counts)
        CHECK(static_cast<double>(c) / n == doctest::Approx(0.25).epsilon(0.04));
}
