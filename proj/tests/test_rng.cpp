#include <doctest.h>

#include <cmath>
#include <vector>

#include "banditlab/rng.hpp"

using banditlab::Rng;

TEST_CASE("same key reproduces the same sequence") {
    Rng a = Rng::derive(42, 1, 0);
    Rng b = Rng::derive(42, 1, 0);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct stream ids diverge") {
    Rng a = Rng::derive(42, 1, 0);
    Rng b = Rng::derive(42, 2, 0);
    Rng c = Rng::derive(42, 1, 1);
    CHECK(a.next_u64() != b.next_u64());
    Rng a2 = Rng::derive(42, 1, 0);
    CHECK(a2.next_u64() != c.next_u64());
}

TEST_CASE("doubles land in [0,1)") {
    Rng rng(7);
    for (int i = 0; i < 10000; ++i) {
        double u = rng.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("gaussian moments") {
    Rng rng(123);
    const int n = 100000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        double z = rng.next_gaussian();
        sum += z;
        sq += z * z;
    }
    double mean = sum / n;
    double var = sq / n - mean * mean;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("index draws are uniform over 4") {
    Rng rng(9);
    const int n = 100000;
    std::vector<int> counts(4, 0);
    for (int i = 0; i < n; ++i) ++counts[rng.next_index(4)];
    for (int c : counts)
        CHECK(static_cast<double>(c) / n == doctest::Approx(0.25).epsilon(0.04));
}
