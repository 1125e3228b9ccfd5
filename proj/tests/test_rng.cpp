#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "rsf/rng.hpp"

using rsf::RngStream;

TEST_SUITE_BEGIN("rng");

TEST_CASE("same seed and stream replay the same sequence") {
    RngStream a(42, 7), b(42, 7);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different streams differ") {
    RngStream a(42, 0), b(42, 1), c(43, 0);
    bool all_equal = true;
    for (int i = 0; i < 16; ++i) {
        const auto x = a.next_u64();
        all_equal = all_equal && x == b.next_u64() && x == c.next_u64();
    }
    CHECK_FALSE(all_equal);
}

TEST_CASE("derive is deterministic and tag-sensitive") {
    RngStream base(5, 0);
    CHECK(base.derive(3, 1).next_u64() == base.derive(3, 1).next_u64());
    CHECK(base.derive(3, 1).next_u64() != base.derive(1, 3).next_u64());
    CHECK(base.derive(0).next_u64() != base.derive(1).next_u64());
}

TEST_CASE("uniform lies in the unit interval") {
    RngStream rng(1, 2);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("uniform_below is in range and roughly uniform") {
    RngStream rng(9, 4);
    std::uint64_t counts[5] = {0, 0, 0, 0, 0};
    const int n = 50000;
    for (int i = 0; i < n; ++i) {
        const auto v = rng.uniform_below(5);
        REQUIRE(v < 5);
        counts[v]++;
    }
    for (auto c : counts) {
        // ~4.5 sigma band around n/5
        CHECK(c > n / 5 - 400);
        CHECK(c < n / 5 + 400);
    }
}

TEST_CASE("normal moments") {
    RngStream rng(2024, 0);
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal();
        sum += x;
        sq += x * x;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_SUITE_END();
