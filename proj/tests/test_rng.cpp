#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cascade/rng.hpp"

#include <cmath>
#include <vector>

using namespace cascade;

TEST_CASE("engine matches the standard MT19937-64 reference output") {
    // The 10000th draw of a default-seeded mt19937_64 is fixed by the
    // standard; our wrapper must expose the same raw stream.
    std::mt19937_64 reference(5489u);
    Rng rng(5489u);
    std::uint64_t last = 0;
    for (int j = 0; j < 10000; ++j)
        last = rng.next_u64();
    for (int j = 0; j < 9999; ++j)
        reference();
    CHECK(last == 9981545732273789042ULL);
    CHECK(last == reference());
}

TEST_CASE("unit doubles live in [0,1) and are reproducible") {
    Rng a(42), b(42);
    for (int j = 0; j < 1000; ++j) {
        const double u = a.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(u == b.next_unit());
    }
}

TEST_CASE("uniform_below stays in range and covers small supports") {
    Rng rng(7);
    std::vector<int> hits(5, 0);
    for (int j = 0; j < 5000; ++j) {
        const auto v = rng.uniform_below(5);
        REQUIRE(v < 5);
        hits[v]++;
    }
    for (int v = 0; v < 5; ++v)
        CHECK(hits[v] > 800); // each bin near 1000

    CHECK(rng.uniform_below(1) == 0);
}

TEST_CASE("exponential sampling has the right mean") {
    Rng rng(123);
    const double rate = 2.5;
    double sum = 0.0;
    const int n = 200000;
    for (int j = 0; j < n; ++j) {
        const double x = rng.exponential(rate);
        REQUIRE(x >= 0.0);
        sum += x;
    }
    // mean 1/rate, sd 1/rate; 4 sigma band
    CHECK(std::fabs(sum / n - 1.0 / rate) < 4.0 / (rate * std::sqrt(double(n))));
}

TEST_CASE("derive_seed is stable and separates streams") {
    const auto s0 = derive_seed(12345, 0);
    const auto s1 = derive_seed(12345, 1);
    CHECK(s0 == derive_seed(12345, 0));
    CHECK(s0 != s1);
    CHECK(derive_seed(12346, 0) != s0);
}
