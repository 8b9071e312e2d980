#include <doctest.h>

#include <cmath>

#include "lifecd/distribution.hpp"
#include "test_support.hpp"

using namespace lifecd;

namespace {

/// Test-side convolution oracle, independent of the library path.
std::vector<double> brute_convolve(const DelayDistribution& a, const DelayDistribution& b) {
    std::vector<double> c(static_cast<std::size_t>(a.n_max()) + 1, 0.0);
    for (int k = 0; k <= a.n_max(); ++k)
        for (int i = 0; i <= k; ++i) c[static_cast<std::size_t>(k)] += a.pmf(i) * b.pmf(k - i);
    return c;
}

DelayDistribution random_dist(std::mt19937_64& rng, int n_max) {
    // geometric pushed through a couple of random compositions
    auto d = DelayDistribution::geometric(test::uniform_in(rng, 0.0, 0.9), n_max);
    if (rng() % 2)
        d = sum(d, DelayDistribution::geometric(test::uniform_in(rng, 0.0, 0.9), n_max));
    if (rng() % 2)
        d = max_combine(d, DelayDistribution::geometric(test::uniform_in(rng, 0.0, 0.9), n_max));
    return d;
}

} // namespace

TEST_CASE("geometric: basic values") {
    auto g = DelayDistribution::geometric(0.5, 64);
    CHECK(g.pmf(0) == 0.0);
    CHECK(g.pmf(1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(g.pmf(2) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g.cdf(2) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("geometric: p = 0 is a point mass at one round") {
    auto g = DelayDistribution::geometric(0.0, 8);
    CHECK(g.pmf(1) == 1.0);
    CHECK(g.cdf(0) == 0.0);
    CHECK(g.cdf(1) == 1.0);
    CHECK(g.tail_mass() == 0.0);
}

TEST_CASE("geometric: expectation is 1/(1-p)") {
    auto g = DelayDistribution::geometric(0.3, 512);
    CHECK(expectation(g) == doctest::Approx(1.0 / 0.7).epsilon(1e-9));
}

TEST_CASE("geometric: closed forms hold at random parameters") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 200; ++t) {
        double p = test::uniform_in(rng, 0.0, 0.999);
        auto g = DelayDistribution::geometric(p, 256);
        int k = 1 + static_cast<int>(rng() % 256);
        CHECK(g.pmf(k) == doctest::Approx(std::pow(p, k - 1) * (1 - p)).epsilon(1e-12));
        CHECK(g.cdf(k) == doctest::Approx(1.0 - std::pow(p, k)).epsilon(1e-12));
    }
}

TEST_CASE("geometric: domain errors") {
    CHECK_THROWS_AS(DelayDistribution::geometric(1.0, 8), DomainError);
    CHECK_THROWS_AS(DelayDistribution::geometric(-0.1, 8), DomainError);
}

TEST_CASE("sum: convolution of two geometric(0.5)") {
    auto g = DelayDistribution::geometric(0.5, 128);
    auto s = sum(g, g);
    // negative binomial: pmf[k] = (k-1) * 0.25 * 0.5^(k-2)
    CHECK(s.pmf(2) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(s.pmf(3) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(s.pmf(4) == doctest::Approx(0.1875).epsilon(1e-12));
    auto brute = brute_convolve(g, g);
    for (int k = 0; k <= 128; ++k)
        CHECK(s.pmf(k) == doctest::Approx(brute[static_cast<std::size_t>(k)]).epsilon(1e-12));
}

TEST_CASE("sum: point mass at zero is the identity") {
    auto x = DelayDistribution::geometric(0.4, 64);
    auto s = sum(x, DelayDistribution::point_mass(0, 64));
    for (int k = 0; k <= 64; ++k) CHECK(s.pmf(k) == doctest::Approx(x.pmf(k)).epsilon(1e-15));
}

TEST_CASE("sum: expectations add") {
    auto s = sum(DelayDistribution::geometric(0.2, 512), DelayDistribution::geometric(0.3, 512));
    CHECK(expectation(s) == doctest::Approx(1.25 + 1.0 / 0.7).epsilon(1e-6));
}

TEST_CASE("sum: commutative and associative") {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 20; ++t) {
        auto a = DelayDistribution::geometric(test::uniform_in(rng, 0.0, 0.9), 96);
        auto b = DelayDistribution::geometric(test::uniform_in(rng, 0.0, 0.9), 96);
        auto c = DelayDistribution::geometric(test::uniform_in(rng, 0.0, 0.9), 96);
        auto ab = sum(a, b);
        auto ba = sum(b, a);
        auto ab_c = sum(ab, c);
        auto a_bc = sum(a, sum(b, c));
        for (int k = 0; k <= 96; ++k) {
            CHECK(ab.pmf(k) == doctest::Approx(ba.pmf(k)).epsilon(1e-12));
            CHECK(ab_c.pmf(k) == doctest::Approx(a_bc.pmf(k)).epsilon(1e-12));
        }
    }
}

TEST_CASE("sum: length mismatch rejected") {
    CHECK_THROWS_AS(
        sum(DelayDistribution::geometric(0.5, 32), DelayDistribution::geometric(0.5, 64)),
        LengthMismatch);
}

TEST_CASE("max_combine: single input unchanged") {
    auto g = DelayDistribution::geometric(0.5, 64);
    const DelayDistribution one[] = {g};
    auto m = max_combine(std::span<const DelayDistribution>(one));
    for (int k = 0; k <= 64; ++k) CHECK(m.cdf(k) == doctest::Approx(g.cdf(k)).epsilon(1e-15));
}

TEST_CASE("max_combine: two geometric(0.5)") {
    auto g = DelayDistribution::geometric(0.5, 512);
    auto m = max_combine(g, g);
    CHECK(m.cdf(1) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(m.cdf(2) == doctest::Approx(0.5625).epsilon(1e-12));
    CHECK(expectation(m) == doctest::Approx(8.0 / 3.0).epsilon(1e-9)); // 2*sum .5^k - sum .25^k
}

TEST_CASE("max_combine: empty list rejected") {
    CHECK_THROWS_AS(max_combine(std::span<const DelayDistribution>{}), EmptyList);
}

TEST_CASE("max_combine: point mass at zero is the identity, result below inputs") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 20; ++t) {
        auto a = random_dist(rng, 128);
        auto id = max_combine(a, DelayDistribution::point_mass(0, 128));
        for (int k = 0; k <= 128; ++k) CHECK(id.cdf(k) == doctest::Approx(a.cdf(k)).epsilon(1e-15));
        auto b = random_dist(rng, 128);
        auto m = max_combine(a, b);
        for (int k = 0; k <= 128; ++k)
            CHECK(m.cdf(k) <= std::min(a.cdf(k), b.cdf(k)) + 1e-15);
    }
}

TEST_CASE("jensen: expected max dominates max of expectations, strictly for two geometrics") {
    auto a = DelayDistribution::geometric(0.4, 512);
    auto b = DelayDistribution::geometric(0.6, 512);
    double em = expectation(max_combine(a, b));
    CHECK(em >= std::max(expectation(a), expectation(b)));
    CHECK(em > std::max(expectation(a), expectation(b)) + 1e-3);
}

TEST_CASE("expectation of a point mass at zero") {
    CHECK(expectation(DelayDistribution::point_mass(0, 4)) == 0.0);
}

TEST_CASE("conservation after compositions") {
    std::mt19937_64 rng(37);
    for (int t = 0; t < 50; ++t) {
        auto d = random_dist(rng, 64); // short arrays leave visible tails
        CHECK(d.cdf(d.n_max()) + d.tail_mass() == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("linearity of expectation under truncation") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 30; ++t) {
        int n_max = 256;
        auto a = DelayDistribution::geometric(test::uniform_in(rng, 0.0, 0.8), n_max);
        auto b = DelayDistribution::geometric(test::uniform_in(rng, 0.0, 0.8), n_max);
        auto s = sum(a, b);
        double slack = 10.0 * std::max(s.tail_mass(), 1e-15) * n_max + 1e-9;
        CHECK(std::abs(expectation(s) - expectation(a) - expectation(b)) <= slack);
    }
}

TEST_CASE("deadline_quantile") {
    auto g = DelayDistribution::geometric(0.5, 64);
    CHECK(deadline_quantile(g, 0.9) == 4); // cdf[3] = 0.875 < 0.9 <= cdf[4]
    CHECK(deadline_quantile(DelayDistribution::point_mass(1, 8), 0.5) == 1);
    CHECK(deadline_quantile(DelayDistribution::point_mass(1, 8), 0.999999) == 1);

    auto heavy = DelayDistribution::geometric(0.9, 4); // cdf[4] = 1 - 0.9^4 ~ 0.344
    CHECK_THROWS_AS(deadline_quantile(heavy, 0.5), TailTooHeavy);
    CHECK_THROWS_AS(deadline_quantile(g, 0.0), DomainError);
    CHECK_THROWS_AS(deadline_quantile(g, 1.0), DomainError);
}

TEST_CASE("deadline_quantile is nondecreasing in tau") {
    std::mt19937_64 rng(43);
    for (int t = 0; t < 25; ++t) {
        auto d = random_dist(rng, 512);
        double cap = d.cdf(d.n_max());
        int prev = 0;
        for (double tau = 0.05; tau < cap; tau += 0.05) {
            int k = deadline_quantile(d, tau);
            CHECK(k >= prev);
            prev = k;
        }
    }
}

TEST_CASE("truncation_length: Markov seed") {
    CHECK(truncation_length(5, 0.6, 0.01, 1 << 20).length == 1250);
    CHECK_FALSE(truncation_length(5, 0.6, 0.01, 1 << 20).capped);

    // p_max = 0 substitutes to ceil(n/eps)
    CHECK(truncation_length(7, 0.0, 0.01, 1 << 20).length == 700);

    auto capped = truncation_length(5, 0.6, 0.01, 100);
    CHECK(capped.length == 100);
    CHECK(capped.capped);

    CHECK_THROWS_AS(truncation_length(0, 0.5, 0.01, 100), DomainError);
    CHECK_THROWS_AS(truncation_length(5, 1.0, 0.01, 100), DomainError);
    CHECK_THROWS_AS(truncation_length(5, 0.5, 0.0, 100), DomainError);
}

TEST_CASE("pmf/cdf consistency") {
    std::mt19937_64 rng(47);
    for (int t = 0; t < 30; ++t) {
        auto d = random_dist(rng, 128);
        CHECK(d.pmf(0) == doctest::Approx(d.cdf(0)).epsilon(1e-12));
        for (int k = 1; k <= d.n_max(); ++k) {
            CHECK(d.pmf(k) >= 0.0);
            CHECK(d.cdf(k) >= d.cdf(k - 1));
            CHECK(d.pmf(k) == doctest::Approx(d.cdf(k) - d.cdf(k - 1)).epsilon(1e-12));
        }
    }
}
