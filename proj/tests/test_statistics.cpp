#include "gomea/core.hpp"
#include "gomea/statistics.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

using namespace gomea;

namespace
{

std::vector<double> sample(RandomSource &rng, std::size_t size, std::size_t distinct)
{
    std::vector<double> v(size);
    for (auto &x : v)
        x = static_cast<double>(rng.below(distinct));
    return v;
}

} // namespace

TEST_CASE("Mann-Whitney small examples")
{
    const std::vector<double> low{1, 2, 3}, high{4, 5, 6};
    CHECK(std::abs(mann_whitney_less(low, high) - 0.05) < 1e-12);
    // Completely separated the wrong way: every arrangement is at most as extreme.
    CHECK(mann_whitney_less(high, low) == 1.0);
    const std::vector<double> same{7, 7, 7};
    CHECK(mann_whitney_less(same, same) >= 0.5);
    CHECK_THROWS(mann_whitney_less(std::vector<double>{}, low));
}

TEST_CASE("Mann-Whitney exact matches enumeration")
{
    RandomSource rng(21);
    for (int trial = 0; trial < 400; ++trial)
    {
        const std::size_t na = 1 + rng.below(6);
        const std::size_t nb = 1 + rng.below(6);
        // Few distinct values so ties are common.
        const std::size_t distinct = trial % 2 == 0 ? 4 : 1000;
        const auto a = sample(rng, na, distinct);
        const auto b = sample(rng, nb, distinct);
        const auto [p_ab, tie_ab] = oracle::mann_whitney_enumerate(a, b);
        const auto [p_ba, tie_ba] = oracle::mann_whitney_enumerate(b, a);
        CHECK(std::abs(mann_whitney_less(a, b) - p_ab) < 1e-9);
        CHECK(std::abs(mann_whitney_less(b, a) - p_ba) < 1e-9);
        // Both tails share exactly the boundary mass.
        CHECK(std::abs(mann_whitney_less(a, b) + mann_whitney_less(b, a) - (1.0 + tie_ab)) < 1e-9);
        CHECK(std::abs(tie_ab - tie_ba) < 1e-9);
    }
}

TEST_CASE("Mann-Whitney exact at the size limit")
{
    RandomSource rng(5);
    const auto a = sample(rng, 8, 50);
    const auto b = sample(rng, 12, 50);
    const auto [p, tie] = oracle::mann_whitney_enumerate(a, b);
    (void)tie;
    CHECK(std::abs(mann_whitney_less(a, b) - p) < 1e-9);
}

TEST_CASE("Mann-Whitney normal approximation")
{
    std::vector<double> a, b;
    for (int i = 0; i < 50; ++i)
    {
        a.push_back(i);
        b.push_back(i + 25);
    }
    const double p = mann_whitney_less(a, b);
    CHECK(p < 1e-4);
    CHECK(mann_whitney_less(b, a) > 0.9999);
    // Identical samples sit near one half (continuity correction pushes it up).
    const double mid = mann_whitney_less(a, a);
    CHECK(mid > 0.5);
    CHECK(mid < 0.55);

    // Close to the exact value for moderately sized samples.
    RandomSource rng(8);
    const auto x = sample(rng, 9, 1000);
    const auto y = sample(rng, 9, 1000);
    std::vector<double> xs(x.begin(), x.end()), ys(y.begin(), y.end());
    const auto [exact, tie] = oracle::mann_whitney_enumerate(xs, ys);
    (void)tie;
    CHECK(std::abs(mann_whitney_less(x, y) - exact) < 0.02);
}

TEST_CASE("order statistics and summaries match sorting")
{
    RandomSource rng(13);
    for (int trial = 0; trial < 100; ++trial)
    {
        const std::size_t m = 1 + rng.below(80);
        std::vector<double> v(m);
        for (auto &x : v)
            x = rng.uniform01() * 1000.0;
        std::vector<double> sorted = v;
        std::sort(sorted.begin(), sorted.end());

        const OrderSummary s = summarize(v);
        CHECK(s.count == m);
        const double expected_median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
        CHECK(s.median == expected_median);
        CHECK(s.lower == oracle::order_statistic(v, s.lower_rank));
        CHECK(s.upper == oracle::order_statistic(v, s.upper_rank));
        CHECK(s.lower_rank + s.upper_rank == m + 1);
        CHECK(s.lower <= s.median);
        CHECK(s.median <= s.upper);
        if (m >= 5)
            CHECK(s.lower_rank == 3);
        for (std::size_t k = 1; k <= m; k += 7)
            CHECK(order_statistic(v, k) == sorted[k - 1]);
    }
    std::vector<double> fifty(50);
    for (std::size_t i = 0; i < 50; ++i)
        fifty[i] = static_cast<double>(50 - i);
    const OrderSummary s = summarize(fifty);
    CHECK(s.lower == 3);
    CHECK(s.upper == 48);
    CHECK_THROWS(order_statistic(fifty, 0));
    CHECK_THROWS(summarize(std::vector<double>{}));
}

TEST_CASE("ranking configurations")
{
    std::vector<ConfigScores> two{{"A", {10.0, 5.0}}, {"B", {20.0, 7.0}}};
    auto r = rank_configs(two);
    REQUIRE(r.size() == 2);
    CHECK(r[0].name == "A");
    CHECK(r[0].average_rank == 1.0);
    CHECK(r[1].average_rank == 2.0);

    std::vector<ConfigScores> with_failure{{"A", {10.0, 5.0}}, {"B", {20.0, 7.0}}, {"C", {1.0, std::nullopt}}};
    r = rank_configs(with_failure);
    REQUIRE(r.size() == 2);
    CHECK(std::none_of(r.begin(), r.end(), [](const RankedConfig &c) { return c.name == "C"; }));

    std::vector<ConfigScores> tied{{"A", {3.0}}, {"B", {3.0}}, {"C", {1.0}}};
    r = rank_configs(tied);
    REQUIRE(r.size() == 3);
    CHECK(r[0].name == "C");
    CHECK(r[0].average_rank == 1.0);
    CHECK(r[1].average_rank == 2.5);
    CHECK(r[2].average_rank == 2.5);
    CHECK(r[1].name == "A");
}
