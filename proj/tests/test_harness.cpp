#include "gomea/harness.hpp"

#include <catch_amalgamated.hpp>

#include <set>

using namespace gomea;

namespace
{

SizeTrial synthetic(std::size_t n, std::size_t threshold, std::vector<std::size_t> &tested)
{
    tested.push_back(n);
    SizeTrial t;
    t.population_size = n;
    t.success = n >= threshold;
    // Cost grows with size, so the smallest success is also the cheapest.
    t.median_evaluations = static_cast<double>(100 * n);
    return t;
}

SchemeConfig gomea_best()
{
    SchemeConfig c = preset("gomea-best");
    c.population_size = 2;
    return c;
}

} // namespace

TEST_CASE("bisection on a threshold predicate")
{
    std::vector<std::size_t> tested;
    const BisectionResult r = bisect([&](std::size_t n) { return synthetic(n, 10, tested); }, 1000);
    CHECK(r.solved);
    CHECK(r.minimal_success_size == 10);
    CHECK(r.best_evals_size == 10);
    CHECK(r.median_evaluations_at_best == 1000.0);
    REQUIRE(tested.size() >= 4);
    CHECK(std::vector<std::size_t>(tested.begin(), tested.begin() + 4) == std::vector<std::size_t>{2, 4, 8, 16});
    // Integer search between 8 and 16.
    CHECK(tested.size() == 4 + 3);
    CHECK(r.trial_for(12) != nullptr);
    CHECK(r.trial_for(3) == nullptr);

    for (std::size_t threshold : {1, 2, 3, 5, 17, 64, 65, 999})
    {
        std::vector<std::size_t> seen;
        const BisectionResult t = bisect([&](std::size_t n) { return synthetic(n, threshold, seen); }, 5000);
        CHECK(t.minimal_success_size == std::max<std::size_t>(2, threshold));
        CHECK(std::set<std::size_t>(seen.begin(), seen.end()).size() == seen.size());
    }
}

TEST_CASE("bisection prefers the cheapest successful size")
{
    std::vector<std::size_t> tested;
    const BisectionResult r = bisect(
        [&](std::size_t n) {
            SizeTrial t = synthetic(n, 10, tested);
            // Larger sizes converge faster here.
            t.median_evaluations = 10000.0 / static_cast<double>(n);
            return t;
        },
        1000);
    CHECK(r.minimal_success_size == 10);
    CHECK(r.best_evals_size == 16);
}

TEST_CASE("bisection gives up at the population cap")
{
    std::vector<std::size_t> tested;
    const BisectionResult r = bisect([&](std::size_t n) { return synthetic(n, 100000, tested); }, 64);
    CHECK_FALSE(r.solved);
    CHECK(tested.back() == 64);
    CHECK(r.trials.size() == 6);
}

TEST_CASE("OneMax population sizing")
{
    const auto problem = certified_instance(ProblemKind::OneMax, 16, 0);
    const auto seeds = run_seeds(1, 10);
    const BisectionResult r = bisect_population_size(gomea_best(), problem, seeds, ExperimentCaps{});
    REQUIRE(r.solved);
    const SizeTrial *best = r.trial_for(r.best_evals_size);
    REQUIRE(best != nullptr);
    CHECK(best->runs.size() == seeds.size());
    for (const auto &run : best->runs)
        CHECK(run.success);

    // The search stopped each failing size at its first failed run.
    for (const auto &t : r.trials)
    {
        if (!t.success)
        {
            CHECK_FALSE(t.runs.back().success);
            for (std::size_t i = 0; i + 1 < t.runs.size(); ++i)
                CHECK(t.runs[i].success);
        }
    }

    CHECK(r.median_evaluations_at_best <= r.trial_for(r.minimal_success_size)->median_evaluations);
    if (const SizeTrial *half = r.trial_for(r.minimal_success_size / 2))
        CHECK_FALSE(half->success);

    const BisectionResult again = bisect_population_size(gomea_best(), problem, seeds, ExperimentCaps{});
    CHECK(again.minimal_success_size == r.minimal_success_size);
    CHECK(again.median_evaluations_at_best == r.median_evaluations_at_best);
}

TEST_CASE("bisection input checks")
{
    const auto seeds = run_seeds(1, 3);
    CHECK_THROWS_AS(bisect_population_size(preset("gomea-p3-best"), ProblemInstance::onemax(8), seeds, ExperimentCaps{}),
                    ConfigError);
    const auto nk = generate_instance(ProblemKind::NkS1, 20, 1);
    CHECK_THROWS_AS(bisect_population_size(gomea_best(), nk, seeds, ExperimentCaps{}), ConfigError);
}

TEST_CASE("an evaluation cap makes bisection fail")
{
    ExperimentCaps caps;
    caps.max_evaluations = 50;
    caps.max_population = 256;
    const auto problem = certified_instance(ProblemKind::Trap55, 40, 0);
    const BisectionResult r = bisect_population_size(gomea_best(), problem, run_seeds(2, 5), caps);
    CHECK_FALSE(r.solved);
    for (const auto &t : r.trials)
        CHECK_FALSE(t.success);
}

TEST_CASE("certified instances")
{
    CHECK(certified_instance(ProblemKind::NkS1, 20, 1).optimum().has_value());
    CHECK(certified_instance(ProblemKind::MaxCutSparse, 16, 1).optimum().has_value());
    CHECK_FALSE(certified_instance(ProblemKind::MaxCutSparse, 36, 1).optimum().has_value());
    CHECK(certified_instance(ProblemKind::Trap55, 640, 1).optimum() == 640.0);
}

TEST_CASE("sweep rows")
{
    const auto seeds = run_seeds(3, 5);
    ExperimentCaps caps;
    CHECK(scalability_sweep(gomea_best(), "gomea-best", ProblemKind::Trap55, {}, seeds, caps, 0).empty());

    std::vector<std::size_t> reported;
    // 7 is not a valid trap length; the next length still runs.
    const auto rows = scalability_sweep(gomea_best(), "gomea-best", ProblemKind::Trap55, {7, 20, 40, 80}, seeds, caps,
                                        0, [&](const SweepRow &row) { reported.push_back(row.length); });
    REQUIRE(rows.size() == 4);
    CHECK(reported == std::vector<std::size_t>{7, 20, 40, 80});
    CHECK_FALSE(rows[0].solved);
    CHECK_FALSE(rows[0].error.empty());
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
        const auto &row = rows[i];
        CHECK(row.error.empty());
        CHECK(row.solved);
        CHECK(row.runs == seeds.size());
        CHECK(row.successes == seeds.size());
        REQUIRE(row.population_size.has_value());
        REQUIRE(row.evaluations.has_value());
        CHECK(row.evaluations->lower <= row.evaluations->median);
        CHECK(row.records.size() == seeds.size());

        // Half the minimal successful size fails whenever it was tested.
        const auto problem = certified_instance(ProblemKind::Trap55, row.length, 0);
        const BisectionResult b = bisect_population_size(gomea_best(), problem, seeds, caps);
        REQUIRE(b.solved);
        CHECK(b.best_evals_size == *row.population_size);
        if (const SizeTrial *half = b.trial_for(b.minimal_success_size / 2))
            CHECK_FALSE(half->success);
        CHECK(b.median_evaluations_at_best <= b.trial_for(b.minimal_success_size)->median_evaluations);
    }

    // An unsolvable configuration yields a failed row, not an exception.
    ExperimentCaps tight;
    tight.max_evaluations = 20;
    tight.max_population = 16;
    const auto failed = scalability_sweep(gomea_best(), "g", ProblemKind::Trap55, {40, 20}, seeds, tight, 0);
    REQUIRE(failed.size() == 2);
    CHECK_FALSE(failed[0].solved);
    CHECK_FALSE(failed[0].error.empty());
    CHECK_FALSE(failed[1].solved);
}

TEST_CASE("parameterless sweep")
{
    ExperimentCaps caps;
    caps.max_evaluations = 1000000;
    const auto rows =
        scalability_sweep(preset("gomea-p3-best"), "p3", ProblemKind::Hiff, {16, 32}, run_seeds(4, 3), caps, 0);
    REQUIRE(rows.size() == 2);
    for (const auto &row : rows)
    {
        CHECK(row.solved);
        CHECK_FALSE(row.population_size.has_value());
    }
}

TEST_CASE("run seeds are stable")
{
    CHECK(run_seeds(9, 4) == run_seeds(9, 4));
    CHECK(run_seeds(9, 4) != run_seeds(10, 4));
    const auto s = run_seeds(9, 100);
    CHECK(std::set<std::uint64_t>(s.begin(), s.end()).size() == 100);
    CHECK(std::vector<std::uint64_t>(s.begin(), s.begin() + 4) == run_seeds(9, 4));
}
