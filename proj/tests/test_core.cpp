#include "gomea/core.hpp"
#include "gomea/problems.hpp"
#include "gomea/schemes.hpp"

#include <catch_amalgamated.hpp>

using namespace gomea;

namespace
{

// Counts every call into the wrapped problem.
class CountingProblem : public FitnessFunction
{
  public:
    explicit CountingProblem(const FitnessFunction &inner) : inner_(inner) {}
    std::size_t length() const override { return inner_.length(); }
    double evaluate(const Genotype &g) const override
    {
        ++calls;
        return inner_.evaluate(g);
    }
    std::optional<double> optimum() const override { return inner_.optimum(); }

    mutable std::uint64_t calls = 0;

  private:
    const FitnessFunction &inner_;
};

Solution make(const char *bits)
{
    Solution s;
    s.genotype = Genotype::from_string(bits);
    return s;
}

} // namespace

TEST_CASE("genotype basics")
{
    Genotype g = Genotype::from_string("0110");
    CHECK(g.size() == 4);
    CHECK(g.count_ones() == 2);
    CHECK(g.to_string() == "0110");
    g.flip(0);
    CHECK(g.to_string() == "1110");
    CHECK_THROWS(Genotype::from_string("012"));

    const Genotype a = Genotype::from_string("1100");
    const Genotype b = Genotype::from_string("1001");
    const std::vector<std::size_t> first{0, 1};
    CHECK_FALSE(equal_on(a, b, first));
    const std::vector<std::size_t> zero{0};
    CHECK(equal_on(a, b, zero));
    Genotype c = a;
    copy_on(c, b, first);
    CHECK(c.to_string() == "1000");
}

TEST_CASE("all-ones trap evaluation sets the elitist")
{
    const auto trap = ProblemInstance::trap(ProblemKind::Trap55, 10);
    EvaluationBudget budget;
    Evaluator ev(trap, budget);
    CHECK(ev.elitist() == nullptr);
    Solution s = make("1111111111");
    CHECK(ev.evaluate(s) == 10.0);
    REQUIRE(ev.elitist() != nullptr);
    CHECK(ev.elitist()->fitness == 10.0);
    CHECK(ev.evaluations() == 1);
}

TEST_CASE("elitist only changes on strict improvement")
{
    const auto onemax = ProblemInstance::onemax(4);
    EvaluationBudget budget;
    Evaluator ev(onemax, budget);
    Solution best = make("1100");
    ev.evaluate(best);
    Solution tie = make("0011");
    ev.evaluate(tie);
    CHECK(ev.elitist()->genotype.to_string() == "1100");
    ev.evaluate(best);
    CHECK(ev.elitist()->genotype.to_string() == "1100");
    Solution worse = make("1000");
    ev.evaluate(worse);
    CHECK(ev.elitist()->genotype.to_string() == "1100");
    CHECK(ev.evaluations() == 4);
}

TEST_CASE("budget exhaustion and target stop the run")
{
    const auto onemax = ProblemInstance::onemax(4);
    EvaluationBudget budget;
    budget.max_evaluations = 2;
    Evaluator ev(onemax, budget, 4.0);
    Solution s = make("0000");
    ev.evaluate(s);
    ev.evaluate(s);
    try
    {
        ev.evaluate(s);
        FAIL("expected a stop");
    }
    catch (const RunStopped &stop)
    {
        CHECK(stop.reason() == StopReason::EvaluationLimit);
    }
    CHECK(budget.evaluations_used == 2);

    EvaluationBudget open;
    Evaluator target(onemax, open, 4.0);
    Solution opt = make("1111");
    try
    {
        target.evaluate(opt);
        FAIL("expected a stop");
    }
    catch (const RunStopped &stop)
    {
        CHECK(stop.reason() == StopReason::OptimumReached);
    }
    CHECK(target.target_reached());
    CHECK(open.evaluations_used == 1);
}

TEST_CASE("random solutions are seeded and unbiased")
{
    RandomSource a(42), b(42);
    const Solution x = create_random_solution(4, a);
    const Solution y = create_random_solution(4, b);
    CHECK(x.genotype == y.genotype);
    CHECK_FALSE(x.evaluated);
    CHECK(x.nis == 0);

    RandomSource rng(7);
    int ones = 0;
    for (int i = 0; i < 10000; ++i)
        ones += create_random_solution(1, rng).genotype[0];
    CHECK(ones >= 4700);
    CHECK(ones <= 5300);

    CHECK_THROWS(create_random_solution(0, rng));
}

TEST_CASE("population convergence")
{
    CHECK(population_converged({make("1010"), make("1010")}));
    CHECK_FALSE(population_converged({make("1010"), make("1011")}));
    CHECK(population_converged({make("1010")}));
}

TEST_CASE("average fitness")
{
    auto with = [](std::initializer_list<double> fs) {
        Population p;
        for (double f : fs)
        {
            Solution s = make("0");
            s.fitness = f;
            s.evaluated = true;
            p.push_back(s);
        }
        return p;
    };
    CHECK(average_fitness(with({2, 4})) == 3.0);
    CHECK(average_fitness(with({7})) == 7.0);
    CHECK(average_fitness(with({1, 1, 1})) == 1.0);
}

TEST_CASE("derived seeds are distinct and stable")
{
    CHECK(derive_seed(1, 0) == derive_seed(1, 0));
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("run determinism, elitist monotonicity and evaluation accounting")
{
    const auto trap = generate_instance(ProblemKind::Trap55, 20, 0);
    for (const char *name : {"gomea-best", "cgomea-best", "gomea-p3-best"})
    {
        SchemeConfig config = preset(name);
        if (config.scheme == SchemeKind::Single)
            config.population_size = 16;
        EvaluationBudget budget;
        budget.max_evaluations = 20000;
        const RunRecord a = run(config, trap, budget, 11);
        const RunRecord b = run(config, trap, budget, 11);
        CHECK(a.evaluations == b.evaluations);
        CHECK(a.best_fitness == b.best_fitness);
        CHECK(a.success == b.success);
        CHECK(a.generations == b.generations);
        CHECK(a.termination == b.termination);

        CountingProblem counting(trap);
        const RunRecord c = run(config, counting, budget, 11);
        CHECK(c.evaluations == counting.calls);
        CHECK(c.evaluations == a.evaluations);
    }

    // Elitist trace of a run driven by hand.
    EvaluationBudget budget;
    budget.max_evaluations = 5000;
    Evaluator ev(trap, budget);
    ev.enable_elitist_trace();
    RandomSource rng(3);
    SchemeConfig config = preset("gomea-best");
    config.population_size = 20;
    try
    {
        Population pop = initialize_population(20, config, ev, rng);
        for (int g = 0; g < 50; ++g)
            pop = single_population_generation(pop, config, ev, rng);
    }
    catch (const RunStopped &)
    {
    }
    const auto &trace = ev.elitist_trace();
    REQUIRE(!trace.empty());
    CHECK(std::is_sorted(trace.begin(), trace.end()));
}
