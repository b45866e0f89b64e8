#include "gomea/local_search.hpp"

#include <algorithm>
#include <numeric>

namespace gomea
{

bool sihc(Solution &solution, Evaluator &evaluator, RandomSource &rng)
{
    if (!solution.evaluated)
        evaluator.evaluate(solution);

    std::vector<std::size_t> order(solution.genotype.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng.engine());

    bool improved = false;
    Solution trial = solution;
    for (auto i : order)
    {
        trial.genotype.flip(i);
        evaluator.evaluate(trial);
        if (trial.fitness > solution.fitness)
        {
            solution.genotype.flip(i);
            solution.fitness = trial.fitness;
            improved = true;
        }
        else
        {
            trial.genotype.flip(i);
        }
    }
    return improved;
}

void ehc(Solution &solution, Evaluator &evaluator, RandomSource &rng)
{
    while (sihc(solution, evaluator, rng))
    {
    }
}

void apply_hill_climber(HillClimber kind, Solution &solution, Evaluator &evaluator, RandomSource &rng)
{
    switch (kind)
    {
    case HillClimber::Off:
        if (!solution.evaluated)
            evaluator.evaluate(solution);
        break;
    case HillClimber::SingleIteration:
        sihc(solution, evaluator, rng);
        break;
    case HillClimber::Exhaustive:
        ehc(solution, evaluator, rng);
        break;
    }
}

} // namespace gomea
