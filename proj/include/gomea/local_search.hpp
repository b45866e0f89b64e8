#pragma once

#include "gomea/core.hpp"

namespace gomea
{

enum class HillClimber
{
    Off,
    SingleIteration,
    Exhaustive,
};

/// Single-iteration hill climber: one pass over all variables in random
/// order, keeping a bit flip only if it strictly improves fitness.
/// Evaluates the solution first if it is not evaluated yet. Returns true iff
/// any flip was kept.
bool sihc(Solution &solution, Evaluator &evaluator, RandomSource &rng);

/// Repeats sihc() until a pass finds no improvement.
void ehc(Solution &solution, Evaluator &evaluator, RandomSource &rng);

/// Dispatches on `kind`; with Off only ensures the solution is evaluated.
void apply_hill_climber(HillClimber kind, Solution &solution, Evaluator &evaluator, RandomSource &rng);

} // namespace gomea
