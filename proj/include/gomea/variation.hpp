#pragma once

#include "gomea/core.hpp"
#include "gomea/linkage.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace gomea
{

struct VariationFlags
{
    bool use_eds = false;
    bool use_fi = false;
    bool conditional = false;
};

/// One accepted donor copy during the mixing phase.
struct MixingStep
{
    std::size_t element = 0;
    std::size_t donor = 0;
};

/// Everything a mixing call reads besides the solution itself. The
/// evaluator owns the run's elitist and evaluation budget.
struct MixingContext
{
    std::span<const Solution> donor_pool;
    const LinkageModel &model;
    Evaluator &evaluator;
    /// Optional log of accepted (element, donor) copies, excluding forced improvements.
    std::vector<MixingStep> *trace = nullptr;
};

/// True iff offspring and donor agree on every index in conditioned that is
/// also in processed. `processed` is a membership mask over all variables.
bool check_donor(const Genotype &offspring, const Genotype &donor, std::span<const std::size_t> conditioned,
                 const std::vector<bool> &processed);

/// Gene-pool optimal mixing. With flags.conditional set this is conditional
/// GOM and the model must carry dependency sets. The result is never worse
/// than the input.
Solution gom(const Solution &input, const MixingContext &context, const VariationFlags &flags, RandomSource &rng);

/// Conditional GOM; same as gom() with flags.conditional forced on.
Solution cgom(const Solution &input, const MixingContext &context, VariationFlags flags, RandomSource &rng);

/// Forced-improvement phase with the elitist as the only donor. `offspring`
/// must be evaluated. Returns true when a strict improvement over the
/// offspring's fitness was found; otherwise the offspring is overwritten by
/// the elitist.
bool forced_improvement(Solution &offspring, const MixingContext &context, const VariationFlags &flags);

} // namespace gomea
