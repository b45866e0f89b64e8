#include "gomea/variation.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gomea
{

bool check_donor(const Genotype &offspring, const Genotype &donor, std::span<const std::size_t> conditioned,
                 const std::vector<bool> &processed)
{
    for (auto v : conditioned)
    {
        if (processed[v] && offspring[v] != donor[v])
            return false;
    }
    return true;
}

namespace
{

const std::vector<std::size_t> no_dependencies;

const std::vector<std::size_t> &dependencies_of(const LinkageModel &model, std::size_t element, bool conditional)
{
    if (!conditional || !model.has_dependencies())
        return no_dependencies;
    return model.dependencies[element];
}

void mark(std::vector<bool> &processed, std::span<const std::size_t> indices)
{
    for (auto v : indices)
        processed[v] = true;
}

// Equal-fitness changes are accepted unless the solution being modified is
// the elitist, which must not drift away along a plateau.
bool accept_change(const Solution &changed, const Solution &backup, const Evaluator &evaluator)
{
    if (changed.fitness > backup.fitness)
        return true;
    if (changed.fitness < backup.fitness)
        return false;
    const Solution *elitist = evaluator.elitist();
    return !(elitist && elitist->genotype == backup.genotype);
}

} // namespace

bool forced_improvement(Solution &offspring, const MixingContext &context, const VariationFlags &flags)
{
    const Solution *elitist = context.evaluator.elitist();
    if (elitist == nullptr)
        throw std::logic_error("forced improvement requires an elitist");

    const auto &model = context.model;
    const double backup_fitness = offspring.fitness;
    const Genotype backup = offspring.genotype;
    std::vector<bool> processed(offspring.genotype.size(), false);

    for (std::size_t e = 0; e < model.elements.size(); ++e)
    {
        const auto &indices = model.elements[e].indices;
        elitist = context.evaluator.elitist();
        if (flags.conditional)
        {
            mark(processed, indices);
            if (!check_donor(offspring.genotype, elitist->genotype, dependencies_of(model, e, true), processed))
                continue;
        }
        if (equal_on(offspring.genotype, elitist->genotype, indices))
            continue;

        copy_on(offspring.genotype, elitist->genotype, indices);
        context.evaluator.evaluate(offspring);
        if (offspring.fitness > backup_fitness)
            return true;
        copy_on(offspring.genotype, backup, indices);
        offspring.fitness = backup_fitness;
    }

    elitist = context.evaluator.elitist();
    offspring.genotype = elitist->genotype;
    offspring.fitness = elitist->fitness;
    offspring.evaluated = true;
    return false;
}

Solution gom(const Solution &input, const MixingContext &context, const VariationFlags &flags, RandomSource &rng)
{
    if (!input.evaluated)
        throw std::invalid_argument("gom requires an evaluated input solution");
    const auto &pool = context.donor_pool;
    if (pool.empty())
        throw std::invalid_argument("gom requires a non-empty donor pool");
    const auto &model = context.model;
    if (flags.conditional && !model.elements.empty() && !model.has_dependencies())
        throw std::invalid_argument("conditional mixing requires dependency sets");

    Solution offspring = input;
    Solution backup = input;
    bool changed = false;
    std::vector<bool> processed;
    if (flags.conditional)
        processed.assign(input.genotype.size(), false);

    std::vector<std::size_t> donors(pool.size());
    for (std::size_t e = 0; e < model.elements.size(); ++e)
    {
        const auto &indices = model.elements[e].indices;
        const auto &conditioned = dependencies_of(model, e, flags.conditional);
        if (flags.conditional)
            mark(processed, indices);

        // Lazily drawn uniform permutation of the donor pool.
        std::iota(donors.begin(), donors.end(), 0);
        for (std::size_t j = 0; j < donors.size(); ++j)
        {
            std::swap(donors[j], donors[j + rng.below(donors.size() - j)]);
            const std::size_t d = donors[j];
            const Genotype &donor = pool[d].genotype;
            if (flags.conditional && !check_donor(offspring.genotype, donor, conditioned, processed))
                continue;

            if (!equal_on(offspring.genotype, donor, indices))
            {
                copy_on(offspring.genotype, donor, indices);
                context.evaluator.evaluate(offspring);
                if (accept_change(offspring, backup, context.evaluator))
                {
                    copy_on(backup.genotype, offspring.genotype, indices);
                    backup.fitness = offspring.fitness;
                    changed = true;
                    if (context.trace)
                        context.trace->push_back({e, d});
                }
                else
                {
                    copy_on(offspring.genotype, backup.genotype, indices);
                    offspring.fitness = backup.fitness;
                }
                break;
            }
            if (!flags.use_eds)
                break;
        }
    }

    const double fi_threshold = 1.0 + std::log10(static_cast<double>(pool.size()));
    if (flags.use_fi && (!changed || static_cast<double>(input.nis) > fi_threshold))
        forced_improvement(offspring, context, flags);

    offspring.nis = offspring.fitness <= input.fitness ? input.nis + 1 : 0;
    return offspring;
}

Solution cgom(const Solution &input, const MixingContext &context, VariationFlags flags, RandomSource &rng)
{
    flags.conditional = true;
    return gom(input, context, flags, rng);
}

} // namespace gomea
