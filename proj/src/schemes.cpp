#include "gomea/schemes.hpp"

#include <algorithm>
#include <cmath>

namespace gomea
{

std::string_view scheme_name(SchemeKind kind)
{
    switch (kind)
    {
    case SchemeKind::Single:
        return "single";
    case SchemeKind::Ims:
        return "ims";
    case SchemeKind::P3:
        return "p3";
    case SchemeKind::P3Mi:
        return "p3mi";
    }
    return "unknown";
}

SchemeKind parse_scheme(std::string_view name)
{
    for (auto kind : {SchemeKind::Single, SchemeKind::Ims, SchemeKind::P3, SchemeKind::P3Mi})
    {
        if (scheme_name(kind) == name)
            return kind;
    }
    throw ConfigError("unknown scheme: " + std::string(name));
}

bool SchemeConfig::operator==(const SchemeConfig &other) const
{
    return scheme == other.scheme && population_size == other.population_size &&
           hill_climber == other.hill_climber && tournament_selection == other.tournament_selection &&
           measure == other.measure && filtered == other.filtered && ordering == other.ordering &&
           flags.use_eds == other.flags.use_eds && flags.use_fi == other.flags.use_fi &&
           flags.conditional == other.flags.conditional && (!flags.conditional || lambda == other.lambda);
}

void validate(const SchemeConfig &config)
{
    if (config.scheme == SchemeKind::Single)
    {
        if (!config.population_size)
            throw ConfigError("the single-population scheme needs a population size");
        if (*config.population_size < 2)
            throw ConfigError("population size must be at least 2");
    }
    else if (config.population_size)
    {
        throw ConfigError("parameterless schemes do not take a population size");
    }
    const bool nmi = config.measure == SimilarityMeasure::NormalizedMutualInformation;
    if (config.filtered != nmi)
        throw ConfigError("linkage tree must be either unfiltered with MI or filtered with NMI");
    if (config.flags.conditional && !(config.lambda > 0.0 && config.lambda <= 1.0))
        throw ConfigError("lambda must lie in (0, 1]");
}

SchemeConfig preset(std::string_view name)
{
    SchemeConfig config;
    config.hill_climber = HillClimber::SingleIteration;
    config.measure = SimilarityMeasure::NormalizedMutualInformation;
    config.filtered = true;
    config.flags.use_eds = true;
    if (name == "gomea-best" || name == "cgomea-best")
    {
        config.scheme = SchemeKind::Single;
        config.flags.use_fi = true;
        config.ordering = FosOrdering::AscendingSize;
        config.tournament_selection = true;
        config.flags.conditional = name == "cgomea-best";
        config.lambda = 0.8;
        return config;
    }
    if (name == "gomea-p3-best" || name == "cgomea-p3-best")
    {
        config.scheme = SchemeKind::P3;
        config.flags.use_fi = false;
        config.ordering = FosOrdering::Random;
        config.tournament_selection = false;
        config.flags.conditional = name == "cgomea-p3-best";
        config.lambda = 0.8;
        return config;
    }
    throw ConfigError("unknown preset: " + std::string(name));
}

std::string_view termination_name(Termination termination)
{
    switch (termination)
    {
    case Termination::OptimumReached:
        return "optimum";
    case Termination::EvaluationLimit:
        return "evaluation_limit";
    case Termination::TimeLimit:
        return "time_limit";
    case Termination::Converged:
        return "converged";
    case Termination::GenerationLimit:
        return "generation_limit";
    }
    return "unknown";
}

Population tournament_sample(std::span<const Solution> population, std::size_t count, RandomSource &rng)
{
    Population selected;
    selected.reserve(count);
    for (std::size_t t = 0; t < count; ++t)
    {
        const auto &a = population[rng.below(population.size())];
        const auto &b = population[rng.below(population.size())];
        if (a.fitness > b.fitness)
            selected.push_back(a);
        else if (b.fitness > a.fitness)
            selected.push_back(b);
        else
            selected.push_back(rng.bit() ? a : b);
    }
    return selected;
}

Population initialize_population(std::size_t size, const SchemeConfig &config, Evaluator &evaluator,
                                 RandomSource &rng)
{
    Population population;
    population.reserve(size);
    for (std::size_t i = 0; i < size; ++i)
    {
        Solution s = create_random_solution(evaluator.length(), rng);
        apply_hill_climber(config.hill_climber, s, evaluator, rng);
        population.push_back(std::move(s));
    }
    return population;
}

LinkageModel learn_mixing_model(std::span<const Solution> learning_set, const SchemeConfig &config,
                                RandomSource &rng)
{
    const std::size_t length = learning_set.front().genotype.size();
    const SimilarityMatrix similarity = build_similarity_matrix(learning_set, config.measure);
    LinkageModel model = without_root(build_linkage_tree(similarity, config.filtered, rng), length);
    if (config.flags.conditional)
        model = learn_dependencies(std::move(model), similarity, config.lambda);
    if (config.ordering == FosOrdering::AscendingSize)
        model = order_fos(std::move(model), FosOrdering::AscendingSize, rng);
    return model;
}

namespace
{

// Mixes every target with `pool` as donors. Random FOS ordering is redrawn
// for every target.
Population mix_all(std::span<const Solution> targets, std::span<const Solution> pool, LinkageModel model,
                   const SchemeConfig &config, Evaluator &evaluator, RandomSource &rng)
{
    Population offspring;
    offspring.reserve(targets.size());
    for (const auto &target : targets)
    {
        if (config.ordering == FosOrdering::Random)
            model = order_fos(std::move(model), FosOrdering::Random, rng);
        MixingContext context{pool, model, evaluator};
        offspring.push_back(gom(target, context, config.flags, rng));
    }
    return offspring;
}

} // namespace

Population single_population_generation(const Population &population, const SchemeConfig &config,
                                        Evaluator &evaluator, RandomSource &rng)
{
    LinkageModel model;
    if (config.tournament_selection)
    {
        const Population sample = tournament_sample(population, population.size(), rng);
        model = learn_mixing_model(sample, config, rng);
    }
    else
    {
        model = learn_mixing_model(population, config, rng);
    }
    return mix_all(population, population, std::move(model), config, evaluator, rng);
}

bool Pyramid::insert(std::size_t level, const Solution &solution)
{
    if (levels_.size() <= level)
        levels_.resize(level + 1);
    auto &target = levels_[level];
    if (!target.keys.insert(solution.genotype.key()).second)
        return false;
    target.members.push_back(solution);
    return true;
}

bool Pyramid::contains(std::size_t level, const Genotype &genotype) const
{
    return level < levels_.size() && levels_[level].keys.contains(genotype.key());
}

std::size_t pyramid_growth(SchemeKind scheme, std::size_t iteration)
{
    if (scheme == SchemeKind::P3Mi)
        return iteration * iteration;
    return 1;
}

std::size_t pyramid_iteration(Pyramid &pyramid, std::size_t iteration, const SchemeConfig &config,
                              Evaluator &evaluator, RandomSource &rng)
{
    if (iteration < 1)
        throw std::invalid_argument("pyramid iterations start at 1");

    Population cohort = initialize_population(pyramid_growth(config.scheme, iteration), config, evaluator, rng);
    std::size_t inserted = 0;
    for (const auto &s : cohort)
        inserted += pyramid.insert(0, s) ? 1 : 0;

    const std::size_t top = pyramid.level_count() - 1;
    for (std::size_t level = 0; level <= top; ++level)
    {
        const Population &donors = pyramid.level(level);
        LinkageModel model;
        if (config.tournament_selection)
            model = learn_mixing_model(tournament_sample(donors, donors.size(), rng), config, rng);
        else
            model = learn_mixing_model(donors, config, rng);

        // Copy: promotions below may grow the pyramid while we still mix.
        const Population pool = donors;
        Population offspring = mix_all(cohort, pool, std::move(model), config, evaluator, rng);

        bool promoted = false;
        for (std::size_t i = 0; i < cohort.size(); ++i)
        {
            if (offspring[i].fitness > cohort[i].fitness)
                promoted = pyramid.insert(level + 1, offspring[i]) || promoted;
        }
        cohort = std::move(offspring);
        if (!promoted)
            break;
    }
    return inserted;
}

namespace
{

struct ImsPopulation
{
    Population members;
    std::size_t generations = 0;
    std::size_t ticks = 0;
    bool terminated = false;
    double final_average = 0.0;
};

class ImsScheduler
{
  public:
    static constexpr std::size_t generations_per_step = 4;

    ImsScheduler(const SchemeConfig &config, Evaluator &evaluator, RandomSource &rng, RunLog *log)
        : config_(config), evaluator_(evaluator), rng_(rng), log_(log)
    {
    }

    void run_forever()
    {
        for (;;)
        {
            std::size_t driver = 0;
            while (driver < populations_.size() && populations_[driver].terminated)
                ++driver;
            step(driver);
        }
    }

    std::size_t population_count() const { return populations_.size(); }
    std::size_t total_generations() const { return total_generations_; }

  private:
    double average(std::size_t i) const
    {
        const auto &p = populations_[i];
        return p.terminated ? p.final_average : average_fitness(p.members);
    }

    bool should_terminate(std::size_t i) const
    {
        const auto &p = populations_[i];
        if (population_converged(p.members))
            return true;
        const auto &cap = evaluator_.budget().max_generations_per_population;
        if (cap && p.generations >= *cap)
            return true;
        const double own = average_fitness(p.members);
        for (std::size_t j = i + 1; j < populations_.size(); ++j)
        {
            if (average(j) > own)
                return true;
        }
        return false;
    }

    void terminate(std::size_t i)
    {
        auto &p = populations_[i];
        p.final_average = average_fitness(p.members);
        p.terminated = true;
        p.members.clear();
        p.members.shrink_to_fit();
    }

    void step(std::size_t i)
    {
        if (i == populations_.size())
        {
            ImsPopulation fresh;
            fresh.members = initialize_population(std::size_t{2} << i, config_, evaluator_, rng_);
            populations_.push_back(std::move(fresh));
        }
        if (!populations_[i].terminated && should_terminate(i))
            terminate(i);
        if (!populations_[i].terminated)
        {
            auto &p = populations_[i];
            p.members = single_population_generation(p.members, config_, evaluator_, rng_);
            ++p.generations;
            ++total_generations_;
            if (log_)
                log_->ims_schedule.push_back({i, p.generations, p.members.size()});
        }
        if (++populations_[i].ticks % generations_per_step == 0)
            step(i + 1);
    }

    const SchemeConfig &config_;
    Evaluator &evaluator_;
    RandomSource &rng_;
    RunLog *log_;
    std::vector<ImsPopulation> populations_;
    std::size_t total_generations_ = 0;
};

Termination to_termination(StopReason reason)
{
    switch (reason)
    {
    case StopReason::OptimumReached:
        return Termination::OptimumReached;
    case StopReason::EvaluationLimit:
        return Termination::EvaluationLimit;
    case StopReason::TimeLimit:
        return Termination::TimeLimit;
    }
    return Termination::EvaluationLimit;
}

} // namespace

RunRecord run(const SchemeConfig &config, const FitnessFunction &problem, EvaluationBudget budget,
              std::uint64_t seed, RunLog *log, std::string problem_name)
{
    validate(config);
    if (config.scheme != SchemeKind::Single && !budget.max_evaluations && !budget.max_seconds)
        throw ConfigError("parameterless schemes need an evaluation or time limit");

    RunRecord record;
    record.seed = seed;
    record.config = config;
    record.problem = std::move(problem_name);
    record.length = problem.length();
    record.population_size = config.population_size;

    RandomSource rng(seed);
    budget.evaluations_used = 0;
    Evaluator evaluator(problem, budget, problem.optimum());

    std::size_t generations = 0;
    std::optional<ImsScheduler> ims;
    Pyramid pyramid;
    try
    {
        switch (config.scheme)
        {
        case SchemeKind::Single: {
            Population population = initialize_population(*config.population_size, config, evaluator, rng);
            for (;;)
            {
                if (population_converged(population))
                {
                    record.termination = Termination::Converged;
                    break;
                }
                if (budget.max_generations_per_population && generations >= *budget.max_generations_per_population)
                {
                    record.termination = Termination::GenerationLimit;
                    break;
                }
                population = single_population_generation(population, config, evaluator, rng);
                ++generations;
                if (log)
                    log->average_fitness.push_back(average_fitness(population));
                evaluator.check_time();
            }
            break;
        }
        case SchemeKind::Ims:
            ims.emplace(config, evaluator, rng, log);
            ims->run_forever();
            break;
        case SchemeKind::P3:
        case SchemeKind::P3Mi:
            for (std::size_t iteration = 1;; ++iteration)
            {
                const std::size_t inserted = pyramid_iteration(pyramid, iteration, config, evaluator, rng);
                generations = iteration;
                if (log)
                    log->p3_insertions.push_back(inserted);
                evaluator.check_time();
            }
            break;
        }
    }
    catch (const RunStopped &stop)
    {
        record.termination = to_termination(stop.reason());
    }

    if (ims)
    {
        generations = ims->total_generations();
        record.structure_size = ims->population_count();
    }
    if (config.scheme == SchemeKind::P3 || config.scheme == SchemeKind::P3Mi)
        record.structure_size = pyramid.level_count();

    record.generations = generations;
    record.evaluations = evaluator.evaluations();
    record.wall_seconds = evaluator.elapsed_seconds();
    record.success = evaluator.target_reached();
    record.best_fitness = evaluator.elitist() ? evaluator.elitist()->fitness : 0.0;
    return record;
}

} // namespace gomea
