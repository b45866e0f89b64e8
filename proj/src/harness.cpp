#include "gomea/harness.hpp"

#include <algorithm>

namespace gomea
{

EvaluationBudget ExperimentCaps::budget() const
{
    EvaluationBudget b;
    b.max_evaluations = max_evaluations;
    b.max_seconds = max_seconds;
    b.max_generations_per_population = max_generations;
    return b;
}

std::vector<std::uint64_t> run_seeds(std::uint64_t master, std::size_t count)
{
    std::vector<std::uint64_t> seeds(count);
    for (std::size_t i = 0; i < count; ++i)
        seeds[i] = derive_seed(master, i);
    return seeds;
}

const SizeTrial *BisectionResult::trial_for(std::size_t population_size) const
{
    for (const auto &t : trials)
    {
        if (t.population_size == population_size)
            return &t;
    }
    return nullptr;
}

BisectionResult bisect(const std::function<SizeTrial(std::size_t)> &trial, std::size_t max_population)
{
    BisectionResult result;
    std::size_t failing = 0;
    std::size_t succeeding = 0;
    for (std::size_t n = 2;; n *= 2)
    {
        if (n > max_population)
            return result;
        result.trials.push_back(trial(n));
        if (result.trials.back().success)
        {
            succeeding = n;
            break;
        }
        failing = n;
    }
    while (failing != 0 && succeeding - failing > 1)
    {
        const std::size_t mid = failing + (succeeding - failing) / 2;
        result.trials.push_back(trial(mid));
        if (result.trials.back().success)
            succeeding = mid;
        else
            failing = mid;
    }

    result.solved = true;
    result.minimal_success_size = succeeding;
    const SizeTrial *best = nullptr;
    for (const auto &t : result.trials)
    {
        if (!t.success)
            continue;
        if (!best || t.median_evaluations < best->median_evaluations ||
            (t.median_evaluations == best->median_evaluations && t.population_size < best->population_size))
            best = &t;
    }
    result.best_evals_size = best->population_size;
    result.median_evaluations_at_best = best->median_evaluations;
    return result;
}

SizeTrial run_size_trial(SchemeConfig config, std::size_t population_size, const ProblemInstance &problem,
                         const std::vector<std::uint64_t> &seeds, const ExperimentCaps &caps, bool stop_on_failure)
{
    config.population_size = population_size;
    SizeTrial trial;
    trial.population_size = population_size;
    trial.success = !seeds.empty();
    std::vector<double> evaluations;
    for (auto seed : seeds)
    {
        trial.runs.push_back(run(config, problem, caps.budget(), seed, nullptr, std::string(kind_name(problem.kind()))));
        evaluations.push_back(static_cast<double>(trial.runs.back().evaluations));
        if (!trial.runs.back().success)
        {
            trial.success = false;
            if (stop_on_failure)
                break;
        }
    }
    if (!evaluations.empty())
        trial.median_evaluations = median(evaluations);
    return trial;
}

BisectionResult bisect_population_size(const SchemeConfig &config, const ProblemInstance &problem,
                                       const std::vector<std::uint64_t> &seeds, const ExperimentCaps &caps)
{
    if (config.scheme != SchemeKind::Single)
        throw ConfigError("bisection applies to the single-population scheme only");
    if (!problem.optimum())
        throw ConfigError("bisection needs an instance with a known optimum");
    return bisect([&](std::size_t n) { return run_size_trial(config, n, problem, seeds, caps); },
                  caps.max_population);
}

ProblemInstance certified_instance(ProblemKind kind, std::size_t length, std::uint64_t instance_seed,
                                   std::size_t brute_force_limit)
{
    ProblemInstance instance = generate_instance(kind, length, instance_seed);
    if (instance.optimum())
        return instance;
    if (kind == ProblemKind::NkS1)
        return attach_optimum(std::move(instance), OptimumMethod::NkDynamicProgramming);
    if (length <= brute_force_limit)
        return attach_optimum(std::move(instance), OptimumMethod::BruteForce);
    return instance;
}

SweepRow summarize_runs(const std::string &config_label, const std::string &problem, std::size_t length,
                        std::vector<RunRecord> records)
{
    SweepRow row;
    row.config = config_label;
    row.problem = problem;
    row.length = length;
    row.runs = records.size();
    std::vector<double> evaluations;
    std::vector<double> seconds;
    for (const auto &r : records)
    {
        row.successes += r.success ? 1 : 0;
        evaluations.push_back(static_cast<double>(r.evaluations));
        seconds.push_back(r.wall_seconds);
    }
    row.solved = row.runs > 0 && row.successes == row.runs;
    if (!records.empty())
    {
        row.evaluations = summarize(evaluations);
        row.wall_seconds = summarize(seconds);
    }
    row.records = std::move(records);
    return row;
}

std::vector<SweepRow> scalability_sweep(const SchemeConfig &config, const std::string &config_label,
                                        ProblemKind kind, const std::vector<std::size_t> &lengths,
                                        const std::vector<std::uint64_t> &seeds, const ExperimentCaps &caps,
                                        std::uint64_t instance_seed, const std::function<void(const SweepRow &)> &on_row)
{
    std::vector<SweepRow> rows;
    const std::string problem(kind_name(kind));
    for (auto length : lengths)
    {
        SweepRow row;
        try
        {
            ProblemInstance instance = certified_instance(kind, length, instance_seed);
            if (!instance.optimum())
                throw ConfigError("no certified optimum for " + problem + " at length " + std::to_string(length));
            if (config.scheme == SchemeKind::Single)
            {
                BisectionResult bisection = bisect_population_size(config, instance, seeds, caps);
                if (bisection.solved)
                {
                    row = summarize_runs(config_label, problem, length,
                                         bisection.trial_for(bisection.best_evals_size)->runs);
                    row.population_size = bisection.best_evals_size;
                }
                else
                {
                    row = summarize_runs(config_label, problem, length,
                                         bisection.trials.empty() ? std::vector<RunRecord>{}
                                                                  : bisection.trials.back().runs);
                    row.solved = false;
                    row.error = "not solved in all runs up to population size " + std::to_string(caps.max_population);
                }
            }
            else
            {
                std::vector<RunRecord> records;
                for (auto seed : seeds)
                    records.push_back(run(config, instance, caps.budget(), seed, nullptr, problem));
                row = summarize_runs(config_label, problem, length, std::move(records));
            }
        }
        catch (const std::exception &e)
        {
            row = SweepRow{};
            row.config = config_label;
            row.problem = problem;
            row.length = length;
            row.error = e.what();
        }
        if (on_row)
            on_row(row);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace gomea
