#pragma once

#include "gomea/problems.hpp"
#include "gomea/schemes.hpp"
#include "gomea/statistics.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gomea
{

/// Limits applied to every run of an experiment.
struct ExperimentCaps
{
    std::optional<std::uint64_t> max_evaluations = 100'000'000;
    std::optional<std::uint64_t> max_generations = 200;
    std::optional<double> max_seconds;
    /// Bisection gives up once the population size would exceed this.
    std::size_t max_population = 100'000;

    EvaluationBudget budget() const;
};

/// `count` run seeds split from one master seed; the same list is reused at
/// every population size.
std::vector<std::uint64_t> run_seeds(std::uint64_t master, std::size_t count);

/// All runs for one population size.
struct SizeTrial
{
    std::size_t population_size = 0;
    bool success = false;
    std::vector<RunRecord> runs;
    /// Median over the runs performed (0 when none were).
    double median_evaluations = 0.0;
};

struct BisectionResult
{
    /// False when no size up to the population cap solved all runs.
    bool solved = false;
    std::size_t minimal_success_size = 0;
    std::size_t best_evals_size = 0;
    double median_evaluations_at_best = 0.0;
    /// Every tested size, in test order.
    std::vector<SizeTrial> trials;

    const SizeTrial *trial_for(std::size_t population_size) const;
};

/// Doubling from n = 2 until a size succeeds, then integer binary search
/// between the last failing and the first succeeding size. The size with the
/// lowest median evaluations among all successful sizes is reported too.
BisectionResult bisect(const std::function<SizeTrial(std::size_t)> &trial, std::size_t max_population);

/// Runs `config` at the given population size once per seed. With
/// stop_on_failure, stops at the first unsuccessful run.
SizeTrial run_size_trial(SchemeConfig config, std::size_t population_size, const ProblemInstance &problem,
                         const std::vector<std::uint64_t> &seeds, const ExperimentCaps &caps,
                         bool stop_on_failure = true);

/// Bisection population sizing for a single-population configuration.
BisectionResult bisect_population_size(const SchemeConfig &config, const ProblemInstance &problem,
                                       const std::vector<std::uint64_t> &seeds, const ExperimentCaps &caps);

/// Creates an instance and attaches a certified optimum where one can be
/// obtained: analytic, NK dynamic programming, planted MAX-3SAT, or brute
/// force for graphs with at most `brute_force_limit` vertices.
ProblemInstance certified_instance(ProblemKind kind, std::size_t length, std::uint64_t instance_seed,
                                   std::size_t brute_force_limit = 24);

struct SweepRow
{
    std::string config;
    std::string problem;
    std::size_t length = 0;
    std::size_t runs = 0;
    std::size_t successes = 0;
    bool solved = false;
    /// Single population: the evaluation-optimal size from bisection.
    std::optional<std::size_t> population_size;
    std::optional<OrderSummary> evaluations;
    std::optional<OrderSummary> wall_seconds;
    std::string error;
    std::vector<RunRecord> records;
};

/// For each length: bisection (single) or direct runs (parameterless),
/// summarized over the reported runs. Rows are passed to `on_row` as they
/// complete; failures are recorded and the sweep continues.
std::vector<SweepRow> scalability_sweep(const SchemeConfig &config, const std::string &config_label,
                                        ProblemKind kind, const std::vector<std::size_t> &lengths,
                                        const std::vector<std::uint64_t> &seeds, const ExperimentCaps &caps,
                                        std::uint64_t instance_seed,
                                        const std::function<void(const SweepRow &)> &on_row = {});

/// Summary row over a finished set of runs.
SweepRow summarize_runs(const std::string &config_label, const std::string &problem, std::size_t length,
                        std::vector<RunRecord> records);

} // namespace gomea
