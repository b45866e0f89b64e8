#include "gomea/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gomea
{

Genotype::Genotype(std::size_t length) : bits_(length, 0)
{
}

Genotype::Genotype(std::vector<std::uint8_t> bits) : bits_(std::move(bits))
{
    for (auto b : bits_)
    {
        if (b > 1)
            throw std::invalid_argument("genotype values must be 0 or 1");
    }
}

Genotype Genotype::from_string(std::string_view text)
{
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text)
    {
        if (c != '0' && c != '1')
            throw std::invalid_argument("genotype string may only contain '0' and '1'");
        bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return Genotype(std::move(bits));
}

std::size_t Genotype::count_ones() const
{
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::string Genotype::to_string() const
{
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i)
        s[i] = static_cast<char>('0' + bits_[i]);
    return s;
}

bool equal_on(const Genotype &a, const Genotype &b, std::span<const std::size_t> indices)
{
    return std::all_of(indices.begin(), indices.end(), [&](std::size_t i) { return a[i] == b[i]; });
}

void copy_on(Genotype &target, const Genotype &donor, std::span<const std::size_t> indices)
{
    for (auto i : indices)
        target.set(i, donor[i]);
}

std::size_t RandomSource::below(std::size_t bound)
{
    if (bound == 0)
        throw std::invalid_argument("RandomSource::below requires a positive bound");
    std::uniform_int_distribution<std::size_t> dist(0, bound - 1);
    return dist(engine_);
}

std::uint8_t RandomSource::bit()
{
    return static_cast<std::uint8_t>(engine_() >> 63);
}

double RandomSource::uniform01()
{
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    return dist(engine_);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index)
{
    std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

const char *RunStopped::what() const noexcept
{
    switch (reason_)
    {
    case StopReason::OptimumReached:
        return "optimum reached";
    case StopReason::EvaluationLimit:
        return "evaluation limit reached";
    case StopReason::TimeLimit:
        return "time limit reached";
    }
    return "run stopped";
}

Evaluator::Evaluator(const FitnessFunction &problem, EvaluationBudget &budget, std::optional<double> target)
    : problem_(problem), budget_(budget), target_(target), start_(std::chrono::steady_clock::now())
{
}

double Evaluator::elapsed_seconds() const
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

void Evaluator::check_time() const
{
    if (budget_.max_seconds && elapsed_seconds() >= *budget_.max_seconds)
        throw RunStopped(StopReason::TimeLimit);
}

bool Evaluator::reaches_target(double fitness) const
{
    if (!target_)
        return false;
    const double tolerance = 1e-9 * std::max(1.0, std::abs(*target_));
    return fitness >= *target_ - tolerance;
}

double Evaluator::evaluate(Solution &solution)
{
    if (solution.genotype.size() != problem_.length())
        throw std::invalid_argument("genotype length does not match the problem");
    if (budget_.max_evaluations && budget_.evaluations_used >= *budget_.max_evaluations)
        throw RunStopped(StopReason::EvaluationLimit);
    check_time();

    solution.fitness = problem_.evaluate(solution.genotype);
    solution.evaluated = true;
    ++budget_.evaluations_used;

    if (!has_elitist_ || solution.fitness > elitist_.fitness)
    {
        elitist_.genotype = solution.genotype;
        elitist_.fitness = solution.fitness;
        elitist_.evaluated = true;
        has_elitist_ = true;
    }
    if (trace_enabled_)
        elitist_trace_.push_back(elitist_.fitness);

    if (reaches_target(solution.fitness))
    {
        target_reached_ = true;
        throw RunStopped(StopReason::OptimumReached);
    }
    return solution.fitness;
}

Solution create_random_solution(std::size_t length, RandomSource &rng)
{
    if (length == 0)
        throw std::invalid_argument("solution length must be at least 1");
    Solution s;
    s.genotype = Genotype(length);
    for (std::size_t i = 0; i < length; ++i)
        s.genotype.set(i, rng.bit());
    return s;
}

bool population_converged(const Population &population)
{
    if (population.empty())
        return true;
    const auto &first = population.front().genotype;
    return std::all_of(population.begin() + 1, population.end(),
                       [&](const Solution &s) { return s.genotype == first; });
}

double average_fitness(const Population &population)
{
    if (population.empty())
        throw std::invalid_argument("average_fitness of an empty population");
    double sum = std::accumulate(population.begin(), population.end(), 0.0,
                                 [](double acc, const Solution &s) { return acc + s.fitness; });
    return sum / static_cast<double>(population.size());
}

} // namespace gomea
