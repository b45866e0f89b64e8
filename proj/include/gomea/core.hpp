#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gomea
{

/// Fixed-length binary string. Elements are always 0 or 1.
class Genotype
{
  public:
    Genotype() = default;
    explicit Genotype(std::size_t length);
    explicit Genotype(std::vector<std::uint8_t> bits);

    /// Parses a string of '0'/'1' characters, e.g. "0110".
    static Genotype from_string(std::string_view text);

    std::size_t size() const { return bits_.size(); }
    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    void set(std::size_t i, std::uint8_t value) { bits_[i] = value ? 1 : 0; }
    void flip(std::size_t i) { bits_[i] ^= 1; }

    std::span<const std::uint8_t> bits() const { return bits_; }

    std::size_t count_ones() const;
    std::string to_string() const;

    /// Raw bytes, usable as a hash key.
    std::string key() const { return {bits_.begin(), bits_.end()}; }

    bool operator==(const Genotype &) const = default;

  private:
    std::vector<std::uint8_t> bits_;
};

/// True iff a and b hold the same values at every index in `indices`.
bool equal_on(const Genotype &a, const Genotype &b, std::span<const std::size_t> indices);

/// Copies donor's values at `indices` into target.
void copy_on(Genotype &target, const Genotype &donor, std::span<const std::size_t> indices);

struct Solution
{
    Genotype genotype;
    double fitness = -std::numeric_limits<double>::infinity();
    bool evaluated = false;
    // no-improvement stretch
    std::size_t nis = 0;
};

using Population = std::vector<Solution>;

/// Single source of randomness for one run.
class RandomSource
{
  public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    /// Uniform integer in [0, bound). bound must be positive.
    std::size_t below(std::size_t bound);
    std::uint8_t bit();
    double uniform01();

    std::mt19937_64 &engine() { return engine_; }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// SplitMix64 derivation of independent child seeds from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Black-box objective. Fitness is maximized.
class FitnessFunction
{
  public:
    virtual ~FitnessFunction() = default;
    virtual std::size_t length() const = 0;
    virtual double evaluate(const Genotype &genotype) const = 0;
    /// Known optimum value, if any.
    virtual std::optional<double> optimum() const { return std::nullopt; }
};

struct EvaluationBudget
{
    std::optional<std::uint64_t> max_evaluations;
    std::optional<double> max_seconds;
    std::optional<std::uint64_t> max_generations_per_population;
    std::uint64_t evaluations_used = 0;
};

enum class StopReason
{
    OptimumReached,
    EvaluationLimit,
    TimeLimit,
};

/// Thrown from inside an evaluation to unwind the current run.
class RunStopped : public std::exception
{
  public:
    explicit RunStopped(StopReason reason) : reason_(reason) {}
    StopReason reason() const { return reason_; }
    const char *what() const noexcept override;

  private:
    StopReason reason_;
};

/// Per-run evaluation context: counts evaluations, enforces the budget and
/// keeps the elitist (best solution seen so far).
class Evaluator
{
  public:
    /// When `target` is set, reaching it (within a small tolerance) stops the run.
    Evaluator(const FitnessFunction &problem, EvaluationBudget &budget, std::optional<double> target = std::nullopt);

    /// Evaluates the solution, updates the elitist on strict improvement and
    /// returns the fitness. Throws RunStopped when the budget is exhausted
    /// (before evaluating) or when the target is reached (after).
    double evaluate(Solution &solution);

    const Solution *elitist() const { return has_elitist_ ? &elitist_ : nullptr; }
    std::uint64_t evaluations() const { return budget_.evaluations_used; }
    const EvaluationBudget &budget() const { return budget_; }
    std::size_t length() const { return problem_.length(); }
    const FitnessFunction &problem() const { return problem_; }

    bool target_reached() const { return target_reached_; }
    double elapsed_seconds() const;

    /// Throws RunStopped(TimeLimit) if the wall-clock budget has run out.
    void check_time() const;

    /// Records the elitist fitness after every evaluation, for diagnostics.
    void enable_elitist_trace() { trace_enabled_ = true; }
    const std::vector<double> &elitist_trace() const { return elitist_trace_; }

  private:
    bool reaches_target(double fitness) const;

    const FitnessFunction &problem_;
    EvaluationBudget &budget_;
    std::optional<double> target_;
    Solution elitist_;
    bool has_elitist_ = false;
    bool target_reached_ = false;
    bool trace_enabled_ = false;
    std::vector<double> elitist_trace_;
    std::chrono::steady_clock::time_point start_;
};

/// Uniform random genotype of the given length; the solution is unevaluated.
Solution create_random_solution(std::size_t length, RandomSource &rng);

/// True iff all members share one genotype.
bool population_converged(const Population &population);

double average_fitness(const Population &population);

} // namespace gomea
