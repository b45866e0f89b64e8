#pragma once

#include "gomea/core.hpp"
#include "gomea/linkage.hpp"
#include "gomea/local_search.hpp"
#include "gomea/variation.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace gomea
{

enum class SchemeKind
{
    Single,
    Ims,
    P3,
    P3Mi,
};

std::string_view scheme_name(SchemeKind kind);
SchemeKind parse_scheme(std::string_view name);

class ConfigError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

struct SchemeConfig
{
    SchemeKind scheme = SchemeKind::Single;
    /// Single population only.
    std::optional<std::size_t> population_size;
    HillClimber hill_climber = HillClimber::Off;
    bool tournament_selection = false;
    SimilarityMeasure measure = SimilarityMeasure::MutualInformation;
    bool filtered = false;
    FosOrdering ordering = FosOrdering::Random;
    VariationFlags flags;
    /// Dependency threshold; used only with conditional mixing.
    double lambda = 0.8;

    bool operator==(const SchemeConfig &other) const;
};

/// Throws ConfigError for invalid combinations. The linkage tree options are
/// {unfiltered, MI} and {filtered, NMI}.
void validate(const SchemeConfig &config);

/// Named presets: "gomea-best", "cgomea-best", "gomea-p3-best", "cgomea-p3-best".
SchemeConfig preset(std::string_view name);

enum class Termination
{
    OptimumReached,
    EvaluationLimit,
    TimeLimit,
    Converged,
    GenerationLimit,
};

std::string_view termination_name(Termination termination);

struct RunRecord
{
    std::uint64_t seed = 0;
    SchemeConfig config;
    std::string problem;
    std::size_t length = 0;
    std::uint64_t evaluations = 0;
    double wall_seconds = 0.0;
    bool success = false;
    double best_fitness = 0.0;
    Termination termination = Termination::EvaluationLimit;
    /// Generations (single), total generations over all populations (IMS)
    /// or iterations (P3 schemes).
    std::size_t generations = 0;
    std::optional<std::size_t> population_size;
    /// IMS: populations created. P3 schemes: pyramid levels.
    std::optional<std::size_t> structure_size;
};

/// One executed IMS generation: population index and that population's
/// generation number (1-based), plus its size.
struct ImsStep
{
    std::size_t population = 0;
    std::size_t generation = 0;
    std::size_t size = 0;
};

/// Optional diagnostics collected during a run.
struct RunLog
{
    std::vector<ImsStep> ims_schedule;
    /// P3 schemes: solutions inserted into level 0 per iteration.
    std::vector<std::size_t> p3_insertions;
    /// Average population fitness after each single-population generation.
    std::vector<double> average_fitness;
};

/// Size-2 tournaments, `count` of them, uniform with replacement; ties are
/// broken uniformly.
Population tournament_sample(std::span<const Solution> population, std::size_t count, RandomSource &rng);

/// Random solutions, each improved by the configured hill climber and evaluated.
Population initialize_population(std::size_t size, const SchemeConfig &config, Evaluator &evaluator,
                                 RandomSource &rng);

/// Learns the linkage model used for one mixing pass: linkage tree without
/// its root, dependency sets when mixing is conditional, and ascending
/// ordering if configured.
LinkageModel learn_mixing_model(std::span<const Solution> learning_set, const SchemeConfig &config,
                                RandomSource &rng);

/// One generation: model learning (on a tournament sample if configured),
/// then GOM/CGOM of every member with the whole population as donors.
Population single_population_generation(const Population &population, const SchemeConfig &config,
                                        Evaluator &evaluator, RandomSource &rng);

/// Pyramid of unique-genotype levels used by P3 and P3-MI.
class Pyramid
{
  public:
    std::size_t level_count() const { return levels_.size(); }
    const Population &level(std::size_t index) const { return levels_.at(index).members; }

    /// Inserts into `level`, creating it (and any below) if needed.
    /// Returns false when the genotype is already stored at that level.
    bool insert(std::size_t level, const Solution &solution);
    bool contains(std::size_t level, const Genotype &genotype) const;

  private:
    struct Level
    {
        Population members;
        std::unordered_set<std::string> keys;
    };
    std::vector<Level> levels_;
};

/// Number of new solutions added in iteration `iteration` (1-based).
std::size_t pyramid_growth(SchemeKind scheme, std::size_t iteration);

/// One iteration of P3 / P3-MI on the pyramid. Returns the number of new
/// solutions inserted into level 0.
std::size_t pyramid_iteration(Pyramid &pyramid, std::size_t iteration, const SchemeConfig &config,
                              Evaluator &evaluator, RandomSource &rng);

/// Runs the configured scheme until the optimum (if known) is found, the
/// budget runs out, or (single population) the population converges.
/// Parameterless schemes require an evaluation or time limit.
RunRecord run(const SchemeConfig &config, const FitnessFunction &problem, EvaluationBudget budget,
              std::uint64_t seed, RunLog *log = nullptr, std::string problem_name = {});

} // namespace gomea
