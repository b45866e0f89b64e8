#pragma once

#include "gomea/core.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gomea
{

enum class ProblemKind
{
    OneMax,
    Trap55,
    Trap54,
    BimodalTrap,
    NkS1,
    Hiff,
    MaxCutSparse,
    MaxCutDense,
    SpinGlass,
    MaxSat,
};

/// Command-line spelling, e.g. "trap55" or "maxcut-sparse".
std::string_view kind_name(ProblemKind kind);
/// Throws std::invalid_argument for unknown names.
ProblemKind parse_kind(std::string_view name);

/// True for kinds whose data lives in an instance (graph, table or CNF).
bool kind_has_payload(ProblemKind kind);

struct WeightedEdge
{
    std::size_t u = 0;
    std::size_t v = 0;
    std::int64_t weight = 0;

    bool operator==(const WeightedEdge &) const = default;
};

/// Subfunction tables of a maximum-overlap NK landscape. Row i holds the
/// 2^k values of window x_i..x_{i+k-1}, column = window bits read as a
/// big-endian integer.
struct NkTable
{
    std::size_t k = 0;
    std::size_t rows = 0;
    std::vector<double> values;

    double at(std::size_t row, std::size_t column) const { return values[(row << k) + column]; }

    bool operator==(const NkTable &) const = default;
};

struct Clause
{
    std::array<std::size_t, 3> variables{};
    std::array<bool, 3> negated{};

    bool satisfied_by(const Genotype &g) const;
    bool operator==(const Clause &) const = default;
};

class InvalidInstance : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/// Immutable benchmark instance. Evaluation is thread-safe.
class ProblemInstance final : public FitnessFunction
{
  public:
    static ProblemInstance onemax(std::size_t length);
    static ProblemInstance trap(ProblemKind kind, std::size_t length);
    static ProblemInstance bimodal_trap(std::size_t length);
    static ProblemInstance hiff(std::size_t length);
    static ProblemInstance nk(std::size_t length, NkTable table);
    /// MAXCUT (either variant) or spin-glass; validates vertices and weights.
    static ProblemInstance graph(ProblemKind kind, std::size_t length, std::vector<WeightedEdge> edges);
    static ProblemInstance maxsat(std::size_t length, std::vector<Clause> clauses);

    ProblemKind kind() const { return kind_; }
    std::size_t length() const override { return length_; }
    double evaluate(const Genotype &genotype) const override;
    std::optional<double> optimum() const override { return optimum_; }

    void set_optimum(std::optional<double> value) { optimum_ = value; }

    /// Block size and block start stride of the trap kinds.
    std::size_t trap_size() const { return trap_size_; }
    std::size_t trap_shift() const { return trap_shift_; }
    const std::vector<WeightedEdge> &edges() const { return edges_; }
    const NkTable &nk_table() const { return nk_; }
    const std::vector<Clause> &clauses() const { return clauses_; }

    bool operator==(const ProblemInstance &other) const;

  private:
    ProblemInstance(ProblemKind kind, std::size_t length) : kind_(kind), length_(length) {}

    ProblemKind kind_;
    std::size_t length_;
    std::optional<double> optimum_;
    std::size_t trap_size_ = 0;
    std::size_t trap_shift_ = 0;
    std::vector<WeightedEdge> edges_;
    NkTable nk_;
    std::vector<Clause> clauses_;
};

/// Seeded instance generator. Analytic optima are attached for OneMax,
/// traps, bimodal trap and HIFF; planted MAX-3SAT instances declare the
/// clause count. Other kinds need attach_optimum().
ProblemInstance generate_instance(ProblemKind kind, std::size_t length, std::uint64_t seed);

/// Rows x columns of the 2D torus used for sparse MAXCUT and spin-glass.
std::pair<std::size_t, std::size_t> torus_shape(std::size_t length);

enum class OptimumMethod
{
    BruteForce,
    NkDynamicProgramming,
    Declared,
};

/// Exact maximum of an NK-S1 landscape and one genotype attaining it,
/// by dynamic programming over the k-1 bit boundary between windows.
std::pair<double, Genotype> nk_optimum(const NkTable &table, std::size_t length);

/// Maximum over all 2^l genotypes; l must be at most 30.
std::pair<double, Genotype> brute_force_optimum(const FitnessFunction &problem);

ProblemInstance attach_optimum(ProblemInstance instance, OptimumMethod method);

} // namespace gomea
