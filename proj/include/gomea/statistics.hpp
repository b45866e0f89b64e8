#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gomea
{

/// k-th smallest value, 1-based. Requires 1 <= k <= values.size().
double order_statistic(std::span<const double> values, std::size_t k);

double median(std::span<const double> values);

/// Median plus a symmetric pair of order statistics: the 3rd and the
/// (m-2)-th of m values (3rd and 48th for 50 runs), pulled toward the
/// median when fewer than 5 values are available.
struct OrderSummary
{
    std::size_t count = 0;
    double median = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    std::size_t lower_rank = 0;
    std::size_t upper_rank = 0;
};

OrderSummary summarize(std::span<const double> values);

/// One-sided Mann-Whitney U test of "a is stochastically smaller than b".
/// Returns P(W_a <= observed) under the null (rank-sum of a, midranks for
/// ties). Exact permutation distribution when the smaller sample has at most
/// 8 values; normal approximation with tie and continuity corrections otherwise.
double mann_whitney_less(std::span<const double> a, std::span<const double> b);

struct ConfigScores
{
    std::string name;
    /// One median per problem; nullopt when the config failed that problem.
    std::vector<std::optional<double>> medians;
};

struct RankedConfig
{
    std::string name;
    double average_rank = 0.0;
    std::vector<double> ranks;
};

/// Fractional ranking per problem (1 = fewest evaluations, ties share the
/// mean rank), averaged over problems. Configs that failed any problem are
/// dropped. Output is sorted by average rank, then name.
std::vector<RankedConfig> rank_configs(std::span<const ConfigScores> configs);

} // namespace gomea
