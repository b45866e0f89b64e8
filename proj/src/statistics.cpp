#include "gomea/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace gomea
{

double order_statistic(std::span<const double> values, std::size_t k)
{
    if (k < 1 || k > values.size())
        throw std::out_of_range("order statistic rank out of range");
    std::vector<double> sorted(values.begin(), values.end());
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k - 1), sorted.end());
    return sorted[k - 1];
}

double median(std::span<const double> values)
{
    if (values.empty())
        throw std::invalid_argument("median of an empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t m = sorted.size();
    if (m % 2 == 1)
        return sorted[m / 2];
    return 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
}

OrderSummary summarize(std::span<const double> values)
{
    if (values.empty())
        throw std::invalid_argument("summary of an empty sample");
    OrderSummary s;
    s.count = values.size();
    s.median = median(values);
    s.lower_rank = std::min<std::size_t>(3, (s.count + 1) / 2);
    s.upper_rank = s.count + 1 - s.lower_rank;
    s.lower = order_statistic(values, s.lower_rank);
    s.upper = order_statistic(values, s.upper_rank);
    return s;
}

namespace
{

// Twice the midrank of every value of the pooled sample, so ranks stay integral.
std::vector<long long> doubled_midranks(const std::vector<double> &pooled)
{
    const std::size_t n = pooled.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return pooled[x] < pooled[y]; });
    std::vector<long long> ranks(n);
    for (std::size_t i = 0; i < n;)
    {
        std::size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]])
            ++j;
        // positions i..j (0-based) share rank ((i+1) + (j+1)) / 2
        const auto doubled = static_cast<long long>(i + j + 2);
        for (std::size_t t = i; t <= j; ++t)
            ranks[order[t]] = doubled;
        i = j + 1;
    }
    return ranks;
}

// Null distribution of the doubled rank sum of `m` items drawn without
// replacement from `ranks`: returns P(sum <= observed) and P(sum >= observed).
std::pair<double, double> rank_sum_tails(const std::vector<long long> &ranks, std::size_t m, long long observed)
{
    std::vector<long long> largest = ranks;
    std::sort(largest.begin(), largest.end(), std::greater<>());
    const long long max_sum = std::accumulate(largest.begin(), largest.begin() + static_cast<std::ptrdiff_t>(m), 0LL);
    const auto width = static_cast<std::size_t>(max_sum + 1);
    // ways[j][s]: number of j-subsets (of items seen so far) with doubled rank sum s.
    std::vector<std::vector<long double>> ways(m + 1, std::vector<long double>(width, 0.0L));
    ways[0][0] = 1.0L;
    std::size_t seen = 0;
    for (auto r : ranks)
    {
        ++seen;
        for (std::size_t j = std::min(m, seen); j >= 1; --j)
        {
            auto &to = ways[j];
            const auto &from = ways[j - 1];
            for (std::size_t s = width; s-- > static_cast<std::size_t>(r);)
                to[s] += from[s - static_cast<std::size_t>(r)];
        }
    }
    long double total = 0.0L;
    long double at_most = 0.0L;
    long double at_least = 0.0L;
    for (std::size_t s = 0; s < width; ++s)
    {
        const long double w = ways[m][s];
        total += w;
        if (static_cast<long long>(s) <= observed)
            at_most += w;
        if (static_cast<long long>(s) >= observed)
            at_least += w;
    }
    return {static_cast<double>(at_most / total), static_cast<double>(at_least / total)};
}

} // namespace

double mann_whitney_less(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || b.empty())
        throw std::invalid_argument("Mann-Whitney test needs two non-empty samples");
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const auto ranks = doubled_midranks(pooled);
    const long long sum_a = std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(na), 0LL);
    const long long sum_b = std::accumulate(ranks.begin() + static_cast<std::ptrdiff_t>(na), ranks.end(), 0LL);

    if (std::min(na, nb) <= 8)
    {
        if (na <= nb)
            return rank_sum_tails(ranks, na, sum_a).first;
        // "a smaller" is equivalent to "b has large ranks".
        return rank_sum_tails(ranks, nb, sum_b).second;
    }

    const double n = static_cast<double>(na + nb);
    const double u = static_cast<double>(sum_a) / 2.0 - static_cast<double>(na) * (static_cast<double>(na) + 1.0) / 2.0;
    const double mean = static_cast<double>(na) * static_cast<double>(nb) / 2.0;

    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    for (std::size_t i = 0; i < sorted.size();)
    {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i])
            ++j;
        const double t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }
    const double variance =
        static_cast<double>(na) * static_cast<double>(nb) / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if (variance <= 0.0)
        return 1.0;
    const double z = (u + 0.5 - mean) / std::sqrt(variance);
    return std::clamp(0.5 * std::erfc(-z / std::sqrt(2.0)), 0.0, 1.0);
}

std::vector<RankedConfig> rank_configs(std::span<const ConfigScores> configs)
{
    std::vector<const ConfigScores *> complete;
    std::size_t problems = 0;
    for (const auto &c : configs)
    {
        if (problems == 0)
            problems = c.medians.size();
        if (c.medians.size() != problems)
            throw std::invalid_argument("all configs must report the same problems");
        if (std::all_of(c.medians.begin(), c.medians.end(), [](const auto &m) { return m.has_value(); }))
            complete.push_back(&c);
    }
    if (!configs.empty() && problems == 0)
        throw std::invalid_argument("ranking needs at least one problem");

    std::vector<RankedConfig> ranked(complete.size());
    for (std::size_t i = 0; i < complete.size(); ++i)
    {
        ranked[i].name = complete[i]->name;
        ranked[i].ranks.resize(problems);
    }
    for (std::size_t p = 0; p < problems; ++p)
    {
        for (std::size_t i = 0; i < complete.size(); ++i)
        {
            const double own = *complete[i]->medians[p];
            std::size_t below = 0;
            std::size_t equal = 0;
            for (const auto *other : complete)
            {
                const double v = *other->medians[p];
                below += v < own ? 1 : 0;
                equal += v == own ? 1 : 0;
            }
            // Ranks below+1 .. below+equal share their mean.
            ranked[i].ranks[p] = static_cast<double>(below) + (static_cast<double>(equal) + 1.0) / 2.0;
        }
    }
    for (auto &r : ranked)
        r.average_rank = std::accumulate(r.ranks.begin(), r.ranks.end(), 0.0) / static_cast<double>(problems);
    std::sort(ranked.begin(), ranked.end(), [](const RankedConfig &x, const RankedConfig &y) {
        return x.average_rank != y.average_rank ? x.average_rank < y.average_rank : x.name < y.name;
    });
    return ranked;
}

} // namespace gomea
