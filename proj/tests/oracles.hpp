#pragma once

// Slow, straightforward reference implementations used only by the tests.
// Written from the problem and statistic definitions, not from the library.

#include "gomea/problems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace oracle
{

using gomea::Genotype;
using gomea::ProblemInstance;
using gomea::ProblemKind;

inline int bit(const Genotype &g, std::size_t i) { return g[i] ? 1 : 0; }

inline double trap(const Genotype &g, int k, int s)
{
    const auto n = g.size();
    double f = 0;
    for (std::size_t i = 0; i < n; i += static_cast<std::size_t>(s))
    {
        int u = 0;
        for (int j = 0; j < k; ++j)
            u += bit(g, (i + static_cast<std::size_t>(j)) % n);
        f += u == k ? k : k - 1 - u;
    }
    return f;
}

inline double bimodal(const Genotype &g)
{
    double f = 0;
    for (std::size_t i = 0; i < g.size(); i += 6)
    {
        int u = 0;
        for (int j = 0; j < 6; ++j)
            u += bit(g, i + static_cast<std::size_t>(j));
        if (u == 0 || u == 6)
            f += 6;
        else if (u == 1 || u == 5)
            f += 0;
        else if (u == 2 || u == 4)
            f += 2;
        else
            f += 5;
    }
    return f;
}

inline double hiff(const Genotype &g)
{
    double f = 0;
    for (std::size_t size = 1; size <= g.size(); size *= 2)
    {
        for (std::size_t start = 0; start < g.size(); start += size)
        {
            bool uniform = true;
            for (std::size_t j = start; j < start + size; ++j)
                uniform = uniform && g[j] == g[start];
            if (uniform)
                f += 1;
        }
    }
    return f;
}

inline double nk(const Genotype &g, const gomea::NkTable &t)
{
    double f = 0;
    const std::size_t k = t.k;
    for (std::size_t i = 0; i + k <= g.size(); ++i)
    {
        std::size_t column = 0;
        for (std::size_t j = 0; j < k; ++j)
            column += static_cast<std::size_t>(bit(g, i + j)) << (k - 1 - j);
        f += t.values[i * (std::size_t{1} << k) + column];
    }
    return f;
}

inline double maxcut(const Genotype &g, const std::vector<gomea::WeightedEdge> &edges)
{
    double f = 0;
    for (const auto &e : edges)
        f += g[e.u] != g[e.v] ? static_cast<double>(e.weight) : 0.0;
    return f;
}

inline double spinglass(const Genotype &g, const std::vector<gomea::WeightedEdge> &edges)
{
    double f = 0;
    for (const auto &e : edges)
        f += static_cast<double>(e.weight) * (2 * bit(g, e.u) - 1) * (2 * bit(g, e.v) - 1);
    return f;
}

inline double maxsat(const Genotype &g, const std::vector<gomea::Clause> &clauses)
{
    double f = 0;
    for (const auto &c : clauses)
    {
        bool sat = false;
        for (int j = 0; j < 3; ++j)
        {
            const bool value = g[c.variables[j]] == 1;
            sat = sat || (c.negated[j] ? !value : value);
        }
        f += sat ? 1 : 0;
    }
    return f;
}

inline double evaluate(const ProblemInstance &p, const Genotype &g)
{
    switch (p.kind())
    {
    case ProblemKind::OneMax:
        return static_cast<double>(std::count(g.bits().begin(), g.bits().end(), 1));
    case ProblemKind::Trap55:
        return trap(g, 5, 5);
    case ProblemKind::Trap54:
        return trap(g, 5, 4);
    case ProblemKind::BimodalTrap:
        return bimodal(g);
    case ProblemKind::NkS1:
        return nk(g, p.nk_table());
    case ProblemKind::Hiff:
        return hiff(g);
    case ProblemKind::MaxCutSparse:
    case ProblemKind::MaxCutDense:
        return maxcut(g, p.edges());
    case ProblemKind::SpinGlass:
        return spinglass(g, p.edges());
    case ProblemKind::MaxSat:
        return maxsat(g, p.clauses());
    }
    return 0;
}

inline double entropy(const std::vector<double> &counts, double total)
{
    double h = 0;
    for (double c : counts)
    {
        if (c > 0)
        {
            const double p = c / total;
            h -= p * std::log2(p);
        }
    }
    return h;
}

/// {MI, NMI} of variables i and j from joint frequencies.
inline std::pair<double, double> mutual_information(const std::vector<Genotype> &pop, std::size_t i, std::size_t j)
{
    std::vector<double> joint(4, 0.0), xi(2, 0.0), xj(2, 0.0);
    for (const auto &g : pop)
    {
        joint[static_cast<std::size_t>(2 * bit(g, i) + bit(g, j))] += 1;
        xi[static_cast<std::size_t>(bit(g, i))] += 1;
        xj[static_cast<std::size_t>(bit(g, j))] += 1;
    }
    const double n = static_cast<double>(pop.size());
    const double hij = entropy(joint, n);
    const double mi = entropy(xi, n) + entropy(xj, n) - hij;
    return {mi, hij == 0 ? 0.0 : mi / hij};
}

/// Greedy average-linkage clustering by full recomputation. Returns every
/// merged cluster (as a sorted index set) in merge order. Only meaningful
/// when all similarities are distinct.
template <typename Sim> std::vector<std::vector<std::size_t>> upgma(std::size_t length, Sim similarity)
{
    std::vector<std::vector<std::size_t>> clusters;
    for (std::size_t i = 0; i < length; ++i)
        clusters.push_back({i});
    std::vector<std::vector<std::size_t>> merges;
    while (clusters.size() > 1)
    {
        double best = -1e300;
        std::size_t ba = 0, bb = 1;
        for (std::size_t a = 0; a < clusters.size(); ++a)
        {
            for (std::size_t b = a + 1; b < clusters.size(); ++b)
            {
                double sum = 0;
                for (auto x : clusters[a])
                    for (auto y : clusters[b])
                        sum += similarity(x, y);
                const double avg = sum / static_cast<double>(clusters[a].size() * clusters[b].size());
                if (avg > best)
                {
                    best = avg;
                    ba = a;
                    bb = b;
                }
            }
        }
        std::vector<std::size_t> merged = clusters[ba];
        merged.insert(merged.end(), clusters[bb].begin(), clusters[bb].end());
        std::sort(merged.begin(), merged.end());
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bb));
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(ba));
        clusters.push_back(merged);
        merges.push_back(merged);
    }
    return merges;
}

/// Null distribution of the rank sum of a, by enumerating every split of the
/// pooled sample (midranks for ties): {P(sum <= observed), P(sum == observed)}.
/// Feasible for pooled sizes up to ~20.
inline std::pair<double, double> mann_whitney_enumerate(const std::vector<double> &a, const std::vector<double> &b)
{
    std::vector<double> pooled = a;
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::size_t n = pooled.size();
    std::vector<double> rank(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        double less = 0, equal = 0;
        for (std::size_t j = 0; j < n; ++j)
        {
            less += pooled[j] < pooled[i] ? 1 : 0;
            equal += pooled[j] == pooled[i] ? 1 : 0;
        }
        rank[i] = less + (equal + 1) / 2;
    }
    double observed = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        observed += rank[i];
    std::uint64_t total = 0, at_most = 0, equal = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
    {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) != a.size())
            continue;
        double sum = 0;
        for (std::size_t i = 0; i < n; ++i)
            sum += (mask >> i) & 1 ? rank[i] : 0;
        ++total;
        at_most += sum <= observed + 1e-9 ? 1 : 0;
        equal += std::abs(sum - observed) <= 1e-9 ? 1 : 0;
    }
    return {static_cast<double>(at_most) / static_cast<double>(total),
            static_cast<double>(equal) / static_cast<double>(total)};
}

/// k-th smallest (1-based) by full sort.
inline double order_statistic(std::vector<double> values, std::size_t k)
{
    std::sort(values.begin(), values.end());
    return values[k - 1];
}

/// Maximum of f over all genotypes of the given length.
template <typename F> double brute_force_max(std::size_t length, F f)
{
    double best = -1e300;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << length); ++mask)
    {
        Genotype g(length);
        for (std::size_t i = 0; i < length; ++i)
            g.set(i, static_cast<std::uint8_t>((mask >> i) & 1));
        best = std::max(best, f(g));
    }
    return best;
}

} // namespace oracle
