#include "gomea/linkage.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gomea
{

SimilarityMatrix::SimilarityMatrix(std::size_t length, SimilarityMeasure measure)
    : length_(length), measure_(measure), values_(length * length, 0.0)
{
}

void SimilarityMatrix::set(std::size_t i, std::size_t j, double value)
{
    values_[i * length_ + j] = value;
    values_[j * length_ + i] = value;
}

SimilarityMatrix build_similarity_matrix(std::span<const Solution> population, SimilarityMeasure measure)
{
    if (population.empty())
        throw std::invalid_argument("similarity matrix needs at least one solution");
    const std::size_t n = population.size();
    const std::size_t length = population.front().genotype.size();
    SimilarityMatrix result(length, measure);

    // Column-major bit packing: one bitset over the population per variable.
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> columns(length * words, 0);
    std::vector<std::size_t> ones(length, 0);
    for (std::size_t s = 0; s < n; ++s)
    {
        const auto &g = population[s].genotype;
        if (g.size() != length)
            throw std::invalid_argument("population members differ in length");
        const std::uint64_t mask = std::uint64_t{1} << (s % 64);
        for (std::size_t v = 0; v < length; ++v)
        {
            if (g[v])
            {
                columns[v * words + s / 64] |= mask;
                ++ones[v];
            }
        }
    }

    // -p log2 p for p = c / n, indexed by count c.
    std::vector<double> plogp(n + 1, 0.0);
    for (std::size_t c = 1; c < n; ++c)
    {
        const double p = static_cast<double>(c) / static_cast<double>(n);
        plogp[c] = -p * std::log2(p);
    }

    std::vector<double> marginal(length);
    for (std::size_t v = 0; v < length; ++v)
        marginal[v] = plogp[ones[v]] + plogp[n - ones[v]];

    for (std::size_t i = 0; i < length; ++i)
    {
        const std::uint64_t *ci = &columns[i * words];
        for (std::size_t j = i + 1; j < length; ++j)
        {
            const std::uint64_t *cj = &columns[j * words];
            std::size_t n11 = 0;
            for (std::size_t w = 0; w < words; ++w)
                n11 += static_cast<std::size_t>(std::popcount(ci[w] & cj[w]));
            const std::size_t n10 = ones[i] - n11;
            const std::size_t n01 = ones[j] - n11;
            const std::size_t n00 = n - n11 - n10 - n01;
            const double joint = plogp[n00] + plogp[n01] + plogp[n10] + plogp[n11];
            double mi = std::max(0.0, marginal[i] + marginal[j] - joint);
            double value = mi;
            if (measure == SimilarityMeasure::NormalizedMutualInformation)
                value = joint > 0.0 ? std::min(1.0, mi / joint) : 0.0;
            result.set(i, j, value);
        }
    }
    return result;
}

LinkageTree cluster_linkage_tree(const SimilarityMatrix &similarity, RandomSource &rng)
{
    const std::size_t length = similarity.length();
    if (length == 0)
        throw std::invalid_argument("cannot cluster zero variables");

    LinkageTree tree;
    tree.nodes.reserve(2 * length - 1);
    tree.left.assign(length, LinkageTree::no_child);
    tree.right.assign(length, LinkageTree::no_child);
    for (std::size_t v = 0; v < length; ++v)
        tree.nodes.push_back(FosElement{{v}, std::numeric_limits<double>::quiet_NaN()});

    // Working copy of cluster-to-cluster similarity; cluster r is stored at
    // the row of its representative variable.
    std::vector<double> s(length * length);
    for (std::size_t i = 0; i < length; ++i)
        for (std::size_t j = 0; j < length; ++j)
            s[i * length + j] = similarity(i, j);
    auto at = [&](std::size_t a, std::size_t b) -> double & { return s[a * length + b]; };

    std::vector<std::size_t> cluster_size(length, 1);
    std::vector<std::size_t> node_of(length);
    std::iota(node_of.begin(), node_of.end(), 0);

    // Randomized order makes first-found maxima a uniform tie-break.
    std::vector<std::size_t> remaining(length);
    std::iota(remaining.begin(), remaining.end(), 0);
    std::shuffle(remaining.begin(), remaining.end(), rng.engine());

    std::vector<std::size_t> chain;
    chain.reserve(length);

    auto most_similar_remaining = [&](std::size_t leader) {
        std::size_t best = 0;
        double best_value = -std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < remaining.size(); ++r)
        {
            const double value = at(leader, remaining[r]);
            if (value > best_value)
            {
                best_value = value;
                best = r;
            }
        }
        return best;
    };
    auto take_remaining = [&](std::size_t position) {
        const std::size_t cluster = remaining[position];
        std::swap(remaining[position], remaining.back());
        remaining.pop_back();
        return cluster;
    };

    for (std::size_t merges = 0; merges + 1 < length;)
    {
        if (chain.empty())
        {
            chain.push_back(remaining.back());
            remaining.pop_back();
        }
        const std::size_t leader = chain.back();
        if (chain.size() == 1)
        {
            chain.push_back(take_remaining(most_similar_remaining(leader)));
            continue;
        }

        const std::size_t previous = chain[chain.size() - 2];
        const double to_previous = at(leader, previous);
        if (!remaining.empty())
        {
            const std::size_t position = most_similar_remaining(leader);
            if (at(leader, remaining[position]) > to_previous)
            {
                chain.push_back(take_remaining(position));
                continue;
            }
        }

        // leader and previous are reciprocal nearest neighbours.
        chain.pop_back();
        chain.pop_back();
        const std::size_t keep = std::min(leader, previous);
        const std::size_t drop = std::max(leader, previous);
        const double wa = static_cast<double>(cluster_size[keep]);
        const double wb = static_cast<double>(cluster_size[drop]);
        auto update = [&](std::size_t other) {
            const double merged = (wa * at(keep, other) + wb * at(drop, other)) / (wa + wb);
            at(keep, other) = merged;
            at(other, keep) = merged;
        };
        for (auto other : chain)
            update(other);
        for (auto other : remaining)
            update(other);

        FosElement merged;
        const auto &a = tree.nodes[node_of[keep]].indices;
        const auto &b = tree.nodes[node_of[drop]].indices;
        merged.indices.reserve(a.size() + b.size());
        std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged.indices));
        merged.merge_similarity = to_previous;
        tree.left.push_back(node_of[keep]);
        tree.right.push_back(node_of[drop]);
        tree.nodes.push_back(std::move(merged));

        cluster_size[keep] += cluster_size[drop];
        node_of[keep] = tree.nodes.size() - 1;
        ++merges;

        remaining.push_back(keep);
        std::swap(remaining[rng.below(remaining.size())], remaining.back());
    }
    return tree;
}

std::vector<bool> filtered_nodes(const LinkageTree &tree, double epsilon)
{
    std::vector<bool> kept(tree.nodes.size(), true);
    for (std::size_t node = 0; node < tree.nodes.size(); ++node)
    {
        if (tree.left[node] == LinkageTree::no_child)
            continue;
        if (tree.nodes[node].merge_similarity > 1.0 - epsilon)
        {
            kept[tree.left[node]] = false;
            kept[tree.right[node]] = false;
        }
    }
    return kept;
}

LinkageModel build_linkage_tree(const SimilarityMatrix &similarity, bool filter, RandomSource &rng)
{
    LinkageTree tree = cluster_linkage_tree(similarity, rng);
    std::vector<bool> kept(tree.nodes.size(), true);
    if (filter)
        kept = filtered_nodes(tree);

    LinkageModel model;
    model.elements.reserve(tree.nodes.size());
    for (std::size_t node = 0; node < tree.nodes.size(); ++node)
    {
        if (kept[node])
            model.elements.push_back(std::move(tree.nodes[node]));
    }
    return model;
}

LinkageModel without_root(LinkageModel model, std::size_t length)
{
    LinkageModel out;
    const bool with_deps = model.has_dependencies();
    for (std::size_t i = 0; i < model.elements.size(); ++i)
    {
        if (model.elements[i].size() == length)
            continue;
        out.elements.push_back(std::move(model.elements[i]));
        if (with_deps)
            out.dependencies.push_back(std::move(model.dependencies[i]));
    }
    return out;
}

LinkageModel order_fos(LinkageModel model, FosOrdering ordering, RandomSource &rng)
{
    std::vector<std::size_t> order(model.elements.size());
    std::iota(order.begin(), order.end(), 0);
    if (ordering == FosOrdering::Random)
    {
        std::shuffle(order.begin(), order.end(), rng.engine());
    }
    else
    {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return model.elements[a].size() < model.elements[b].size();
        });
    }

    LinkageModel out;
    const bool with_deps = model.has_dependencies();
    out.elements.reserve(order.size());
    for (auto i : order)
    {
        out.elements.push_back(std::move(model.elements[i]));
        if (with_deps)
            out.dependencies.push_back(std::move(model.dependencies[i]));
    }
    return out;
}

LinkageModel learn_dependencies(LinkageModel model, const SimilarityMatrix &similarity, double lambda)
{
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw std::invalid_argument("lambda must lie in (0, 1]");
    const std::size_t length = similarity.length();
    model.dependencies.assign(model.elements.size(), {});

    std::vector<double> mean_similarity(length);
    std::vector<bool> inside(length);
    for (std::size_t e = 0; e < model.elements.size(); ++e)
    {
        const auto &indices = model.elements[e].indices;
        std::fill(inside.begin(), inside.end(), false);
        for (auto k : indices)
            inside[k] = true;

        double largest = 0.0;
        for (std::size_t j = 0; j < length; ++j)
        {
            if (inside[j])
                continue;
            double sum = 0.0;
            for (auto k : indices)
                sum += similarity(j, k);
            mean_similarity[j] = sum / static_cast<double>(indices.size());
            largest = std::max(largest, mean_similarity[j]);
        }
        const double threshold = lambda * largest;
        if (!(threshold > 0.0))
            continue;
        for (std::size_t j = 0; j < length; ++j)
        {
            if (!inside[j] && mean_similarity[j] > threshold)
                model.dependencies[e].push_back(j);
        }
    }
    return model;
}

} // namespace gomea
