#pragma once

#include "gomea/core.hpp"

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace gomea
{

enum class SimilarityMeasure
{
    MutualInformation,
    NormalizedMutualInformation,
};

/// Symmetric pairwise variable similarity, estimated from a population.
class SimilarityMatrix
{
  public:
    SimilarityMatrix(std::size_t length, SimilarityMeasure measure);

    std::size_t length() const { return length_; }
    SimilarityMeasure measure() const { return measure_; }

    double operator()(std::size_t i, std::size_t j) const { return values_[i * length_ + j]; }
    /// Sets both (i, j) and (j, i).
    void set(std::size_t i, std::size_t j, double value);

  private:
    std::size_t length_;
    SimilarityMeasure measure_;
    std::vector<double> values_;
};

/// Pairwise MI or NMI over the population's empirical bit frequencies
/// (log base 2). NMI is 0 when the joint entropy is 0. The diagonal is 0.
SimilarityMatrix build_similarity_matrix(std::span<const Solution> population, SimilarityMeasure measure);

struct FosElement
{
    /// Sorted variable indices.
    std::vector<std::size_t> indices;
    /// Similarity of the two clusters merged into this element; NaN for singletons.
    double merge_similarity = std::numeric_limits<double>::quiet_NaN();

    std::size_t size() const { return indices.size(); }
};

/// Ordered family of subsets, optionally with per-element conditioning sets.
struct LinkageModel
{
    std::vector<FosElement> elements;
    /// dependencies[i] is the conditioning set of elements[i]; empty vector
    /// (no entry at all) when conditional mixing is not used.
    std::vector<std::vector<std::size_t>> dependencies;

    bool has_dependencies() const { return dependencies.size() == elements.size() && !elements.empty(); }
};

/// Full hierarchical clustering result: leaves 0..l-1 are the singletons,
/// node l+m is the m-th merge. The last node is the root.
struct LinkageTree
{
    static constexpr std::size_t no_child = std::numeric_limits<std::size_t>::max();

    std::vector<FosElement> nodes;
    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
};

/// Average-linkage (UPGMA) agglomeration using the nearest-neighbour chain
/// algorithm. Ties between equally similar clusters are broken at random.
LinkageTree cluster_linkage_tree(const SimilarityMatrix &similarity, RandomSource &rng);

/// Tree nodes retained after filtering: both children of any merge whose
/// similarity exceeds 1 - epsilon are dropped.
std::vector<bool> filtered_nodes(const LinkageTree &tree, double epsilon = 1e-6);

/// Learns a linkage tree model. The root is kept; see without_root().
LinkageModel build_linkage_tree(const SimilarityMatrix &similarity, bool filter, RandomSource &rng);

/// Drops every element that spans all `length` variables.
LinkageModel without_root(LinkageModel model, std::size_t length);

enum class FosOrdering
{
    Random,
    AscendingSize,
};

/// Random permutation, or stable sort by ascending element size.
/// Dependency sets move along with their elements.
LinkageModel order_fos(LinkageModel model, FosOrdering ordering, RandomSource &rng);

/// Attaches conditioning sets: for element F, variable j outside F is a
/// dependency iff its mean similarity to F exceeds lambda * M > 0, where M is
/// the largest such mean over all variables outside F.
LinkageModel learn_dependencies(LinkageModel model, const SimilarityMatrix &similarity, double lambda);

} // namespace gomea
