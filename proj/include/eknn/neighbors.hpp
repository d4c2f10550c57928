#ifndef EKNN_NEIGHBORS_HPP
#define EKNN_NEIGHBORS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "eknn/dataset.hpp"
#include "eknn/distance.hpp"

namespace eknn {

/// Classes of the m nearest training examples, ascending by distance, with
/// the matching distances. Distance ties are broken by ascending training
/// index, so the ordering is deterministic.
struct NeighborList {
    std::vector<int> classes;
    std::vector<double> distances;

    std::size_t size() const { return classes.size(); }
};

/// Instrumentation for the bounded selection pass: how many ordering
/// comparisons were made and the largest size the bounded structure held
/// after absorbing each streamed element.
struct SelectionStats {
    std::uint64_t comparisons = 0;
    std::size_t peak_size = 0;
};

/// Largest odd integer <= floor(sqrt(n_train)), at least 1. This is both the
/// ensemble's top k and the neighbor-list length it requests.
std::size_t kmax_for(std::size_t n_train);

/**
 * The m nearest training examples in a single streaming pass: every distance
 * goes into a size-capped ordered tree that evicts its current maximum, so
 * no full sort of all n distances ever happens. With m ~ sqrt(n) the pass
 * does O(n log sqrt(n)) comparisons, against O(n log n) for sorting
 * everything.
 */
NeighborList nearest(const Dataset& train, std::span<const double> query,
                     std::size_t m, Metric metric, SelectionStats* stats = nullptr);

/// Ranks the entire training set by distance (sort-based; the IINC path
/// needs all n ranks). Same ordering and tie rule as nearest().
NeighborList rank_all(const Dataset& train, std::span<const double> query, Metric metric);

} // namespace eknn

#endif // EKNN_NEIGHBORS_HPP
