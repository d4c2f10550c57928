#ifndef EKNN_CLASSIFIERS_HPP
#define EKNN_CLASSIFIERS_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eknn/dataset.hpp"
#include "eknn/distance.hpp"
#include "eknn/neighbors.hpp"

namespace eknn {

/// Per-class accumulator: vote counts, inverted-index probabilities, or
/// weighted sums, depending on the classifier.
using ClassScores = std::vector<double>;

/// A classification outcome: the winning class plus the score vector it was
/// chosen from.
struct Prediction {
    int class_index = 0;
    ClassScores scores;
};

/// Rank weight 1 / log2(1 + rank). Strictly decreasing, weight(1) == 1.
double weight(std::size_t rank);

/**
 * Shared argmax with the documented tie rule: the highest-scoring class
 * wins; among exactly tied classes the one owning the nearest neighbor
 * (scanning the first tie_scan entries of the list) wins; any remaining tie
 * falls back to the lowest class index.
 */
int argmax_class(std::span<const double> scores, const NeighborList& neighbors,
                 std::size_t tie_scan);

/// Fixed-k majority vote over the first k neighbors.
Prediction knn_predict(const NeighborList& neighbors, std::size_t k, int n_classes);

/**
 * Inverted-indexes-of-neighbors classifier: every training example
 * contributes 1/rank to its class, and the sums are normalized by the n-th
 * harmonic number, so the scores form a probability vector. Requires the
 * ranking of the entire training set.
 */
Prediction iinc_predict(const NeighborList& ranked, int n_classes);

/**
 * The parameter-free ensemble: one weak KNN vote per odd k in
 * {1, 3, ..., kmax}, fused with the weighted-sum rule where neighbor rank i
 * contributes weight(i). kmax must be odd and is normally kmax_for(n).
 */
Prediction ensemble_predict(const NeighborList& neighbors, std::size_t kmax,
                            int n_classes);

/// Which classifier to run: knn:<k>, sqrt-knn, iinc, or ensemble.
struct ClassifierSpec {
    enum class Kind { fixed_k, sqrt_n, iinc, ensemble };

    Kind kind = Kind::ensemble;
    std::size_t k = 0; // fixed_k only

    static ClassifierSpec parse(std::string_view text);
    static ClassifierSpec fixed(std::size_t k) { return {Kind::fixed_k, k}; }

    std::string name() const;  // canonical flag form, e.g. "knn:3"
    std::string label() const; // display form, e.g. "3-NN"
};

/// End-to-end prediction for one query against a training set.
Prediction classify(const Dataset& train, std::span<const double> query,
                    const ClassifierSpec& method, Metric metric);

} // namespace eknn

#endif // EKNN_CLASSIFIERS_HPP
