#include "eknn/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace eknn {

namespace {

struct Candidate {
    double dist;
    std::size_t index;
};

struct CountingLess {
    SelectionStats* stats;

    bool operator()(const Candidate& a, const Candidate& b) const {
        if (stats) ++stats->comparisons;
        if (a.dist != b.dist) return a.dist < b.dist;
        return a.index < b.index;
    }
};

// Ordered tree capped at a fixed capacity: every candidate is inserted, and
// the current maximum is evicted whenever the size exceeds the cap. Each
// streamed element therefore costs O(log capacity) comparisons, which is
// what makes the whole selection pass O(n log sqrt(n)) when capacity is
// sqrt(n). (Candidates are unique because the training index breaks ties.)
class BoundedTree {
public:
    BoundedTree(std::size_t capacity, SelectionStats* stats)
        : capacity_(capacity), stats_(stats), tree_(CountingLess{stats}) {}

    void offer(const Candidate& c) {
        tree_.insert(c);
        if (tree_.size() > capacity_) tree_.erase(std::prev(tree_.end()));
        if (stats_) stats_->peak_size = std::max(stats_->peak_size, tree_.size());
    }

    std::vector<Candidate> take_sorted() const {
        return {tree_.begin(), tree_.end()};
    }

private:
    std::size_t capacity_;
    SelectionStats* stats_;
    std::multiset<Candidate, CountingLess> tree_;
};

NeighborList to_list(const Dataset& train, const std::vector<Candidate>& sorted) {
    NeighborList list;
    list.classes.reserve(sorted.size());
    list.distances.reserve(sorted.size());
    for (const auto& c : sorted) {
        list.classes.push_back(train.labels[c.index]);
        list.distances.push_back(c.dist);
    }
    return list;
}

} // namespace

std::size_t kmax_for(std::size_t n_train) {
    if (n_train == 0) throw std::invalid_argument("kmax_for: empty training set");
    auto root = static_cast<std::size_t>(std::sqrt(static_cast<double>(n_train)));
    while ((root + 1) * (root + 1) <= n_train) ++root;
    while (root * root > n_train) --root;
    if (root % 2 == 0) --root;
    return std::max<std::size_t>(root, 1);
}

NeighborList nearest(const Dataset& train, std::span<const double> query,
                     std::size_t m, Metric metric, SelectionStats* stats) {
    if (m < 1 || m > train.size())
        throw std::invalid_argument("nearest: m=" + std::to_string(m) +
                                    " out of range for " + std::to_string(train.size()) +
                                    " training examples");
    BoundedTree tree(m, stats);
    for (std::size_t i = 0; i < train.size(); ++i)
        tree.offer({distance(metric, train.examples[i], query), i});
    return to_list(train, tree.take_sorted());
}

NeighborList rank_all(const Dataset& train, std::span<const double> query, Metric metric) {
    if (train.size() == 0) throw std::invalid_argument("rank_all: empty training set");
    std::vector<Candidate> all;
    all.reserve(train.size());
    for (std::size_t i = 0; i < train.size(); ++i)
        all.push_back({distance(metric, train.examples[i], query), i});
    std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        return a.index < b.index;
    });
    return to_list(train, all);
}

} // namespace eknn
