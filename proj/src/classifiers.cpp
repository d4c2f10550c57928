#include "eknn/classifiers.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace eknn {

double weight(std::size_t rank) {
    return 1.0 / std::log2(1.0 + static_cast<double>(rank));
}

int argmax_class(std::span<const double> scores, const NeighborList& neighbors,
                 std::size_t tie_scan) {
    if (scores.empty()) throw std::invalid_argument("argmax_class: no classes");
    double best = scores[0];
    for (double s : scores) best = std::max(best, s);

    int tied = 0;
    int lowest = -1;
    for (std::size_t c = 0; c < scores.size(); ++c) {
        if (scores[c] == best) {
            ++tied;
            if (lowest < 0) lowest = static_cast<int>(c);
        }
    }
    if (tied == 1) return lowest;

    tie_scan = std::min(tie_scan, neighbors.size());
    for (std::size_t i = 0; i < tie_scan; ++i) {
        const int c = neighbors.classes[i];
        if (scores[c] == best) return c;
    }
    return lowest;
}

Prediction knn_predict(const NeighborList& neighbors, std::size_t k, int n_classes) {
    if (k < 1 || k > neighbors.size())
        throw std::invalid_argument("knn_predict: k=" + std::to_string(k) +
                                    " exceeds the " + std::to_string(neighbors.size()) +
                                    " available neighbors");
    Prediction p;
    p.scores.assign(n_classes, 0.0);
    for (std::size_t i = 0; i < k; ++i) p.scores[neighbors.classes[i]] += 1.0;
    p.class_index = argmax_class(p.scores, neighbors, k);
    return p;
}

Prediction iinc_predict(const NeighborList& ranked, int n_classes) {
    if (ranked.size() == 0) throw std::invalid_argument("iinc_predict: empty ranking");
    Prediction p;
    p.scores.assign(n_classes, 0.0);
    double harmonic = 0.0;
    for (std::size_t i = 1; i <= ranked.size(); ++i) {
        const double inv = 1.0 / static_cast<double>(i);
        p.scores[ranked.classes[i - 1]] += inv;
        harmonic += inv;
    }
    for (double& s : p.scores) s /= harmonic;
    // ties resolve to the lowest class index
    p.class_index = argmax_class(p.scores, ranked, 0);
    return p;
}

Prediction ensemble_predict(const NeighborList& neighbors, std::size_t kmax,
                            int n_classes) {
    if (kmax < 1 || kmax > neighbors.size())
        throw std::invalid_argument("ensemble_predict: kmax=" + std::to_string(kmax) +
                                    " exceeds the " + std::to_string(neighbors.size()) +
                                    " available neighbors");
    if (kmax % 2 == 0)
        throw std::invalid_argument("ensemble_predict: kmax must be odd, got " +
                                    std::to_string(kmax));
    Prediction p;
    p.scores.assign(n_classes, 0.0);
    for (std::size_t k = 1; k <= kmax; k += 2)
        for (std::size_t i = 1; i <= k; ++i)
            p.scores[neighbors.classes[i - 1]] += weight(i);
    p.class_index = argmax_class(p.scores, neighbors, kmax);
    return p;
}

ClassifierSpec ClassifierSpec::parse(std::string_view text) {
    if (text == "ensemble") return {Kind::ensemble, 0};
    if (text == "iinc") return {Kind::iinc, 0};
    if (text == "sqrt-knn") return {Kind::sqrt_n, 0};
    if (text.rfind("knn:", 0) == 0) {
        const auto num = text.substr(4);
        std::size_t k = 0;
        auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), k);
        if (ec == std::errc{} && ptr == num.data() + num.size() && k >= 1)
            return {Kind::fixed_k, k};
    }
    throw std::invalid_argument("unknown classifier '" + std::string(text) +
                                "' (expected knn:<k>, sqrt-knn, iinc or ensemble)");
}

std::string ClassifierSpec::name() const {
    switch (kind) {
    case Kind::fixed_k: return "knn:" + std::to_string(k);
    case Kind::sqrt_n: return "sqrt-knn";
    case Kind::iinc: return "iinc";
    case Kind::ensemble: return "ensemble";
    }
    return "?";
}

std::string ClassifierSpec::label() const {
    switch (kind) {
    case Kind::fixed_k: return std::to_string(k) + "-NN";
    case Kind::sqrt_n: return "sqrt(n)-NN";
    case Kind::iinc: return "IINC";
    case Kind::ensemble: return "Ensemble";
    }
    return "?";
}

Prediction classify(const Dataset& train, std::span<const double> query,
                    const ClassifierSpec& method, Metric metric) {
    if (train.size() == 0) throw DataError("classify: empty training set");
    if (query.size() != train.n_features)
        throw DataError("classify: query has " + std::to_string(query.size()) +
                        " features, training set has " + std::to_string(train.n_features));

    switch (method.kind) {
    case ClassifierSpec::Kind::fixed_k:
        return knn_predict(nearest(train, query, method.k, metric), method.k,
                           train.n_classes);
    case ClassifierSpec::Kind::sqrt_n: {
        // rule-of-thumb baseline: k = floor(sqrt(n)), even k allowed
        auto k = static_cast<std::size_t>(std::sqrt(static_cast<double>(train.size())));
        k = std::max<std::size_t>(k, 1);
        return knn_predict(nearest(train, query, k, metric), k, train.n_classes);
    }
    case ClassifierSpec::Kind::iinc:
        return iinc_predict(rank_all(train, query, metric), train.n_classes);
    case ClassifierSpec::Kind::ensemble: {
        const std::size_t kmax = kmax_for(train.size());
        return ensemble_predict(nearest(train, query, kmax, metric), kmax,
                                train.n_classes);
    }
    }
    throw std::invalid_argument("classify: unknown classifier kind");
}

} // namespace eknn
