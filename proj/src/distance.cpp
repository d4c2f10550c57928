#include "eknn/distance.hpp"

#include <cmath>
#include <stdexcept>

#include "eknn/dataset.hpp"

namespace eknn {

double distance(Metric metric, std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw DataError("distance: vectors have " + std::to_string(a.size()) + " and " +
                        std::to_string(b.size()) + " features");
    double acc = 0.0;
    switch (metric) {
    case Metric::manhattan:
        for (std::size_t j = 0; j < a.size(); ++j) acc += std::abs(a[j] - b[j]);
        return acc;
    case Metric::euclidean:
        for (std::size_t j = 0; j < a.size(); ++j) {
            const double d = a[j] - b[j];
            acc += d * d;
        }
        return std::sqrt(acc);
    }
    throw std::invalid_argument("distance: unknown metric");
}

Metric parse_metric(std::string_view name) {
    if (name == "manhattan") return Metric::manhattan;
    if (name == "euclidean") return Metric::euclidean;
    throw std::invalid_argument("unknown metric '" + std::string(name) +
                                "' (expected manhattan or euclidean)");
}

std::string_view to_string(Metric metric) {
    return metric == Metric::manhattan ? "manhattan" : "euclidean";
}

} // namespace eknn
