#ifndef EKNN_DISTANCE_HPP
#define EKNN_DISTANCE_HPP

#include <span>
#include <string>
#include <string_view>

namespace eknn {

enum class Metric { manhattan, euclidean };

/// Point-to-point distance. Throws DataError on a length mismatch.
double distance(Metric metric, std::span<const double> a, std::span<const double> b);

/// "manhattan" or "euclidean".
Metric parse_metric(std::string_view name);
std::string_view to_string(Metric metric);

} // namespace eknn

#endif // EKNN_DISTANCE_HPP
