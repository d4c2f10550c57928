#ifndef EKNN_DATASET_HPP
#define EKNN_DATASET_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eknn {

/// Raised for anything caused by bad user data: unreadable or malformed
/// files, dimension mismatches, degenerate splits.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Labeled tabular dataset: one feature vector per example plus a dense
 * 0-based class index. class_names maps indices back to the original label
 * strings in first-appearance order.
 */
struct Dataset {
    std::vector<std::vector<double>> examples;
    std::vector<int> labels;
    std::size_t n_features = 0;
    int n_classes = 0;
    std::vector<std::string> class_names;

    std::size_t size() const { return examples.size(); }
};

/// Per-feature (min, max) pairs fitted on training data.
struct NormalizationBounds {
    std::vector<std::pair<double, double>> ranges;

    std::size_t size() const { return ranges.size(); }
};

/// Seeded train/test partition request. test_fraction must lie in (0,1).
struct SplitSpec {
    double test_fraction = 0.30;
    std::uint64_t seed = 0;
};

/// Selects the label column of a CSV file, by 0-based index (negative
/// counts from the end, -1 = last column) or by header name.
struct LabelColumn {
    int index = -1;
    std::string name;

    bool by_name() const { return !name.empty(); }

    // "-1" or "3" -> index, anything non-integer -> header name
    static LabelColumn from_string(const std::string& s);
};

/**
 * Loads a comma-delimited numeric table. Feature cells must parse as finite
 * reals; the label column may hold arbitrary strings and is mapped to dense
 * 0-based class indices in first-appearance order.
 *
 * Throws DataError on an unreadable file, an empty dataset, a row whose
 * column count differs from the first row, or a non-numeric feature cell
 * (the message names the offending 1-based line).
 */
Dataset load_csv(const std::string& path, const LabelColumn& label = {},
                 bool has_header = false);

/// Per-feature min/max over the training examples. Throws DataError when
/// train is empty.
NormalizationBounds fit_normalizer(const Dataset& train);

/**
 * Min-max rescaling: x -> (x - min) / (max - min) per feature. Degenerate
 * features (max == min) map to 0. Values outside the fitted range are NOT
 * clamped, so test data may fall outside [0,1].
 */
Dataset normalize(const Dataset& data, const NormalizationBounds& bounds);
std::vector<double> normalize(const std::vector<double>& x,
                              const NormalizationBounds& bounds);

/**
 * Deterministic seeded split: a Fisher-Yates shuffle of the example indices
 * driven by mt19937_64 (self-contained, so identical on every platform),
 * first ceil(test_fraction * n) to test, remainder to train.
 *
 * Throws DataError when either partition would be empty.
 */
std::pair<Dataset, Dataset> split(const Dataset& data, const SplitSpec& spec);

} // namespace eknn

#endif // EKNN_DATASET_HPP
