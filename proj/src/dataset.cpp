#include "eknn/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string_view>
#include <unordered_map>

namespace eknn {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_line(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            cells.emplace_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return cells;
}

bool parse_finite(std::string_view cell, double& out) {
    const char* first = cell.data();
    const char* last = first + cell.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) return false;
    out = value;
    return true;
}

// Unbiased bounded draw (rejection sampling), so the shuffle below is fully
// specified by this code rather than by the standard library.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

Dataset subset(const Dataset& data, const std::vector<std::size_t>& indices) {
    Dataset out;
    out.n_features = data.n_features;
    out.n_classes = data.n_classes;
    out.class_names = data.class_names;
    out.examples.reserve(indices.size());
    out.labels.reserve(indices.size());
    for (std::size_t i : indices) {
        out.examples.push_back(data.examples[i]);
        out.labels.push_back(data.labels[i]);
    }
    return out;
}

} // namespace

LabelColumn LabelColumn::from_string(const std::string& s) {
    LabelColumn col;
    int idx = 0;
    auto sv = trim(s);
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), idx);
    if (ec == std::errc{} && ptr == sv.data() + sv.size()) {
        col.index = idx;
    } else {
        col.name = std::string(sv);
    }
    return col;
}

Dataset load_csv(const std::string& path, const LabelColumn& label, bool has_header) {
    std::ifstream file(path);
    if (!file.is_open()) throw DataError("cannot open file: " + path);

    Dataset data;
    std::unordered_map<std::string, int> class_index;
    std::vector<std::string> header;
    std::size_t n_columns = 0;
    std::size_t label_col = 0;
    bool columns_known = false;
    std::size_t line_no = 0;

    std::string line;
    while (std::getline(file, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split_line(line);

        if (has_header && header.empty()) {
            header = std::move(cells);
            continue;
        }

        if (!columns_known) {
            n_columns = cells.size();
            if (n_columns < 2)
                throw DataError(path + ": need at least one feature column and a label column");
            if (label.by_name()) {
                if (!has_header)
                    throw DataError(path + ": label column '" + label.name +
                                    "' requested but the file has no header");
                auto it = std::find(header.begin(), header.end(), label.name);
                if (it == header.end())
                    throw DataError(path + ": no header column named '" + label.name + "'");
                label_col = static_cast<std::size_t>(it - header.begin());
                if (label_col >= n_columns)
                    throw DataError(path + ": header column '" + label.name +
                                    "' is at position " + std::to_string(label_col) +
                                    " but data rows have " + std::to_string(n_columns) +
                                    " columns");
            } else {
                long idx = label.index;
                if (idx < 0) idx += static_cast<long>(n_columns);
                if (idx < 0 || idx >= static_cast<long>(n_columns))
                    throw DataError(path + ": label column index " +
                                    std::to_string(label.index) + " out of range for " +
                                    std::to_string(n_columns) + " columns");
                label_col = static_cast<std::size_t>(idx);
            }
            columns_known = true;
        }

        if (cells.size() != n_columns)
            throw DataError(path + ": line " + std::to_string(line_no) + " has " +
                            std::to_string(cells.size()) + " columns, expected " +
                            std::to_string(n_columns));

        std::vector<double> features;
        features.reserve(n_columns - 1);
        for (std::size_t c = 0; c < n_columns; ++c) {
            if (c == label_col) continue;
            double value = 0.0;
            if (!parse_finite(cells[c], value))
                throw DataError(path + ": line " + std::to_string(line_no) +
                                ": non-numeric feature value '" + cells[c] + "'");
            features.push_back(value);
        }

        const std::string& cls = cells[label_col];
        auto [it, inserted] = class_index.emplace(cls, data.n_classes);
        if (inserted) {
            data.class_names.push_back(cls);
            ++data.n_classes;
        }
        data.labels.push_back(it->second);
        data.examples.push_back(std::move(features));
    }

    if (data.examples.empty()) throw DataError(path + ": no data rows");
    data.n_features = n_columns - 1;
    return data;
}

NormalizationBounds fit_normalizer(const Dataset& train) {
    if (train.size() == 0) throw DataError("fit_normalizer: empty training set");
    NormalizationBounds bounds;
    bounds.ranges.assign(train.n_features,
                         {std::numeric_limits<double>::infinity(),
                          -std::numeric_limits<double>::infinity()});
    for (const auto& x : train.examples) {
        for (std::size_t j = 0; j < train.n_features; ++j) {
            bounds.ranges[j].first = std::min(bounds.ranges[j].first, x[j]);
            bounds.ranges[j].second = std::max(bounds.ranges[j].second, x[j]);
        }
    }
    return bounds;
}

std::vector<double> normalize(const std::vector<double>& x,
                              const NormalizationBounds& bounds) {
    if (x.size() != bounds.size())
        throw DataError("normalize: vector has " + std::to_string(x.size()) +
                        " features, bounds have " + std::to_string(bounds.size()));
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const auto [lo, hi] = bounds.ranges[j];
        out[j] = (hi > lo) ? (x[j] - lo) / (hi - lo) : 0.0;
    }
    return out;
}

Dataset normalize(const Dataset& data, const NormalizationBounds& bounds) {
    if (data.n_features != bounds.size())
        throw DataError("normalize: dataset has " + std::to_string(data.n_features) +
                        " features, bounds have " + std::to_string(bounds.size()));
    Dataset out = data;
    for (auto& x : out.examples) x = normalize(x, bounds);
    return out;
}

std::pair<Dataset, Dataset> split(const Dataset& data, const SplitSpec& spec) {
    const std::size_t n = data.size();
    if (n < 2) throw DataError("split: need at least 2 examples");
    if (!(spec.test_fraction > 0.0 && spec.test_fraction < 1.0))
        throw DataError("split: test_fraction must lie in (0,1)");

    const auto n_test =
        static_cast<std::size_t>(std::ceil(spec.test_fraction * static_cast<double>(n)));
    if (n_test < 1 || n_test >= n)
        throw DataError("split: fraction " + std::to_string(spec.test_fraction) +
                        " of " + std::to_string(n) + " examples leaves a partition empty");

    std::vector<std::size_t> indices(n);
    for (std::size_t i = 0; i < n; ++i) indices[i] = i;
    std::mt19937_64 rng(spec.seed);
    for (std::size_t i = n - 1; i > 0; --i)
        std::swap(indices[i], indices[draw_below(rng, i + 1)]);

    std::vector<std::size_t> test_idx(indices.begin(), indices.begin() + n_test);
    std::vector<std::size_t> train_idx(indices.begin() + n_test, indices.end());
    return {subset(data, train_idx), subset(data, test_idx)};
}

} // namespace eknn
