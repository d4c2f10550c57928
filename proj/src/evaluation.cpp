#include "eknn/evaluation.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <json.hpp>

namespace eknn {

namespace {

unsigned worker_count(std::size_t jobs) {
    unsigned cap = 0;
    if (const char* env = std::getenv("ENSEMBLE_KNN_THREADS")) {
        char* end = nullptr;
        const unsigned long parsed = std::strtoul(env, &end, 10);
        if (end && *end == '\0') cap = static_cast<unsigned>(parsed);
    }
    if (cap == 0) cap = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(cap, jobs));
}

// Runs fn(i) for i in [0, jobs) on a small worker pool. Each index is
// processed exactly once; callers index into preallocated output slots, so
// completion order never affects results. The first exception thrown by any
// worker is rethrown on the calling thread after the pool drains.
void parallel_for(std::size_t jobs, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = worker_count(jobs);
    if (workers <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= jobs || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed.store(true);
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

void validate(const ExperimentConfig& config) {
    if (config.repetitions < 1)
        throw std::invalid_argument("config: repetitions must be >= 1");
    if (!(config.test_fraction > 0.0 && config.test_fraction < 1.0))
        throw std::invalid_argument("config: test_fraction must lie in (0,1)");
    if (config.roster.empty())
        throw std::invalid_argument("config: empty classifier roster");
}

std::string format_cell(double mean) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", round_half_up(mean, 2));
    return buf;
}

} // namespace

NormalizeScope parse_scope(std::string_view name) {
    if (name == "train") return NormalizeScope::train;
    if (name == "all") return NormalizeScope::all;
    throw std::invalid_argument("unknown normalize scope '" + std::string(name) +
                                "' (expected train or all)");
}

std::string_view to_string(NormalizeScope scope) {
    return scope == NormalizeScope::train ? "train" : "all";
}

double accuracy(const std::vector<int>& predictions, const std::vector<int>& truth) {
    if (predictions.empty()) throw std::invalid_argument("accuracy: empty input");
    if (predictions.size() != truth.size())
        throw std::invalid_argument("accuracy: " + std::to_string(predictions.size()) +
                                    " predictions vs " + std::to_string(truth.size()) +
                                    " labels");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i)
        if (predictions[i] == truth[i]) ++correct;
    return static_cast<double>(correct) / static_cast<double>(predictions.size());
}

ExperimentReport run_experiment(const Dataset& data, const ExperimentConfig& config) {
    validate(config);

    ExperimentReport report;
    report.config = config;
    report.means.assign(config.roster.size(), 0.0);

    for (int run = 0; run < config.repetitions; ++run) {
        const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(run);
        Dataset train, test;
        try {
            std::tie(train, test) = split(data, {config.test_fraction, seed});
        } catch (const DataError& e) {
            throw DataError("run " + std::to_string(run) + ": " + e.what());
        }

        const auto bounds = fit_normalizer(
            config.normalize_scope == NormalizeScope::train ? train : data);
        train = normalize(train, bounds);
        test = normalize(test, bounds);

        // predictions[c][i]: roster classifier c on test example i
        std::vector<std::vector<int>> predictions(
            config.roster.size(), std::vector<int>(test.size(), 0));
        parallel_for(test.size(), [&](std::size_t i) {
            for (std::size_t c = 0; c < config.roster.size(); ++c)
                predictions[c][i] =
                    classify(train, test.examples[i], config.roster[c], config.metric)
                        .class_index;
        });

        RunResult result;
        result.seed = seed;
        result.accuracies.reserve(config.roster.size());
        for (std::size_t c = 0; c < config.roster.size(); ++c)
            result.accuracies.push_back(accuracy(predictions[c], test.labels));
        report.runs.push_back(std::move(result));
    }

    for (std::size_t c = 0; c < config.roster.size(); ++c) {
        double sum = 0.0;
        for (const auto& run : report.runs) sum += run.accuracies[c];
        report.means[c] = sum / static_cast<double>(report.runs.size());
    }
    return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    validate(config);
    const Dataset data =
        load_csv(config.dataset_path, config.label_column, config.has_header);
    return run_experiment(data, config);
}

double round_half_up(double value, int decimals) {
    const double scale = std::pow(10.0, decimals);
    // tiny nudge so decimal values stored just below x.5 still round up
    return std::floor(value * scale + 0.5 + 1e-9) / scale;
}

std::string render_report(const ExperimentReport& report, ReportFormat format) {
    const auto& config = report.config;
    if (format == ReportFormat::table) {
        std::ostringstream out;
        out << "dataset: " << config.dataset_path << "  (" << report.runs.size()
            << " runs, " << config.test_fraction << " test fraction, "
            << to_string(config.metric) << " distance, seed "
            << config.base_seed << ")\n";
        for (std::size_t c = 0; c < config.roster.size(); ++c)
            out << "  " << config.roster[c].label() << "\t"
                << format_cell(report.means[c]) << "\n";
        return out.str();
    }

    nlohmann::ordered_json j;
    j["config"] = {
        {"dataset", config.dataset_path},
        {"test_fraction", config.test_fraction},
        {"repetitions", config.repetitions},
        {"base_seed", config.base_seed},
        {"metric", to_string(config.metric)},
        {"normalize_scope", to_string(config.normalize_scope)},
        {"classifiers", [&] {
             std::vector<std::string> names;
             for (const auto& spec : config.roster) names.push_back(spec.name());
             return names;
         }()},
    };
    j["runs"] = nlohmann::ordered_json::array();
    for (const auto& run : report.runs) {
        nlohmann::ordered_json per_classifier;
        for (std::size_t c = 0; c < config.roster.size(); ++c)
            per_classifier[config.roster[c].name()] = run.accuracies[c];
        j["runs"].push_back({{"seed", run.seed}, {"per_classifier", per_classifier}});
    }
    nlohmann::ordered_json means;
    for (std::size_t c = 0; c < config.roster.size(); ++c)
        means[config.roster[c].name()] = report.means[c];
    j["means"] = means;
    return j.dump(2) + "\n";
}

} // namespace eknn
