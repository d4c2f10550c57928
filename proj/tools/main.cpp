// eknn: KNN classification and benchmark CLI.
//
//   eknn predict --train iris.csv --query "5.1,3.5,1.4,0.2" --classifier ensemble
//   eknn bench   --train wine.csv --runs 10 --seed 0 --format json
//   eknn compare --datasets iris.csv,wine.csv --seed 7 --out results.txt
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eknn/classifiers.hpp"
#include "eknn/dataset.hpp"
#include "eknn/distance.hpp"
#include "eknn/evaluation.hpp"
#include "eknn/neighbors.hpp"

namespace {

struct CommonOpts {
    std::string metric = "manhattan";
    std::string label_column = "-1";
    bool has_header = false;
};

struct PredictOpts : CommonOpts {
    std::string train_path;
    std::string query;
    std::string query_file;
    std::string classifier = "ensemble";
};

struct BenchOpts : CommonOpts {
    std::string train_path;
    std::vector<std::string> classifiers;
    double test_fraction = 0.30;
    int runs = 10;
    std::uint64_t seed = 0;
    std::string normalize_scope = "train";
    std::string format = "table";
    std::string out_path;
};

struct CompareOpts : BenchOpts {
    std::vector<std::string> datasets;
};

std::vector<double> parse_query_vector(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        const char* first = cell.data();
        const char* last = first + cell.size();
        while (first < last && (*first == ' ' || *first == '\t')) ++first;
        while (last > first && (last[-1] == ' ' || last[-1] == '\t')) --last;
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(first, last, v, std::chars_format::general);
        if (ec != std::errc{} || ptr != last)
            throw eknn::DataError("'" + cell + "' is not a number in query vector");
        values.push_back(v);
    }
    if (values.empty()) throw eknn::DataError("empty query vector");
    return values;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw eknn::DataError("cannot write to " + out_path);
    out << text;
}

void print_prediction(const eknn::Dataset& train, const eknn::Prediction& pred) {
    std::cout << train.class_names[pred.class_index] << "\n";
    for (int c = 0; c < train.n_classes; ++c)
        std::cout << "  " << train.class_names[c] << " = " << pred.scores[c] << "\n";
}

int run_predict(const PredictOpts& opt) {
    const auto metric = eknn::parse_metric(opt.metric);
    const auto method = eknn::ClassifierSpec::parse(opt.classifier);
    const auto label = eknn::LabelColumn::from_string(opt.label_column);

    const auto raw = eknn::load_csv(opt.train_path, label, opt.has_header);
    const auto bounds = eknn::fit_normalizer(raw);
    const auto train = eknn::normalize(raw, bounds);

    std::vector<std::vector<double>> queries;
    if (!opt.query.empty()) {
        queries.push_back(parse_query_vector(opt.query));
    } else {
        std::ifstream in(opt.query_file);
        if (!in) throw eknn::DataError("cannot open file: " + opt.query_file);
        std::string line;
        bool skip_header = opt.has_header;
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            if (skip_header) {
                skip_header = false;
                continue;
            }
            queries.push_back(parse_query_vector(line));
        }
        if (queries.empty()) throw eknn::DataError(opt.query_file + ": no query rows");
    }

    for (const auto& q : queries) {
        const auto pred =
            eknn::classify(train, eknn::normalize(q, bounds), method, metric);
        print_prediction(train, pred);
    }
    return 0;
}

eknn::ExperimentConfig to_config(const BenchOpts& opt, const std::string& dataset,
                                 const std::vector<eknn::ClassifierSpec>& roster) {
    eknn::ExperimentConfig config;
    config.dataset_path = dataset;
    config.label_column = eknn::LabelColumn::from_string(opt.label_column);
    config.has_header = opt.has_header;
    config.test_fraction = opt.test_fraction;
    config.repetitions = opt.runs;
    config.base_seed = opt.seed;
    config.metric = eknn::parse_metric(opt.metric);
    config.normalize_scope = eknn::parse_scope(opt.normalize_scope);
    config.roster = roster;
    return config;
}

int run_bench(const BenchOpts& opt) {
    std::vector<eknn::ClassifierSpec> roster;
    for (const auto& text : opt.classifiers)
        roster.push_back(eknn::ClassifierSpec::parse(text));
    if (roster.empty()) roster.push_back({eknn::ClassifierSpec::Kind::ensemble, 0});

    const auto report = eknn::run_experiment(to_config(opt, opt.train_path, roster));
    const auto format =
        opt.format == "json" ? eknn::ReportFormat::json : eknn::ReportFormat::table;
    write_output(eknn::render_report(report, format), opt.out_path);
    return 0;
}

// Full comparison roster: 1,3,5,7,9-NN, sqrt(n)-NN, 30,45,60-NN, IINC, ensemble.
std::vector<eknn::ClassifierSpec> comparison_roster() {
    std::vector<eknn::ClassifierSpec> roster;
    for (std::size_t k : {1u, 3u, 5u, 7u, 9u}) roster.push_back(eknn::ClassifierSpec::fixed(k));
    roster.push_back({eknn::ClassifierSpec::Kind::sqrt_n, 0});
    for (std::size_t k : {30u, 45u, 60u}) roster.push_back(eknn::ClassifierSpec::fixed(k));
    roster.push_back({eknn::ClassifierSpec::Kind::iinc, 0});
    roster.push_back({eknn::ClassifierSpec::Kind::ensemble, 0});
    return roster;
}

std::string dataset_stem(const std::string& path) {
    auto slash = path.find_last_of("/\\");
    auto name = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = name.find_last_of('.');
    return dot == std::string::npos ? name : name.substr(0, dot);
}

int run_compare(const CompareOpts& opt) {
    const auto full_roster = comparison_roster();

    struct Row {
        std::string dataset;
        eknn::ExperimentReport report;
    };
    std::vector<Row> rows;

    for (const auto& path : opt.datasets) {
        const auto label = eknn::LabelColumn::from_string(opt.label_column);
        const auto data = eknn::load_csv(path, label, opt.has_header);

        const auto n_test = static_cast<std::size_t>(
            std::ceil(opt.test_fraction * static_cast<double>(data.size())));
        const std::size_t n_train = data.size() - n_test;

        std::vector<eknn::ClassifierSpec> roster;
        for (const auto& spec : full_roster) {
            if (spec.kind == eknn::ClassifierSpec::Kind::fixed_k && spec.k > n_train) {
                std::cerr << "warning: skipping " << spec.label() << " on " << path
                          << " (k=" << spec.k << " > training size " << n_train << ")\n";
                continue;
            }
            roster.push_back(spec);
        }

        rows.push_back({path, eknn::run_experiment(data, to_config(opt, path, roster))});
    }

    std::string text;
    if (opt.format == "json") {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto& row : rows) {
            nlohmann::ordered_json means;
            for (std::size_t c = 0; c < row.report.config.roster.size(); ++c)
                means[row.report.config.roster[c].name()] = row.report.means[c];
            j.push_back({{"dataset", row.dataset}, {"means", means}});
        }
        text = j.dump(2) + "\n";
    } else {
        std::ostringstream out;
        out << "dataset";
        for (const auto& spec : full_roster) out << "\t" << spec.label();
        out << "\n";
        for (const auto& row : rows) {
            out << dataset_stem(row.dataset);
            for (const auto& spec : full_roster) {
                std::string cell = "-";
                for (std::size_t c = 0; c < row.report.config.roster.size(); ++c) {
                    if (row.report.config.roster[c].name() == spec.name()) {
                        char buf[32];
                        std::snprintf(buf, sizeof(buf), "%.2f",
                                      eknn::round_half_up(row.report.means[c], 2));
                        cell = buf;
                        break;
                    }
                }
                out << "\t" << cell;
            }
            out << "\n";
        }
        text = out.str();
    }
    write_output(text, opt.out_path);
    return 0;
}

void add_common_flags(CLI::App* cmd, CommonOpts& opt) {
    cmd->add_option("--metric", opt.metric, "Distance metric")
        ->check(CLI::IsMember({"manhattan", "euclidean"}))
        ->capture_default_str();
    cmd->add_option("--label-column", opt.label_column,
                    "Label column: 0-based index (negative counts from the end) "
                    "or header name")
        ->capture_default_str();
    cmd->add_flag("--header", opt.has_header, "Treat the first CSV row as a header");
}

void add_bench_flags(CLI::App* cmd, BenchOpts& opt, bool with_roster) {
    if (with_roster)
        cmd->add_option("--classifier", opt.classifiers,
                        "Classifier to run: knn:<k>, sqrt-knn, iinc or ensemble "
                        "(repeatable; default ensemble)");
    cmd->add_option("--test-fraction", opt.test_fraction, "Fraction held out for testing")
        ->check(CLI::Validator(
            [](std::string& s) -> std::string {
                const double v = std::atof(s.c_str());
                return (v > 0.0 && v < 1.0) ? "" : "must lie in (0,1)";
            },
            "FRACTION"))
        ->capture_default_str();
    cmd->add_option("--runs", opt.runs, "Number of repeated splits")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--seed", opt.seed, "Base RNG seed; run r uses seed+r")
        ->capture_default_str();
    cmd->add_option("--normalize-scope", opt.normalize_scope,
                    "Fit normalization bounds on the training split only, or on "
                    "the full dataset")
        ->check(CLI::IsMember({"train", "all"}))
        ->capture_default_str();
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"table", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", opt.out_path, "Write the report to a file instead of stdout");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"KNN classification and benchmarking "
                 "(fixed-k, sqrt-knn, IINC and the parameter-free ensemble)"};
    app.require_subcommand(1);

    PredictOpts predict_opt;
    auto* predict = app.add_subcommand("predict", "Classify query vectors");
    predict->add_option("--train", predict_opt.train_path, "Training CSV")->required();
    auto* qv = predict->add_option("--query", predict_opt.query,
                                   "Query vector, e.g. \"5.1,3.5,1.4,0.2\"");
    auto* qf = predict->add_option("--query-file", predict_opt.query_file,
                                   "CSV of query vectors (features only)");
    qv->excludes(qf);
    predict->add_option("--classifier", predict_opt.classifier,
                        "knn:<k>, sqrt-knn, iinc or ensemble")
        ->capture_default_str();
    add_common_flags(predict, predict_opt);

    BenchOpts bench_opt;
    auto* bench = app.add_subcommand("bench", "Benchmark classifiers on one dataset");
    bench->add_option("--train", bench_opt.train_path, "Dataset CSV")->required();
    add_bench_flags(bench, bench_opt, true);
    add_common_flags(bench, bench_opt);

    CompareOpts compare_opt;
    auto* compare = app.add_subcommand(
        "compare", "Run the full comparison roster over several datasets");
    compare->add_option("--datasets", compare_opt.datasets, "Dataset CSVs")
        ->required()
        ->delimiter(',');
    add_bench_flags(compare, compare_opt, false);
    add_common_flags(compare, compare_opt);

    try {
        app.parse(argc, argv);
        if (*predict) {
            if (predict_opt.query.empty() && predict_opt.query_file.empty())
                throw CLI::RequiredError("--query or --query-file");
            if (!predict_opt.query.empty()) {
                try {
                    parse_query_vector(predict_opt.query);
                } catch (const eknn::DataError& e) {
                    throw CLI::ValidationError("--query", e.what());
                }
            }
            try {
                eknn::ClassifierSpec::parse(predict_opt.classifier);
            } catch (const std::invalid_argument& e) {
                throw CLI::ValidationError("--classifier", e.what());
            }
        }
        if (*bench) {
            for (const auto& text : bench_opt.classifiers) {
                try {
                    eknn::ClassifierSpec::parse(text);
                } catch (const std::invalid_argument& e) {
                    throw CLI::ValidationError("--classifier", e.what());
                }
            }
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*predict) return run_predict(predict_opt);
        if (*bench) return run_bench(bench_opt);
        return run_compare(compare_opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
