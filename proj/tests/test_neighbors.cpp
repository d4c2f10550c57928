#include <doctest.h>

#include <random>

#include "eknn/neighbors.hpp"
#include "oracles.hpp"

using namespace eknn;

namespace {

// Worked-example layout: 1-D points at distances 1..25 from a query at the
// origin, first five classes 0,1,1,1,1, remainder alternating.
Dataset worked_example_dataset() {
    Dataset data;
    data.n_features = 1;
    data.n_classes = 2;
    data.class_names = {"0", "1"};
    const std::vector<int> first{0, 1, 1, 1, 1};
    for (int i = 0; i < 25; ++i) {
        data.examples.push_back({static_cast<double>(i + 1)});
        data.labels.push_back(i < 5 ? first[i] : i % 2);
    }
    return data;
}

} // namespace

TEST_CASE("kmax_for returns the largest odd k below sqrt(n)") {
    CHECK(kmax_for(105) == 9); // floor(sqrt(105)) = 10 -> 9
    CHECK(kmax_for(8) == 1);   // floor(sqrt(8)) = 2 -> 1
    CHECK(kmax_for(25) == 5);
    CHECK(kmax_for(1) == 1);
    CHECK_THROWS_AS(kmax_for(0), std::invalid_argument);

    // independent integer-arithmetic oracle
    for (std::size_t n = 1; n <= 2000; ++n) {
        std::size_t root = 0;
        while ((root + 1) * (root + 1) <= n) ++root;
        std::size_t expected = (root % 2 == 1) ? root : root - 1;
        if (expected < 1) expected = 1;
        CHECK(kmax_for(n) == expected);
    }
}

TEST_CASE("nearest on a singleton training set") {
    Dataset data;
    data.n_features = 1;
    data.n_classes = 1;
    data.class_names = {"a"};
    data.examples = {{3.0}};
    data.labels = {0};
    const auto list = nearest(data, std::vector<double>{1.0}, 1, Metric::manhattan);
    CHECK(list.classes == std::vector<int>{0});
    CHECK(list.distances == std::vector<double>{2.0});
}

TEST_CASE("nearest reproduces the worked-example neighbor classes") {
    const auto data = worked_example_dataset();
    const auto list = nearest(data, std::vector<double>{0.0}, 5, Metric::manhattan);
    CHECK(list.classes == std::vector<int>{0, 1, 1, 1, 1});
    CHECK(list.distances == std::vector<double>{1, 2, 3, 4, 5});
}

TEST_CASE("nearest rejects m out of range") {
    const auto data = worked_example_dataset();
    CHECK_THROWS_AS(nearest(data, std::vector<double>{0.0}, 0, Metric::manhattan),
                    std::invalid_argument);
    CHECK_THROWS_AS(nearest(data, std::vector<double>{0.0}, 26, Metric::manhattan),
                    std::invalid_argument);
}

TEST_CASE("nearest matches the full-sort oracle on random instances") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<std::size_t> size(1, 200);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = size(rng);
        const auto data = oracles::random_dataset(rng, n, 3, 2);
        std::uniform_int_distribution<std::size_t> pick_m(1, n);
        const std::size_t m = pick_m(rng);
        std::vector<double> query{0.5, 0.5, 0.5};
        const auto got = nearest(data, query, m, Metric::manhattan);
        const auto want = oracles::full_sort_nearest(data, query, m, Metric::manhattan);
        CHECK(got.classes == want.classes);
        CHECK(got.distances == want.distances);
    }
}

TEST_CASE("nearest breaks distance ties by training index") {
    std::mt19937 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        // integer grids make exact ties common
        const auto data = oracles::random_grid_dataset(rng, 60, 2, 3);
        std::vector<double> query{1.0, 2.0};
        for (std::size_t m : {1ul, 5ul, 14ul, 60ul}) {
            const auto got = nearest(data, query, m, Metric::manhattan);
            const auto want =
                oracles::full_sort_nearest(data, query, m, Metric::manhattan);
            CHECK(got.classes == want.classes);
            CHECK(got.distances == want.distances);
        }
    }
}

TEST_CASE("rank_all orders every example and agrees with nearest prefixes") {
    SUBCASE("all-ties case keeps index order") {
        Dataset data;
        data.n_features = 1;
        data.n_classes = 3;
        data.class_names = {"a", "b", "c"};
        data.examples = {{1.0}, {1.0}, {1.0}};
        data.labels = {2, 0, 1};
        const auto list = rank_all(data, std::vector<double>{1.0}, Metric::manhattan);
        CHECK(list.classes == std::vector<int>{2, 0, 1});
    }
    SUBCASE("prefix property") {
        std::mt19937 rng(44);
        for (int trial = 0; trial < 50; ++trial) {
            const auto data = oracles::random_dataset(rng, 80, 3, 3);
            std::vector<double> query{0.2, 0.8, 0.5};
            const auto all = rank_all(data, query, Metric::manhattan);
            CHECK(all.size() == data.size());
            for (std::size_t i = 1; i < all.size(); ++i)
                CHECK(all.distances[i] >= all.distances[i - 1]);
            for (std::size_t m : {1ul, 7ul, 80ul}) {
                const auto prefix = nearest(data, query, m, Metric::manhattan);
                for (std::size_t i = 0; i < m; ++i) {
                    CHECK(prefix.classes[i] == all.classes[i]);
                    CHECK(prefix.distances[i] == all.distances[i]);
                }
            }
        }
    }
    SUBCASE("worked example: 25 ranks, first five classes fixed") {
        const auto data = worked_example_dataset();
        const auto all = rank_all(data, std::vector<double>{0.0}, Metric::manhattan);
        CHECK(all.size() == 25);
        CHECK(std::vector<int>(all.classes.begin(), all.classes.begin() + 5) ==
              std::vector<int>{0, 1, 1, 1, 1});
    }
}

TEST_CASE("the bounded structure never outgrows m") {
    std::mt19937 rng(45);
    const auto data = oracles::random_dataset(rng, 300, 4, 2);
    for (std::size_t m : {1ul, 17ul, 300ul}) {
        SelectionStats stats;
        nearest(data, std::vector<double>(4, 0.5), m, Metric::manhattan, &stats);
        CHECK(stats.peak_size <= m);
        CHECK(stats.peak_size == std::min(m, data.size()));
        CHECK(stats.comparisons > 0);
    }
}

TEST_CASE("bounded selection beats the full sort on comparisons") {
    std::mt19937 rng(46);
    const std::size_t n = 20000;
    const auto data = oracles::random_dataset(rng, n, 2, 2);
    const std::vector<double> query{0.5, 0.5};
    const std::size_t m = kmax_for(n);

    SelectionStats stats;
    nearest(data, query, m, Metric::manhattan, &stats);
    std::uint64_t sort_comparisons = 0;
    oracles::full_sort_nearest(data, query, m, Metric::manhattan, &sort_comparisons);
    CHECK(stats.comparisons < sort_comparisons);
}
