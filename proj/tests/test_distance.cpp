#include <doctest.h>

#include <random>
#include <vector>

#include "eknn/dataset.hpp"
#include "eknn/distance.hpp"

using namespace eknn;

TEST_CASE("distance basics") {
    const std::vector<double> a{1, 2, 3};
    CHECK(distance(Metric::manhattan, a, a) == 0.0);
    CHECK(distance(Metric::manhattan, std::vector<double>{0, 0},
                   std::vector<double>{3, 4}) == 7.0);
    CHECK(distance(Metric::euclidean, std::vector<double>{0, 0},
                   std::vector<double>{3, 4}) == doctest::Approx(5.0));
}

TEST_CASE("distance rejects dimension mismatch") {
    CHECK_THROWS_AS(distance(Metric::manhattan, std::vector<double>{1},
                             std::vector<double>{1, 2}),
                    DataError);
}

TEST_CASE("metric names round-trip") {
    CHECK(parse_metric("manhattan") == Metric::manhattan);
    CHECK(parse_metric("euclidean") == Metric::euclidean);
    CHECK(to_string(Metric::manhattan) == "manhattan");
    CHECK_THROWS_AS(parse_metric("cosine"), std::invalid_argument);
}

TEST_CASE("metric axioms hold on random vectors") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> value(-10.0, 10.0);
    auto random_vec = [&](std::size_t d) {
        std::vector<double> v(d);
        for (auto& x : v) x = value(rng);
        return v;
    };

    for (auto metric : {Metric::manhattan, Metric::euclidean}) {
        for (int trial = 0; trial < 200; ++trial) {
            const auto x = random_vec(5), y = random_vec(5), z = random_vec(5);
            const double dxy = distance(metric, x, y);
            CHECK(dxy >= 0.0);
            CHECK(distance(metric, x, x) == 0.0);
            CHECK(dxy == distance(metric, y, x));
            // triangle inequality, with slack for float rounding
            CHECK(dxy <= distance(metric, x, z) + distance(metric, z, y) + 1e-12);
        }
    }
}
