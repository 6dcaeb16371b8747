#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <atnevo/rng.hpp>
#include <atnevo/stats.hpp>

using namespace atnevo;

TEST_CASE("welch t-test matches the hand-computed reference") {
    // {1,2,3} vs {4,5,6}: equal variances 1, t = -3/sqrt(2/3), df = 4.
    const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
    const TTestResult r = welch_t_test(a, b);
    CHECK(r.t == Catch::Approx(-3.6742346141747672).margin(1e-9));
    CHECK(r.df == Catch::Approx(4.0).margin(1e-9));
    CHECK(r.p == Catch::Approx(0.021311641128756724).margin(1e-9));
}

TEST_CASE("welch t-test degenerate and symmetric cases") {
    const std::vector<double> same{1, 2, 3};
    CHECK(welch_t_test(same, same).p == 1.0);
    CHECK(welch_t_test(same, same).t == 0.0);

    const std::vector<double> zeros{0, 0, 0, 0}, ones{1, 1, 1, 1};
    const TTestResult sep = welch_t_test(zeros, ones);
    CHECK(sep.p == 0.0);
    CHECK(std::isinf(sep.t));

    const std::vector<double> flat{2, 2, 2, 2};
    CHECK(welch_t_test(flat, flat).p == 1.0);

    const std::vector<double> x{1.0, 2.5, 3.5, 9.0}, y{2.0, 2.0, 8.0};
    const TTestResult xy = welch_t_test(x, y);
    const TTestResult yx = welch_t_test(y, x);
    CHECK(xy.p == Catch::Approx(yx.p).margin(1e-15));
    CHECK(xy.t == Catch::Approx(-yx.t).margin(1e-15));

    const std::vector<double> tiny{1};
    CHECK_THROWS_AS(welch_t_test(tiny, x), std::invalid_argument);
}

TEST_CASE("quantiles interpolate linearly between order statistics") {
    std::vector<double> hundred;
    for (int i = 1; i <= 100; ++i) hundred.push_back(i);
    CHECK(quantile_linear(hundred, 0.25) == Catch::Approx(25.75).margin(1e-9));
    CHECK(quantile_linear(hundred, 0.75) == Catch::Approx(75.25).margin(1e-9));

    const std::vector<double> four{1, 2, 3, 4};
    const QuartileSummary s = quartile_summary(four);
    CHECK(s.median == Catch::Approx(2.5).margin(1e-9));
    CHECK(s.q1 == Catch::Approx(1.75).margin(1e-9));
    CHECK(s.q3 == Catch::Approx(3.25).margin(1e-9));
    CHECK(s.min == 1);
    CHECK(s.max == 4);

    const QuartileSummary lone = quartile_summary({7.5});
    CHECK(lone.min == 7.5);
    CHECK(lone.q1 == 7.5);
    CHECK(lone.median == 7.5);
    CHECK(lone.q3 == 7.5);
    CHECK(lone.max == 7.5);

    CHECK_THROWS_AS(quartile_summary({}), std::invalid_argument);
    CHECK_THROWS_AS(quantile_linear({1.0}, 1.5), std::invalid_argument);
}

TEST_CASE("quartile summaries are ordered on random samples") {
    RngStream rng(606);
    for (int round = 0; round < 100; ++round) {
        std::vector<double> xs(1 + rng.uniform_below(40));
        for (double& x : xs) x = rng.uniform01() * 50;
        const QuartileSummary s = quartile_summary(xs);
        REQUIRE(s.min <= s.q1);
        REQUIRE(s.q1 <= s.median);
        REQUIRE(s.median <= s.q3);
        REQUIRE(s.q3 <= s.max);
    }
}

TEST_CASE("chi-square goodness of fit separates uniform from biased counts") {
    RngStream rng(1001);
    std::vector<std::uint64_t> counts(10, 0);
    for (int i = 0; i < 100000; ++i) ++counts[rng.uniform_below(10)];
    const std::vector<double> uniform(10, 0.1);
    CHECK(chi_square_gof(counts, uniform).p > 0.01);

    std::vector<std::uint64_t> biased = counts;
    biased[0] += 2000;
    CHECK(chi_square_gof(biased, uniform).p < 1e-6);

    const std::vector<std::uint64_t> two{50, 50};
    const std::vector<double> bad{0.0, 1.0};
    CHECK_THROWS_AS(chi_square_gof(two, bad), std::invalid_argument);
    const std::vector<std::uint64_t> solo{50};
    const std::vector<double> one{1.0};
    CHECK_THROWS_AS(chi_square_gof(solo, one), std::invalid_argument);
}

TEST_CASE("mean and sample variance") {
    const std::vector<double> xs{2, 4, 4, 4, 5, 5, 7, 9};
    const MeanVar mv = mean_and_sample_variance(xs);
    CHECK(mv.mean == Catch::Approx(5.0).margin(1e-12));
    CHECK(mv.variance == Catch::Approx(32.0 / 7).margin(1e-12));
    CHECK(mv.n == 8);
}
