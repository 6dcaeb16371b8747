#ifndef ATNEVO_STATS_HPP
#define ATNEVO_STATS_HPP

/*
 * Two-sample Welch t-test, linear-interpolation quantiles and a chi-square
 * goodness-of-fit test. Statistics and degrees of freedom are computed here;
 * only the t and chi-squared CDFs come from Boost.Math.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>

namespace atnevo {

struct MeanVar {
    double mean = 0;
    double variance = 0;  // sample variance, n-1 denominator
    std::size_t n = 0;
};

inline MeanVar mean_and_sample_variance(std::span<const double> xs) {
    MeanVar mv;
    mv.n = xs.size();
    if (mv.n == 0) return mv;
    for (double x : xs) mv.mean += x;
    mv.mean /= static_cast<double>(mv.n);
    if (mv.n < 2) return mv;
    for (double x : xs) mv.variance += (x - mv.mean) * (x - mv.mean);
    mv.variance /= static_cast<double>(mv.n - 1);
    return mv;
}

struct TTestResult {
    double t = 0;
    double df = 0;
    double p = 1;
};

// Welch's unequal-variance two-sample test, two-sided p. Degenerate samples
// (both variances zero) resolve to p=1 on equal means and p=0 otherwise.
inline TTestResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument("welch_t_test: each sample needs at least 2 values");
    const MeanVar ma = mean_and_sample_variance(a);
    const MeanVar mb = mean_and_sample_variance(b);
    const double va = ma.variance / static_cast<double>(ma.n);
    const double vb = mb.variance / static_cast<double>(mb.n);
    const double diff = ma.mean - mb.mean;

    TTestResult r;
    if (va + vb == 0) {
        if (diff == 0) return {0, 0, 1};
        r.t = diff > 0 ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
        r.df = 0;
        r.p = 0;
        return r;
    }
    r.t = diff / std::sqrt(va + vb);
    r.df = (va + vb) * (va + vb) /
           (va * va / static_cast<double>(ma.n - 1) + vb * vb / static_cast<double>(mb.n - 1));
    const boost::math::students_t dist(r.df);
    r.p = 2 * boost::math::cdf(dist, -std::abs(r.t));
    return r;
}

// Quantile by linear interpolation between order statistics: at probability
// p the index is p*(n-1), interpolated (R's type 7 rule).
inline double quantile_linear(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("quantile of empty sample");
    if (p < 0 || p > 1) throw std::invalid_argument("quantile probability out of [0,1]");
    std::sort(values.begin(), values.end());
    const double h = p * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

struct QuartileSummary {
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

inline QuartileSummary quartile_summary(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("quartile_summary of empty sample");
    QuartileSummary s;
    s.min = *std::min_element(values.begin(), values.end());
    s.max = *std::max_element(values.begin(), values.end());
    s.q1 = quantile_linear(values, 0.25);
    s.median = quantile_linear(values, 0.5);
    s.q3 = quantile_linear(values, 0.75);
    return s;
}

struct ChiSquareResult {
    double statistic = 0;
    double df = 0;
    double p = 1;
};

// Goodness of fit of observed counts against expected probabilities.
inline ChiSquareResult chi_square_gof(std::span<const std::uint64_t> counts,
                                      std::span<const double> probabilities) {
    if (counts.size() != probabilities.size() || counts.size() < 2)
        throw std::invalid_argument("chi_square_gof: need matching lists of >= 2 categories");
    std::uint64_t total = 0;
    for (std::uint64_t c : counts) total += c;
    if (total == 0) throw std::invalid_argument("chi_square_gof: no observations");

    ChiSquareResult r;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double expected = probabilities[i] * static_cast<double>(total);
        if (expected <= 0) throw std::invalid_argument("chi_square_gof: non-positive expectation");
        const double d = static_cast<double>(counts[i]) - expected;
        r.statistic += d * d / expected;
    }
    r.df = static_cast<double>(counts.size() - 1);
    const boost::math::chi_squared dist(r.df);
    r.p = 1 - boost::math::cdf(dist, r.statistic);
    return r;
}

}  // namespace atnevo

#endif
