#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace noncollide::experiments {

struct KsResult {
    double d = 0.0;
    double critical = 0.0;  // asymptotic 1% level
    std::size_t n = 0;
    std::size_t m = 0;  // 0 for the one-sample test
    bool pass() const { return d <= critical; }
};

double ks_critical_1pct(std::size_t n);
double ks_critical_1pct(std::size_t n, std::size_t m);

// `sorted` must be ascending.
KsResult ks_statistic(std::span<const double> sorted, const std::function<double(double)>& cdf);
KsResult ks_statistic(std::span<const double> sorted_a, std::span<const double> sorted_b);

struct ChiSquareResult {
    double statistic = 0.0;
    double critical = 0.0;
    int bins = 0;
    int dof = 0;
    double min_expected = 0.0;
    bool pass() const { return statistic <= critical; }
};

double chi_square_critical_1pct(int dof);

// Counts against bins given by interior edges; probabilities from the CDF.
ChiSquareResult chi_square(std::span<const double> sample, std::span<const double> edges,
                           const std::function<double(double)>& cdf);
// Equal-probability bins from a quantile function.
std::vector<double> equiprobable_edges(const std::function<double(double)>& quantile, int bins);

struct MeanStat {
    double mean = 0.0;
    double std_error = 0.0;
};
MeanStat mean_and_stderr(std::span<const double> v);

}  // namespace noncollide::experiments
