#include "noncollide/statistics.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

#include "noncollide/errors.hpp"

namespace noncollide::experiments {

namespace {
// sqrt(-0.5 ln(0.01/2)), the Kolmogorov 1% point
constexpr double kKs1 = 1.62762;
}

double ks_critical_1pct(std::size_t n) { return kKs1 / std::sqrt(double(n)); }

double ks_critical_1pct(std::size_t n, std::size_t m) {
    return kKs1 * std::sqrt(double(n + m) / (double(n) * double(m)));
}

KsResult ks_statistic(std::span<const double> s, const std::function<double(double)>& cdf) {
    if (s.empty()) throw DomainError("KS needs a nonempty sample");
    const double n = double(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double f = cdf(s[i]);
        d = std::max({d, (double(i) + 1.0) / n - f, f - double(i) / n});
    }
    return {d, ks_critical_1pct(s.size()), s.size(), 0};
}

KsResult ks_statistic(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw DomainError("KS needs nonempty samples");
    const double na = double(a.size()), nb = double(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::abs(double(i) / na - double(j) / nb));
    }
    return {d, ks_critical_1pct(a.size(), b.size()), a.size(), b.size()};
}

double chi_square_critical_1pct(int dof) {
    boost::math::chi_squared_distribution<double> dist(dof);
    return boost::math::quantile(dist, 0.99);
}

ChiSquareResult chi_square(std::span<const double> sample, std::span<const double> edges,
                           const std::function<double(double)>& cdf) {
    if (sample.empty()) throw DomainError("chi-square needs a nonempty sample");
    const std::size_t bins = edges.size() + 1;
    std::vector<double> prob(bins);
    double prev = 0.0;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const double c = cdf(edges[k]);
        prob[k] = c - prev;
        prev = c;
    }
    prob[bins - 1] = 1.0 - prev;
    std::vector<double> counts(bins, 0.0);
    for (double v : sample) counts[std::size_t(std::upper_bound(edges.begin(), edges.end(), v) - edges.begin())] += 1.0;
    ChiSquareResult r;
    r.bins = int(bins);
    r.dof = int(bins) - 1;
    const double n = double(sample.size());
    r.min_expected = n;
    for (std::size_t k = 0; k < bins; ++k) {
        const double e = n * prob[k];
        r.min_expected = std::min(r.min_expected, e);
        if (e > 0.0) r.statistic += (counts[k] - e) * (counts[k] - e) / e;
    }
    r.critical = chi_square_critical_1pct(r.dof);
    return r;
}

std::vector<double> equiprobable_edges(const std::function<double(double)>& quantile, int bins) {
    std::vector<double> e;
    for (int k = 1; k < bins; ++k) e.push_back(quantile(double(k) / bins));
    return e;
}

MeanStat mean_and_stderr(std::span<const double> v) {
    if (v.empty()) return {};
    double s = 0.0;
    for (double x : v) s += x;
    const double m = s / double(v.size());
    double q = 0.0;
    for (double x : v) q += (x - m) * (x - m);
    const double var = v.size() > 1 ? q / double(v.size() - 1) : 0.0;
    return {m, std::sqrt(var / double(v.size()))};
}

}  // namespace noncollide::experiments
