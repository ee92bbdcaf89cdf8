#include "noncollide/marginals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "noncollide/errors.hpp"
#include "noncollide/karlin_mcgregor.hpp"
#include "noncollide/quadrature.hpp"

namespace noncollide::experiments {

TabulatedCdf TabulatedCdf::from_density(const std::function<double(double)>& density, double lo, double hi, int cells,
                                        double grading) {
    if (!(lo < hi) || cells < 2 || !(grading >= 1.0)) throw DomainError("bad tabulation range");
    TabulatedCdf t;
    t.hermite_ = true;
    t.x_.resize(std::size_t(cells) + 1);
    t.d_.resize(t.x_.size());
    t.f_.assign(t.x_.size(), 0.0);
    for (int i = 0; i <= cells; ++i) {
        t.x_[std::size_t(i)] = i == cells ? hi : lo + (hi - lo) * std::pow(double(i) / cells, grading);
        t.d_[std::size_t(i)] = density(t.x_[std::size_t(i)]);
    }
    for (std::size_t i = 0; i < std::size_t(cells); ++i) {
        const double h = t.x_[i + 1] - t.x_[i];
        const double mid = density(t.x_[i] + 0.5 * h);
        t.f_[i + 1] = t.f_[i] + h / 6.0 * (t.d_[i] + 4.0 * mid + t.d_[i + 1]);
    }
    t.mass_ = t.f_.back();
    for (double& v : t.f_) v /= t.mass_;
    for (double& v : t.d_) v /= t.mass_;
    return t;
}

TabulatedCdf TabulatedCdf::from_cdf(const std::function<double(double)>& cdf, double lo, double hi, int cells) {
    if (!(lo < hi) || cells < 2) throw DomainError("bad tabulation range");
    TabulatedCdf t;
    const double h = (hi - lo) / cells;
    for (int i = 0; i <= cells; ++i) {
        t.x_.push_back(lo + i * h);
        t.f_.push_back(cdf(t.x_.back()));
    }
    for (std::size_t i = 1; i < t.f_.size(); ++i) t.f_[i] = std::max(t.f_[i], t.f_[i - 1]);
    return t;
}

double TabulatedCdf::cdf(double x) const {
    if (x <= x_.front()) return hermite_ ? 0.0 : f_.front();
    if (x >= x_.back()) return hermite_ ? 1.0 : f_.back();
    const std::size_t i = std::size_t(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
    const double h = x_[i + 1] - x_[i], u = (x - x_[i]) / h;
    if (!hermite_) return f_[i] + u * (f_[i + 1] - f_[i]);
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
    return h00 * f_[i] + h10 * h * d_[i] + h01 * f_[i + 1] + h11 * h * d_[i + 1];
}

double TabulatedCdf::quantile(double p) const {
    double a = x_.front(), b = x_.back();
    for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        (cdf(m) < p ? a : b) = m;
    }
    return 0.5 * (a + b);
}

double TabulatedCdf::sup_distance(const TabulatedCdf& o) const {
    double d = 0.0;
    for (double x : x_) d = std::max(d, std::abs(cdf(x) - o.cdf(x)));
    for (double x : o.x_) d = std::max(d, std::abs(cdf(x) - o.cdf(x)));
    return d;
}

namespace {

// 6 panels of 12-point Gauss-Legendre on [0, 1], rescaled per use
struct UnitRule {
    std::vector<double> x, w;
    UnitRule() {
        QuadratureRule r = composite_gauss_legendre(12, 6, 0.0, 1.0);
        x = r.nodes;
        w = r.weights;
    }
};

const UnitRule& unit() {
    static const UnitRule r;
    return r;
}

double joint(const LogJoint& lj, std::span<const double> y) {
    const double v = lj(y);
    return std::isfinite(v) ? std::exp(v) : 0.0;
}

}  // namespace

std::function<double(double)> cloud_density_from_joint(LogJoint lj, int N, double lower, double reach) {
    if (N < 1 || N > 3) throw SizeLimit("cloud marginal from the joint density needs N <= 3");
    return [lj = std::move(lj), N, lower, reach](double u) -> double {
        const UnitRule& r = unit();
        const std::size_t q = r.x.size();
        const double floor = std::isfinite(lower) ? lower : -std::numeric_limits<double>::infinity();
        if (u <= floor) return 0.0;
        const double lo = std::max(floor, u - reach), hi = u + reach;
        if (N == 1) {
            std::array<double, 1> y{u};
            return joint(lj, y);
        }
        if (N == 2) {
            double s = 0.0;
            for (std::size_t i = 0; i < q; ++i) {
                std::array<double, 2> a{u, u + (hi - u) * r.x[i]};
                std::array<double, 2> b{lo + (u - lo) * r.x[i], u};
                s += r.w[i] * ((hi - u) * joint(lj, a) + (u - lo) * joint(lj, b));
            }
            return 0.5 * s;
        }
        double s = 0.0;
        for (std::size_t i = 0; i < q; ++i)
            for (std::size_t j = 0; j < q; ++j) {
                const double wij = r.w[i] * r.w[j];
                // u < y2 < y3 < hi
                {
                    const double y2 = u + (hi - u) * r.x[i];
                    const double y3 = y2 + (hi - y2) * r.x[j];
                    std::array<double, 3> y{u, y2, y3};
                    s += wij * (hi - u) * (hi - y2) * joint(lj, y);
                }
                // lo < y1 < u < y3 < hi
                {
                    std::array<double, 3> y{lo + (u - lo) * r.x[i], u, u + (hi - u) * r.x[j]};
                    s += wij * (u - lo) * (hi - u) * joint(lj, y);
                }
                // lo < y1 < y2 < u
                {
                    const double y2 = lo + (u - lo) * r.x[i];
                    const double y1 = lo + (y2 - lo) * r.x[j];
                    std::array<double, 3> y{y1, y2, u};
                    s += wij * (u - lo) * (y2 - lo) * joint(lj, y);
                }
            }
        return s / 3.0;
    };
}

LogJoint gaussian_ensemble_log_joint(int N, double beta, double t) {
    if (!(beta > 0.0)) throw BetaOutOfRange("beta must be positive");
    const km::NormalizationConstants c = km::constants(N);
    // other beta: left unnormalized, the tabulated CDF normalizes
    const double logc = beta == 1.0 ? c.log_c2 : (beta == 2.0 ? c.log_c1 : (beta == 4.0 ? c.log_c3 : 0.0));
    const double base = -logc - 0.5 * N * std::log(t) - beta * N * (N - 1) / 4.0 * std::log(t);
    return [=](std::span<const double> y) {
        double sq = 0.0, lh = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            sq += y[i] * y[i];
            for (std::size_t j = i + 1; j < y.size(); ++j) lh += std::log(std::abs(y[j] - y[i]));
        }
        return base + beta * lh - sq / (2.0 * t);
    };
}

}  // namespace noncollide::experiments
