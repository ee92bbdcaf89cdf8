#include "noncollide/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

#include "noncollide/errors.hpp"

namespace noncollide {

namespace {

// P_m(x) and P_m'(x) by the three-term recurrence
void legendre(int m, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= m; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = m * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

QuadratureRule gauss_legendre(int m, double a, double b) {
    if (m < 1) throw DomainError("gauss_legendre needs m >= 1");
    if (!(a < b)) throw DomainError("gauss_legendre needs a < b");
    QuadratureRule rule;
    rule.a = a;
    rule.b = b;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double p, dp;
        for (int it = 0; it < 100; ++it) {
            legendre(m, x, p, dp);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        legendre(m, x, p, dp);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        int lo = i, hi = m - 1 - i;
        rule.nodes[lo] = mid - half * x;
        rule.nodes[hi] = mid + half * x;
        rule.weights[lo] = half * w;
        rule.weights[hi] = half * w;
        if (lo == hi) rule.nodes[lo] = mid;
    }
    return rule;
}

QuadratureRule composite_gauss_legendre(int m, int panels, double a, double b) {
    if (panels < 1) throw DomainError("composite rule needs panels >= 1");
    QuadratureRule base = gauss_legendre(m, -1.0, 1.0);
    QuadratureRule rule;
    rule.a = a;
    rule.b = b;
    rule.nodes.reserve(std::size_t(m) * panels);
    rule.weights.reserve(std::size_t(m) * panels);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * h;
        for (int i = 0; i < m; ++i) {
            rule.nodes.push_back(lo + 0.5 * h * (base.nodes[i] + 1.0));
            rule.weights.push_back(0.5 * h * base.weights[i]);
        }
    }
    return rule;
}

namespace quad {

namespace bq = boost::math::quadrature;

namespace {

// Global adaptive bisection: always split the panel with the largest error
// estimate until the summed estimate meets max(abs, rel |I|).  A local
// per-panel criterion recurses to full depth wherever the integrand sits at
// its rounding floor.
template <unsigned Points>
double gk(const Fn& f, double a, double b, const Tolerance& tol) {
    if (a == b) return 0.0;
    struct Panel {
        double lo, hi, value, error;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    auto panel = [&](double lo, double hi) {
        double err = 0.0;
        double v = bq::gauss_kronrod<double, Points>::integrate(f, lo, hi, 0, 0.0, &err);
        if (!std::isfinite(v)) throw NonFinite("integrand produced a non-finite value");
        return Panel{lo, hi, v, err};
    };
    std::priority_queue<Panel> heap;
    heap.push(panel(a, b));
    double value = heap.top().value, error = heap.top().error;
    const std::size_t limit = 64 * std::size_t(std::max(tol.max_depth, 1u));
    while (error > std::max(tol.abs, tol.rel * std::abs(value)) && heap.size() < limit) {
        Panel p = heap.top();
        const double mid = 0.5 * (p.lo + p.hi);
        if (!(mid > p.lo && mid < p.hi)) break;
        heap.pop();
        Panel l = panel(p.lo, mid), r = panel(mid, p.hi);
        value += l.value + r.value - p.value;
        error += l.error + r.error - p.error;
        heap.push(l);
        heap.push(r);
    }
    double sum = 0.0;
    for (; !heap.empty(); heap.pop()) sum += heap.top().value;
    return sum;
}

}  // namespace

double integrate(const Fn& f, double a, double b, Tolerance tol) { return gk<15>(f, a, b, tol); }

double integrate_gk61(const Fn& f, double a, double b, Tolerance tol) { return gk<61>(f, a, b, tol); }

double integrate_to_infinity(const Fn& f, double a, double first_width, double panel_tol, Tolerance tol,
                             bool gk61, double hard_limit) {
    double total = 0.0;
    double lo = a, w = first_width;
    int quiet = 0;
    while (lo - a < hard_limit) {
        double hi = lo + w;
        double part = gk61 ? integrate_gk61(f, lo, hi, tol) : integrate(f, lo, hi, tol);
        total += part;
        if (std::abs(part) < panel_tol) {
            if (++quiet >= 2) return total;
        } else {
            quiet = 0;
        }
        lo = hi;
        w *= 2.0;
    }
    throw ConvergenceFailure("semi-infinite integral did not settle before the hard limit");
}

double integrate_power_endpoint(const Fn& f, double p, double split, double b, Tolerance tol) {
    if (!(p > -1.0)) throw IntegrableSingularity("endpoint exponent must exceed -1");
    split = std::min(split, b);
    double total = 0.0;
    if (split > 0.0) {
        // y = u^q, dy = q u^(q-1) du, q = 1/(p+1); integrand ~ u^0 near 0
        const double q = 1.0 / (p + 1.0);
        const double umax = std::pow(split, 1.0 / q);
        auto g = [&](double u) {
            if (u <= 0.0) return 0.0;
            double y = std::pow(u, q);
            return f(y) * q * std::pow(u, q - 1.0);
        };
        total += integrate(g, 0.0, umax, tol);
    }
    if (b > split) total += integrate(f, split, b, tol);
    return total;
}

}  // namespace quad

}  // namespace noncollide
