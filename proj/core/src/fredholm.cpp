#include "noncollide/fredholm.hpp"

#include <algorithm>
#include <cmath>

namespace noncollide::fred {

void GapSpec::validate() const {
    if (!(a <= b)) throw DomainError("gap window needs a <= b");
    if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("gap window must be finite (truncate half-lines first)");
    if (m < 8) throw DomainError("Nystrom order must be >= 8");
    if (kernel.half_line() && a < 0.0) throw DomainError("half-line kernel window must lie in [0, inf)");
}

double nystrom_det(const kern::ExtendedKernel& k, double t, double a, double b, int m) {
    QuadratureRule rule = gauss_legendre(m, a, b);
    Eigen::MatrixXd km = kern::equal_time_matrix(k, t, rule.nodes);
    Eigen::VectorXd sw(m);
    for (int i = 0; i < m; ++i) sw(i) = std::sqrt(rule.weights[std::size_t(i)]);
    Eigen::MatrixXd op = Eigen::MatrixXd::Identity(m, m) - sw.asDiagonal() * km * sw.asDiagonal();
    return op.partialPivLu().determinant();
}

DetResult fredholm_det_report(const GapSpec& spec) {
    spec.validate();
    DetResult r;
    if (spec.a == spec.b) {
        r.value = 1.0;  // empty window
        return r;
    }
    int m = spec.m;
    double prev = nystrom_det(spec.kernel, spec.time, spec.a, spec.b, m);
    for (;;) {
        const int m2 = 2 * m;
        const double cur = nystrom_det(spec.kernel, spec.time, spec.a, spec.b, m2);
        r.change = std::abs(cur - prev);
        r.value = cur;
        r.m = m2;
        if (r.change <= 1e-10) break;
        if (m2 >= 256) {
            if (r.change > 1e-6) throw QuadratureUnstable("Fredholm determinant not stable under doubling at m = 256");
            break;
        }
        m = m2;
        prev = cur;
    }
    if (r.value < 0.0 && r.value > -1e-10) {
        r.value = 0.0;
        r.clamped = true;
    } else if (r.value > 1.0 && r.value < 1.0 + 1e-10) {
        r.value = 1.0;
        r.clamped = true;
    }
    return r;
}

double fredholm_det(const GapSpec& spec) { return fredholm_det_report(spec).value; }

double rightmost_upper_cut(int N, double t, double alpha) { return std::max(alpha, 0.0) + 10.0 * std::sqrt(2.0 * N * t); }

double rightmost_cdf(int N, double t, double alpha) {
    if (N < 1) throw DomainError("rightmost_cdf needs N >= 1");
    if (!(t > 0.0)) throw NonPositiveTime("rightmost_cdf needs t > 0");
    const double b = rightmost_upper_cut(N, t, alpha);
    if (!(alpha < b)) return 1.0;
    GapSpec g{kern::ExtendedKernel::hermite(N), t, alpha, b, 32};
    return fredholm_det(g);
}

DetResult tracy_widom_fredholm_report(double alpha) {
    if (!(alpha >= -12.0 && alpha <= 8.0)) throw DomainError("tracy_widom_fredholm needs alpha in [-12, 8]");
    const kern::ExtendedKernel k = kern::ExtendedKernel::airy();
    const double b = alpha + 14.0;
    DetResult r;
    const double d80 = nystrom_det(k, 0.0, alpha, b, 80);
    r.value = nystrom_det(k, 0.0, alpha, b, 160);
    r.m = 160;
    r.change = std::abs(r.value - d80);
    if (r.change > 1e-8) {
        const double d320 = nystrom_det(k, 0.0, alpha, b, 320);
        r.change = std::abs(d320 - r.value);
        r.value = d320;
        r.m = 320;
        if (r.change > 1e-6) throw QuadratureUnstable("Airy Fredholm determinant unstable");
    }
    r.value = std::clamp(r.value, 0.0, 1.0);
    return r;
}

double tracy_widom_fredholm(double alpha) { return tracy_widom_fredholm_report(alpha).value; }

double sine_gap(double a) {
    if (!(a > 0.0)) throw DomainError("sine_gap needs a > 0");
    GapSpec g{kern::ExtendedKernel::sine(), 0.0, -a, a, 16};
    return fredholm_det(g);
}

}  // namespace noncollide::fred
