#include "noncollide/kernels.hpp"

#include <cmath>
#include <limits>

#include "noncollide/linalg.hpp"
#include "noncollide/quadrature.hpp"

namespace noncollide::kern {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kRescale = 1e150;
const double kLogRescale = std::log(kRescale);
// Cramér: |φ_n(x)| <= 1.086435 π^(-1/4) for every n and x; squared and rounded up
constexpr double kCramerSq = 0.6660;
constexpr int kMaxTail = 200000;

double with_log(double p, double log_extra) {
    if (p == 0.0) return 0.0;
    return std::copysign(std::exp(std::log(std::abs(p)) + log_extra), p);
}

// Three-term recurrence carried as mantissa * exp(lscale) so that neither
// the Gaussian factor nor the polynomial growth under/overflows.
struct HermiteGen {
    double x, prev = 0.0, cur = 1.0, lscale;
    int n = 0;
    explicit HermiteGen(double x_) : x(x_), lscale(-0.5 * x_ * x_ - 0.25 * std::log(kPi)) {}
    void advance() {
        double nxt = std::sqrt(2.0 / (n + 1)) * x * cur - std::sqrt(double(n) / (n + 1)) * prev;
        prev = cur;
        cur = nxt;
        ++n;
        if (std::abs(cur) > kRescale) {
            cur /= kRescale;
            prev /= kRescale;
            lscale += kLogRescale;
        }
    }
    double value(double log_extra = 0.0) const { return with_log(cur, lscale + log_extra); }
    // log|φ_n| and sign
    double log_abs() const { return cur == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::abs(cur)) + lscale; }
};

// Regular part of φ_n^ν: everything except the x^(ν/2) factor.
struct LaguerreGen {
    double nu, x, prev = 0.0, cur = 1.0, lscale;
    int n = 0;
    LaguerreGen(double nu_, double x_) : nu(nu_), x(x_), lscale(-0.5 * x_ - 0.5 * std::lgamma(nu_ + 1.0)) {}
    void advance() {
        double nxt = ((2.0 * n + 1.0 + nu - x) * cur - std::sqrt(n * (n + nu)) * prev) /
                     std::sqrt((n + 1.0) * (n + 1.0 + nu));
        prev = cur;
        cur = nxt;
        ++n;
        if (std::abs(cur) > kRescale) {
            cur /= kRescale;
            prev /= kRescale;
            lscale += kLogRescale;
        } else if (std::abs(cur) < 1.0 / kRescale && std::abs(prev) < 1.0 / kRescale && cur != 0.0) {
            cur *= kRescale;
            prev *= kRescale;
            lscale -= kLogRescale;
        }
    }
    double value(double log_extra = 0.0) const { return with_log(cur, lscale + log_extra); }
    double log_abs() const { return cur == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::abs(cur)) + lscale; }
};

// log of x^(ν/2); x = 0 handled by the callers
double log_power(double nu, double x) { return nu == 0.0 ? 0.0 : 0.5 * nu * std::log(x); }

void check_times(double s, double t) {
    if (!(s > 0.0) || !(t > 0.0)) throw NonPositiveTime("kernel times must be positive");
}

// log of sqrt(x) x'^(ν/2) with x' = x^2/(2s), the x-dependent prefactor of the
// Laguerre kernel; +inf/-inf conventions at x = 0
double laguerre_side_log(double nu, double s, double x) {
    if (x == 0.0) {
        if (nu > -0.5) return -std::numeric_limits<double>::infinity();
        if (nu == -0.5) return 0.25 * std::log(2.0 * s);
        throw DomainError("Laguerre kernel unbounded at the origin for nu < -1/2");
    }
    return 0.5 * std::log(x) + log_power(nu, x * x / (2.0 * s));
}

double sqrt_x_bessel(double nu, double u, double x) {
    if (x == 0.0) {
        if (nu > -0.5) return 0.0;
        if (nu == -0.5) return std::sqrt(2.0 / (kPi * u));
        throw DomainError("hard-edge kernel unbounded at the origin for nu < -1/2");
    }
    return std::sqrt(x) * special::bessel_j(nu, u * x);
}

// hard-edge diagonal, z = 2x
double hard_diagonal(double nu, double x) {
    const double z = 2.0 * x;
    const double j = special::bessel_j(nu, z), jp = special::bessel_j_prime(nu, z);
    return (z - nu * nu / z) * j * j + z * jp * jp;
}

double hard_closed_raw(double nu, double x, double y) {
    const double jx = special::bessel_j(nu, 2.0 * x), jy = special::bessel_j(nu, 2.0 * y);
    const double jpx = special::bessel_j_prime(nu, 2.0 * x), jpy = special::bessel_j_prime(nu, 2.0 * y);
    return 2.0 * std::sqrt(x * y) * (jx * y * jpy - jy * x * jpx) / ((x - y) * (x + y));
}

}  // namespace

void hermite_phi_table(int nmax, double x, double* out) {
    HermiteGen g(x);
    out[0] = g.value();
    for (int n = 1; n <= nmax; ++n) {
        g.advance();
        out[n] = g.value();
    }
}

double hermite_phi(int n, double x) {
    if (n < 0) throw DomainError("hermite_phi needs n >= 0");
    HermiteGen g(x);
    for (int k = 0; k < n; ++k) g.advance();
    return g.value();
}

void laguerre_phi_table(int nmax, double nu, double x, double* out) {
    if (!(nu > -1.0)) throw DomainError("laguerre_phi needs nu > -1");
    if (!(x >= 0.0)) throw DomainError("laguerre_phi needs x >= 0");
    if (x == 0.0 && nu != 0.0) {
        const double v = nu > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        for (int n = 0; n <= nmax; ++n) out[n] = v;
        return;
    }
    const double lp = x == 0.0 ? 0.0 : log_power(nu, x);
    LaguerreGen g(nu, x);
    out[0] = g.value(lp);
    for (int n = 1; n <= nmax; ++n) {
        g.advance();
        out[n] = g.value(lp);
    }
}

double laguerre_phi(int n, double nu, double x) {
    if (n < 0) throw DomainError("laguerre_phi needs n >= 0");
    std::vector<double> v(std::size_t(n) + 1);
    laguerre_phi_table(n, nu, x, v.data());
    return v.back();
}

double hermite_bilinear(int lo, int hi, double s, double x, double t, double y) {
    check_times(s, t);
    HermiteGen gu(x / std::sqrt(2.0 * s)), gv(y / std::sqrt(2.0 * t));
    const double lr = 0.5 * std::log(t / s);
    double sum = 0.0;
    for (int n = 0; n < hi; ++n) {
        if (n >= lo) {
            double lv = gu.log_abs() + gv.log_abs() + n * lr;
            if (std::isfinite(lv)) sum += std::copysign(std::exp(lv), gu.cur * gv.cur);
        }
        gu.advance();
        gv.advance();
    }
    return sum / std::sqrt(2.0 * s);
}

double kernel_hermite(int N, double s, double x, double t, double y) {
    if (N < 1) throw DomainError("kernel_hermite needs N >= 1");
    check_times(s, t);
    if (s <= t) return hermite_bilinear(0, N, s, x, t, y);
    const double r = std::sqrt(t / s), lr = std::log(r);
    HermiteGen gu(x / std::sqrt(2.0 * s)), gv(y / std::sqrt(2.0 * t));
    for (int n = 0; n < N; ++n) {
        gu.advance();
        gv.advance();
    }
    double sum = 0.0;
    for (int n = N;; ++n) {
        double lv = gu.log_abs() + gv.log_abs() + n * lr;
        if (std::isfinite(lv)) sum += std::copysign(std::exp(lv), gu.cur * gv.cur);
        // remaining terms bounded by the geometric series of the Cramér bound
        const double bound = kCramerSq * std::exp((n + 1) * lr) / (1.0 - r);
        if (bound <= std::max(1e-16 * std::abs(sum), 1e-17)) break;
        if (n > kMaxTail) throw TailNotConverging("Hermite tail sum did not converge");
        gu.advance();
        gv.advance();
    }
    return -sum / std::sqrt(2.0 * s);
}

double kernel_laguerre(int N, double nu, double s, double x, double t, double y) {
    if (N < 1) throw DomainError("kernel_laguerre needs N >= 1");
    if (!(nu > -1.0)) throw DomainError("kernel_laguerre needs nu > -1");
    if (!(x >= 0.0) || !(y >= 0.0)) throw DomainError("kernel_laguerre needs x, y >= 0");
    check_times(s, t);
    const double a = x * x / (2.0 * s), b = y * y / (2.0 * t);
    const double lpre = laguerre_side_log(nu, s, x) + laguerre_side_log(nu, t, y) - std::log(s);
    if (lpre == -std::numeric_limits<double>::infinity()) return 0.0;
    const double lr = std::log(t / s);
    LaguerreGen ga(nu, a), gb(nu, b);
    auto term = [&](int n) {
        double lv = ga.log_abs() + gb.log_abs() + n * lr + lpre;
        return std::isfinite(lv) ? std::copysign(std::exp(lv), ga.cur * gb.cur) : 0.0;
    };
    double sum = 0.0;
    if (s <= t) {
        for (int n = 0; n < N; ++n) {
            sum += term(n);
            ga.advance();
            gb.advance();
        }
        return sum;
    }
    for (int n = 0; n < N; ++n) {
        ga.advance();
        gb.advance();
    }
    const double turning = std::max(a, b);
    int quiet = 0;
    for (int n = N;; ++n) {
        const double v = term(n);
        sum += v;
        if (4.0 * n + 2.0 * nu + 2.0 > turning && std::abs(v) < std::max(1e-16 * std::abs(sum), 1e-300)) {
            if (++quiet >= 5) break;
        } else {
            quiet = 0;
        }
        if (n > kMaxTail) throw TailNotConverging("Laguerre tail sum did not converge");
        ga.advance();
        gb.advance();
    }
    return -sum;
}

double kernel_sine(double s, double x, double t, double y) {
    const double d = x - y;
    if (s == t) {
        if (std::abs(d) < 1e-4) return (1.0 - d * d / 6.0 + d * d * d * d / 120.0) / kPi;
        return std::sin(d) / (kPi * d);
    }
    const double c = 0.5 * (t - s);
    quad::Fn f = [c, d](double u) { return std::exp(c * u * u) * std::cos(u * d); };
    quad::Tolerance tol{1e-13, 1e-16, 24};
    if (s < t) return quad::integrate_gk61(f, 0.0, 1.0, tol) / kPi;
    const double width = std::min(2.0, 1.0 / std::sqrt(-c));
    return -quad::integrate_to_infinity(f, 1.0, width, 1e-15, tol, true) / kPi;
}

double kernel_airy(double s, double x, double t, double y) {
    quad::Tolerance tol{1e-12, 1e-16, 24};
    if (s <= t) {
        const double c = 0.5 * (t - s);
        const double upper = std::max(14.0 - std::min(x, y), 1.0);
        quad::Fn f = [=](double v) { return std::exp(-c * v) * special::airy_ai(x + v) * special::airy_ai(y + v); };
        // split where the oscillatory part ends so each panel is smooth
        const double knee = std::clamp(-std::min(x, y), 0.0, upper);
        double out = quad::integrate_gk61(f, knee, upper, tol);
        if (knee > 0.0) out += quad::integrate_gk61(f, 0.0, knee, tol);
        return out;
    }
    const double c = 0.5 * (s - t);
    quad::Fn f = [=](double u) { return std::exp(-c * u) * special::airy_ai(x - u) * special::airy_ai(y - u); };
    return -quad::integrate_to_infinity(f, 0.0, 2.0, 1e-14, tol, true);
}

double bessel_hard_integral(double nu, double dt, double x, double y, double u_lo, double u_hi) {
    quad::Fn f = [=](double u) {
        return std::exp(0.5 * dt * u * u) * u * sqrt_x_bessel(nu, u, x) * sqrt_x_bessel(nu, u, y);
    };
    quad::Tolerance tol{1e-12, 1e-16, 24};
    if (std::isinf(u_hi)) {
        const double width = std::min(2.0, 1.0 / std::sqrt(std::max(-0.5 * dt, 1e-12)));
        return quad::integrate_to_infinity(f, u_lo, width, 1e-15, tol, true);
    }
    if (u_lo == 0.0 && nu < 0.0) {
        // u J(ux) J(uy) ~ u^(1+2ν) at the origin
        const double split = std::min(0.25, 0.5 * u_hi);
        return quad::integrate_power_endpoint(f, 1.0 + 2.0 * nu, split, u_hi, tol);
    }
    return quad::integrate_gk61(f, u_lo, u_hi, tol);
}

double bessel_hard_equal_time_closed(double nu, double x, double y) {
    if (!(nu > -1.0)) throw DomainError("hard-edge kernel needs nu > -1");
    if (!(x >= 0.0) || !(y >= 0.0)) throw DomainError("hard-edge kernel needs x, y >= 0");
    if (x == 0.0 || y == 0.0) return bessel_hard_integral(nu, 0.0, x, y, 0.0, 2.0);
    const double dlt = x - y;
    if (std::abs(dlt) >= 1e-4) return hard_closed_raw(nu, x, y);
    // even in dlt: K = D(m) + c2 dlt^2 + O(dlt^4), c2 read off the closed form at dlt0
    const double m = 0.5 * (x + y);
    const double d0 = hard_diagonal(nu, m);
    if (dlt == 0.0) return d0;
    const double probe = std::min(1e-3, m);
    const double c2 = (hard_closed_raw(nu, m + 0.5 * probe, m - 0.5 * probe) - d0) / (probe * probe);
    return d0 + c2 * dlt * dlt;
}

double kernel_bessel_hard(double nu, double s, double x, double t, double y) {
    if (!(nu > -1.0)) throw DomainError("hard-edge kernel needs nu > -1");
    if (!(x >= 0.0) || !(y >= 0.0)) throw DomainError("hard-edge kernel needs x, y >= 0");
    if (s == t) return bessel_hard_equal_time_closed(nu, x, y);
    if (s < t) return bessel_hard_integral(nu, t - s, x, y, 0.0, 2.0);
    return -bessel_hard_integral(nu, t - s, x, y, 2.0, std::numeric_limits<double>::infinity());
}

ExtendedKernel ExtendedKernel::hermite(int N) {
    if (N < 1) throw DomainError("hermite kernel needs N >= 1");
    return {Family::HermiteN, N, 0.0, [N](double s, double x, double t, double y) { return kernel_hermite(N, s, x, t, y); }};
}

ExtendedKernel ExtendedKernel::laguerre(int N, double nu) {
    if (N < 1) throw DomainError("laguerre kernel needs N >= 1");
    if (!(nu > -1.0)) throw DomainError("laguerre kernel needs nu > -1");
    return {Family::LaguerreN, N, nu,
            [N, nu](double s, double x, double t, double y) { return kernel_laguerre(N, nu, s, x, t, y); }};
}

ExtendedKernel ExtendedKernel::sine() { return {Family::Sine, 0, 0.0, kernel_sine}; }

ExtendedKernel ExtendedKernel::airy() { return {Family::Airy, 0, 0.0, kernel_airy}; }

ExtendedKernel ExtendedKernel::bessel_hard(double nu) {
    if (!(nu > -1.0)) throw DomainError("hard-edge kernel needs nu > -1");
    return {Family::BesselHard, 0, nu,
            [nu](double s, double x, double t, double y) { return kernel_bessel_hard(nu, s, x, t, y); }};
}

Eigen::MatrixXd equal_time_matrix(const ExtendedKernel& k, double t, std::span<const double> nodes) {
    const Eigen::Index m = Eigen::Index(nodes.size());
    Eigen::MatrixXd out(m, m);
    switch (k.family) {
        case Family::HermiteN: {
            check_times(t, t);
            Eigen::MatrixXd phi(m, k.n);
            std::vector<double> row(std::size_t(k.n));
            const double sc = std::sqrt(2.0 * t), pre = std::pow(2.0 * t, -0.25);
            for (Eigen::Index i = 0; i < m; ++i) {
                hermite_phi_table(k.n - 1, nodes[std::size_t(i)] / sc, row.data());
                for (int n = 0; n < k.n; ++n) phi(i, n) = pre * row[std::size_t(n)];
            }
            out.noalias() = phi * phi.transpose();
            return out;
        }
        case Family::LaguerreN: {
            check_times(t, t);
            Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(m, k.n);
            for (Eigen::Index i = 0; i < m; ++i) {
                const double x = nodes[std::size_t(i)];
                if (!(x >= 0.0)) throw DomainError("laguerre kernel needs x >= 0");
                const double side = laguerre_side_log(k.nu, t, x) - 0.5 * std::log(t);
                if (side == -std::numeric_limits<double>::infinity()) continue;
                LaguerreGen g(k.nu, x * x / (2.0 * t));
                for (int n = 0; n < k.n; ++n) {
                    phi(i, n) = g.value(side);
                    g.advance();
                }
            }
            out.noalias() = phi * phi.transpose();
            return out;
        }
        case Family::Airy: {
            double xmin = nodes.empty() ? 0.0 : nodes[0];
            for (double x : nodes) xmin = std::min(xmin, x);
            const double upper = std::max(14.0 - xmin, 2.0);
            const int panels = int(std::ceil(upper / 0.5));
            QuadratureRule rule = composite_gauss_legendre(16, panels, 0.0, upper);
            Eigen::MatrixXd a(m, Eigen::Index(rule.size()));
            for (Eigen::Index i = 0; i < m; ++i)
                for (std::size_t q = 0; q < rule.size(); ++q)
                    a(i, Eigen::Index(q)) = std::sqrt(rule.weights[q]) * special::airy_ai(nodes[std::size_t(i)] + rule.nodes[q]);
            out.noalias() = a * a.transpose();
            return out;
        }
        default:
            for (Eigen::Index i = 0; i < m; ++i)
                for (Eigen::Index j = 0; j <= i; ++j)
                    out(i, j) = out(j, i) = k(t, nodes[std::size_t(i)], t, nodes[std::size_t(j)]);
            return out;
    }
}

double correlation_function(const ExtendedKernel& k, std::span<const SpaceTimePoint> points) {
    if (points.size() > 12) throw SizeLimit("correlation_function supports at most 12 points");
    if (points.empty()) return 1.0;
    const Eigen::Index n = Eigen::Index(points.size());
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const SpaceTimePoint& p = points[std::size_t(i)];
            const SpaceTimePoint& q = points[std::size_t(j)];
            a(i, j) = k(p.time, p.x, q.time, q.x);
        }
    return linalg::det(a);
}

}  // namespace noncollide::kern
