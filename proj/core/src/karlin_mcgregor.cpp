#include "noncollide/karlin_mcgregor.hpp"

#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "noncollide/parallel.hpp"
#include "noncollide/quadrature.hpp"
#include "noncollide/special_functions.hpp"

namespace noncollide::km {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogMinNormal = std::log(DBL_MIN);

void require_same_size(const OrderedConfiguration& x, const OrderedConfiguration& y) {
    if (x.size() != y.size()) throw SizeMismatch("configurations differ in size");
}

void require_chamber(const OrderedConfiguration& x, Chamber c, const char* what) {
    if (x.chamber() != c) throw DomainError(std::string(what) + " expects chamber " + to_string(c));
}

// Bessel-family states: chamber C, or chamber D restricted to x1 >= 0.
void require_half_line(const OrderedConfiguration& x, const char* what) {
    bool ok = x.chamber() == Chamber::C || (x.chamber() == Chamber::D && x[0] >= 0.0);
    if (!ok) throw DomainError(std::string(what) + " expects chamber C or the nonnegative branch of D");
}

double sum_squares(std::span<const double> y) {
    double s = 0.0;
    for (double v : y) s += v * v;
    return s;
}

Estimate combine_ratio(double factor, const Estimate& num, const Estimate& den) {
    Estimate e;
    e.value = factor * num.value / den.value;
    double rn = num.value != 0.0 ? num.std_error / num.value : 0.0;
    double rd = den.value != 0.0 ? den.std_error / den.value : 0.0;
    e.std_error = std::abs(e.value) * std::sqrt(rn * rn + rd * rd);
    e.monte_carlo = num.monte_carlo || den.monte_carlo;
    return e;
}

Estimate scaled(double factor, const Estimate& e) {
    return {factor * e.value, std::abs(factor) * e.std_error, e.monte_carlo};
}

McOptions with_stream(const McOptions& mc, std::uint64_t offset) {
    McOptions m = mc;
    m.stream = mc.stream + offset;
    return m;
}

// Sub-grid refined toward 0: step ratio last/first = 4.
std::vector<double> geometric_grid(double t, int steps) {
    std::vector<double> g(steps + 1);
    const double rho = std::pow(4.0, 1.0 / steps);
    const double denom = std::pow(rho, steps) - 1.0;
    for (int k = 0; k <= steps; ++k) g[k] = t * (std::pow(rho, k) - 1.0) / denom;
    g[steps] = t;
    return g;
}

// Weighted noncollision Monte Carlo.  Each adjacent pair carries the Brownian-
// bridge probability of not having touched between checks, which removes most
// of the discrete-monitoring bias.  `step` advances one coordinate.
template <class Step, class Final>
Estimate noncollision_mc(std::span<const double> x0, double t, const McOptions& mc, Step step, Final final_weight) {
    const std::size_t n = x0.size();
    const std::vector<double> grid = geometric_grid(t, mc.steps);
    const std::size_t blocks = block_count(mc.samples);
    std::vector<double> sum(blocks, 0.0), sum2(blocks, 0.0);
    RngStream base(mc.seed, mc.stream);
    for_each_block(blocks, mc.threads, [&](std::size_t b) {
        RngStream rng = base.split(b);
        std::size_t lo = b * kBlockSize, hi = std::min(mc.samples, lo + kBlockSize);
        std::vector<double> cur(n), nxt(n);
        for (std::size_t path = lo; path < hi; ++path) {
            cur.assign(x0.begin(), x0.end());
            double w = 1.0;
            for (int k = 1; k <= mc.steps && w > 0.0; ++k) {
                double dt = grid[k] - grid[k - 1];
                for (std::size_t i = 0; i < n; ++i) nxt[i] = step(cur[i], dt, rng);
                for (std::size_t i = 1; i < n; ++i) {
                    double d0 = cur[i] - cur[i - 1], d1 = nxt[i] - nxt[i - 1];
                    if (d1 <= 0.0) {
                        w = 0.0;
                        break;
                    }
                    w *= -std::expm1(-d0 * d1 / dt);
                }
                cur.swap(nxt);
            }
            if (w > 0.0) w *= final_weight(cur);
            sum[b] += w;
            sum2[b] += w * w;
        }
    });
    double s = 0.0, s2 = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
        s += sum[b];
        s2 += sum2[b];
    }
    const double m = double(mc.samples);
    double mean = s / m;
    double var = std::max(0.0, s2 / m - mean * mean);
    return {mean, std::sqrt(var / m), true};
}

double upper_tail(double y, double x, double t) { return 0.5 * std::erfc((y - x) / std::sqrt(2.0 * t)); }
double lower_tail(double y, double x, double t) { return 0.5 * std::erfc((x - y) / std::sqrt(2.0 * t)); }

double survival_quadrature(double t, std::span<const double> x) {
    const std::size_t n = x.size();
    const double st = std::sqrt(t);
    const double a = x.front() - 12.0 * st, b = x.back() + 12.0 * st;
    quad::Tolerance tol;
    tol.rel = 1e-12;
    if (n == 2) {
        auto f = [&](double y) {
            double g1 = dens::bm_density(t, y, x[0]), g2 = dens::bm_density(t, y, x[1]);
            return g1 * upper_tail(y, x[1], t) - g2 * upper_tail(y, x[0], t);
        };
        return quad::integrate(f, a, b, tol);
    }
    // columns 1 and 3 integrated in closed form around the middle coordinate
    auto f = [&](double y) {
        Eigen::Matrix3d m;
        for (int i = 0; i < 3; ++i) {
            m(i, 0) = lower_tail(y, x[i], t);
            m(i, 1) = dens::bm_density(t, y, x[i]);
            m(i, 2) = upper_tail(y, x[i], t);
        }
        return m.determinant();
    };
    return quad::integrate(f, a, b, tol);
}

// Ordered integral over the half line of det[F_i(y_j)] for N = 1, 2, 3, where
// F_i(y) ~ y^p near 0.  Panels of a fixed Gauss rule; the running integrals
// A_i(y) = int_0^y F_i are built panel by panel.
double half_line_ordered_integral(const std::function<double(int, double)>& F, int n, double p, double ymax,
                                  double panel_width) {
    const int m = 24;
    const QuadratureRule base = gauss_legendre(m, 0.0, 1.0);
    const double q = 1.0 / (p + 1.0);
    std::vector<double> edges{0.0};
    double e = std::min(panel_width, ymax);
    edges.push_back(e);
    while (e < ymax) {
        e = std::min(ymax, e + panel_width);
        edges.push_back(e);
    }
    // integral of F_i over [lo, hi]; the first panel maps y = hi * v^q
    auto piece = [&](int i, double lo, double hi, bool first) {
        double s = 0.0;
        if (hi <= lo) return 0.0;
        for (int k = 0; k < m; ++k) {
            double v = base.nodes[k];
            if (first) {
                double y = hi * std::pow(v, q);
                s += base.weights[k] * F(i, y) * hi * q * std::pow(v, q - 1.0);
            } else {
                s += base.weights[k] * (hi - lo) * F(i, lo + (hi - lo) * v);
            }
        }
        return s;
    };
    const int panels = int(edges.size()) - 1;
    std::vector<std::vector<double>> start(n, std::vector<double>(panels + 1, 0.0));
    for (int i = 0; i < n; ++i)
        for (int pnl = 0; pnl < panels; ++pnl)
            start[i][pnl + 1] = start[i][pnl] + piece(i, edges[pnl], edges[pnl + 1], pnl == 0);
    std::vector<double> total(n);
    for (int i = 0; i < n; ++i) total[i] = start[i][panels];
    if (n == 1) return total[0];

    double result = 0.0;
    std::vector<double> A(n), B(n), G(n);
    for (int pnl = 0; pnl < panels; ++pnl) {
        const double lo = edges[pnl], hi = edges[pnl + 1];
        for (int k = 0; k < m; ++k) {
            double v = base.nodes[k], y, w;
            if (pnl == 0) {
                y = hi * std::pow(v, q);
                w = base.weights[k] * hi * q * std::pow(v, q - 1.0);
            } else {
                y = lo + (hi - lo) * v;
                w = base.weights[k] * (hi - lo);
            }
            for (int i = 0; i < n; ++i) {
                A[i] = start[i][pnl] + piece(i, lo, y, pnl == 0);
                B[i] = total[i] - A[i];
                G[i] = F(i, y);
            }
            double val;
            if (n == 2) {
                val = G[0] * B[1] - G[1] * B[0];
            } else {
                Eigen::Matrix3d mm;
                for (int i = 0; i < 3; ++i) {
                    mm(i, 0) = A[i];
                    mm(i, 1) = G[i];
                    mm(i, 2) = B[i];
                }
                val = mm.determinant();
            }
            result += w * val;
        }
    }
    return result;
}

double log_or_throw_underflow(const linalg::LogDet& d, const char* what) {
    if (d.sign == 0) return 0.0;
    if (d.log_abs < kLogMinNormal)
        throw NumericalUnderflow(d.log_abs, std::string(what) + " underflows; log|value| = " + std::to_string(d.log_abs));
    return d.value();
}

void require_no_zero_with_kappa(const OrderedConfiguration& y, double kappa) {
    if (kappa > 0.0 && y[0] == 0.0)
        throw DomainError("y1 = 0 with kappa > 0: the weight prod y^(-kappa) is singular there");
}

}  // namespace

NormalizationConstants constants(int N, double nu, double kappa) {
    if (N < 1) throw DomainError("constants need N >= 1");
    if (!(nu > -1.0)) throw BesselIndexOutOfRange("nu must exceed -1");
    NormalizationConstants c;
    c.n = N;
    c.nu = nu;
    c.kappa = kappa;
    const double ln2 = std::numbers::ln2, lnpi = std::log(std::numbers::pi);
    const double half_n = 0.5 * N;
    c.log_c1 = half_n * (ln2 + lnpi);
    c.log_c2 = half_n * ln2;
    c.log_c3 = half_n * (ln2 + lnpi);
    c.log_c_nu = N * (N + nu - 1.0) * ln2;
    c.log_c_nu_kappa = 0.5 * N * (N + 2.0 * nu - kappa - 1.0) * ln2 - half_n * lnpi;
    for (int i = 1; i <= N; ++i) {
        c.log_c1 += std::lgamma(double(i));
        c.log_c2 += std::lgamma(0.5 * i);
        c.log_c3 += std::lgamma(2.0 * i);
        c.log_c_nu += std::lgamma(double(i)) + std::lgamma(i + nu);
        c.log_c_nu_kappa += std::lgamma(0.5 * i) + std::lgamma(0.5 * (i + 2.0 * nu + 1.0 - kappa));
    }
    c.c1 = std::exp(c.log_c1);
    c.c2 = std::exp(c.log_c2);
    c.c3 = std::exp(c.log_c3);
    c.c_nu = std::exp(c.log_c_nu);
    c.c_nu_kappa = std::exp(c.log_c_nu_kappa);
    return c;
}

LogTransition brownian_transition() {
    return [](double s, double x, double t, double y) { return dens::log_bm_density(t - s, y, x); };
}

LogTransition bessel_transition(double nu) {
    return [nu](double s, double x, double t, double y) { return dens::log_bessel_density(nu, t - s, y, x); };
}

linalg::LogDet km_log_density(const LogTransition& log_g, double s, const OrderedConfiguration& x, double t,
                              const OrderedConfiguration& y) {
    require_same_size(x, y);
    if (!(s < t)) throw TimeOrdering("km_density needs s < t");
    const Eigen::Index n = Eigen::Index(x.size());
    Eigen::MatrixXd l(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) l(i, j) = log_g(s, x[i], t, y[j]);
    return linalg::log_det_from_logs(l);
}

double km_density(const LogTransition& log_g, double s, const OrderedConfiguration& x, double t,
                  const OrderedConfiguration& y) {
    return log_or_throw_underflow(km_log_density(log_g, s, x, t, y), "km_density");
}

double vandermonde(std::span<const double> x) {
    double h = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) h *= x[j] - x[i];
    return h;
}

double vandermonde_alpha(std::span<const double> x, double alpha) {
    bool integer = alpha == std::floor(alpha);
    double h = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!integer && !(x[i] > 0.0))
            throw DomainError("vandermonde_alpha with non-integer alpha needs positive entries");
        for (std::size_t j = i + 1; j < x.size(); ++j) h *= x[j] * x[j] - x[i] * x[i];
        h *= std::pow(x[i], alpha);
    }
    return h;
}

double log_abs_vandermonde(std::span<const double> x) {
    double l = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) l += std::log(std::abs(x[j] - x[i]));
    return l;
}

double log_vandermonde_alpha(std::span<const double> x, double alpha) {
    double l = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) l += std::log(std::abs(x[j] * x[j] - x[i] * x[i]));
        if (alpha != 0.0) {
            if (x[i] == 0.0) l += alpha > 0.0 ? -kInf : kInf;
            else l += alpha * std::log(std::abs(x[i]));
        }
    }
    return l;
}

linalg::LogDet log_f_N(double t, const OrderedConfiguration& y, const OrderedConfiguration& x) {
    return km_log_density(brownian_transition(), 0.0, x, t, y);
}

double f_N(double t, const OrderedConfiguration& y, const OrderedConfiguration& x) {
    return km_density(brownian_transition(), 0.0, x, t, y);
}

Estimate survival_N_mc(double t, const OrderedConfiguration& x, const McOptions& mc) {
    require_chamber(x, Chamber::A, "survival_N");
    if (t < 0.0) throw NonPositiveTime("survival_N needs t >= 0");
    if (t == 0.0 || x.size() == 1) return {1.0, 0.0, false};
    auto step = [](double v, double dt, RngStream& rng) { return v + std::sqrt(dt) * rng.gaussian(); };
    auto last = [](const std::vector<double>&) { return 1.0; };
    return noncollision_mc(x.values(), t, mc, step, last);
}

Estimate survival_N(double t, const OrderedConfiguration& x, const McOptions& mc) {
    require_chamber(x, Chamber::A, "survival_N");
    if (t < 0.0) throw NonPositiveTime("survival_N needs t >= 0");
    if (t == 0.0 || x.size() == 1) return {1.0, 0.0, false};
    if (x.size() <= 3) return {survival_quadrature(t, x.values()), 0.0, false};
    return survival_N_mc(t, x, mc);
}

Estimate g_NT(double s, const OrderedConfiguration& x, double t, const OrderedConfiguration& y, double T,
              const McOptions& mc) {
    if (!(s >= 0.0 && s < t && t <= T)) throw TimeOrdering("g_NT needs 0 <= s < t <= T");
    require_chamber(x, Chamber::A, "g_NT");
    require_chamber(y, Chamber::A, "g_NT");
    Estimate num = survival_N(T - t, y, with_stream(mc, 0));
    Estimate den = survival_N(T - s, x, with_stream(mc, 1));
    return combine_ratio(f_N(t - s, y, x), num, den);
}

Estimate g_NT_origin(double t, const OrderedConfiguration& y, double T, const McOptions& mc) {
    if (!(t > 0.0 && t <= T)) throw TimeOrdering("g_NT_origin needs 0 < t <= T");
    require_chamber(y, Chamber::A, "g_NT_origin");
    const int n = y.n();
    const NormalizationConstants c = constants(n);
    double l = 0.25 * n * (n - 1) * std::log(T) - 0.5 * n * n * std::log(t) - c.log_c2 +
               log_abs_vandermonde(y.values()) - sum_squares(y.values()) / (2.0 * t);
    Estimate surv = survival_N(T - t, y, mc);
    return scaled(std::exp(l), surv);
}

double p_N(double t, const OrderedConfiguration& y, const OrderedConfiguration& x) {
    require_chamber(x, Chamber::A, "p_N");
    require_chamber(y, Chamber::A, "p_N");
    linalg::LogDet f = log_f_N(t, y, x);
    if (f.sign == 0) return 0.0;
    double l = log_abs_vandermonde(y.values()) - log_abs_vandermonde(x.values()) + f.log_abs;
    return f.sign * std::exp(l);
}

double log_p_N_origin(double t, std::span<const double> y) {
    if (!(t > 0.0)) throw NonPositiveTime("p_N_origin needs t > 0");
    const int n = int(y.size());
    const NormalizationConstants c = constants(n);
    return -0.5 * n * n * std::log(t) - c.log_c1 + 2.0 * log_abs_vandermonde(y) - sum_squares(y) / (2.0 * t);
}

double p_N_origin(double t, const OrderedConfiguration& y) {
    require_chamber(y, Chamber::A, "p_N_origin");
    return std::exp(log_p_N_origin(t, y.values()));
}

double imhof_limit(const OrderedConfiguration& y, double T) {
    const int n = y.n();
    const NormalizationConstants c = constants(n);
    return std::exp(c.log_c1 - c.log_c2 + 0.25 * n * (n - 1) * std::log(T) - log_abs_vandermonde(y.values()));
}

Estimate imhof_ratio(double t, const OrderedConfiguration& y, double T, const McOptions& mc) {
    if (!(t > 0.0 && t <= T)) throw TimeOrdering("imhof_ratio needs 0 < t <= T");
    require_chamber(y, Chamber::A, "imhof_ratio");
    double lp = log_p_N_origin(t, y.values());
    if (lp < kLogMinNormal) throw DivisionDegeneracy("p_N_origin underflows; ratio undefined in double range");
    // the Gaussian factors and t powers cancel; what remains is the Imhof factor times N(T-t, y)
    Estimate surv = survival_N(T - t, y, mc);
    return scaled(imhof_limit(y, T), surv);
}

double f_N_nu(double nu, double t, const OrderedConfiguration& y, const OrderedConfiguration& x) {
    if (!(nu > -1.0)) throw BesselIndexOutOfRange("nu must exceed -1");
    if (!(t > 0.0)) throw NonPositiveTime("f_N_nu needs t > 0");
    require_same_size(x, y);
    require_half_line(x, "f_N_nu");
    require_half_line(y, "f_N_nu");
    const Eigen::Index n = Eigen::Index(x.size());
    double pre = -double(n) * std::log(t) - (sum_squares(x.values()) + sum_squares(y.values())) / (2.0 * t);
    Eigen::MatrixXd l(n, n);
    bool zero = x[0] == 0.0 || y[0] == 0.0;
    if (!zero) {
        // t^-N prod (y^(nu+1)/x^nu) e^(-sum(x^2+y^2)/2t) det[I_nu(x_i y_j / t)]
        for (Eigen::Index i = 0; i < n; ++i) {
            pre += (nu + 1.0) * std::log(y[i]) - nu * std::log(x[i]);
            for (Eigen::Index j = 0; j < n; ++j) l(i, j) = special::log_bessel_i(nu, x[i] * y[j] / t);
        }
    } else {
        // a zero coordinate: pull (x_i y_j / 2t)^nu out of every I_nu entry
        for (Eigen::Index j = 0; j < n; ++j) {
            double e = 2.0 * nu + 1.0;
            if (y[j] > 0.0) pre += e * std::log(y[j]);
            else if (e > 0.0) return 0.0;
            else if (e < 0.0) return kInf;
            pre -= nu * std::log(2.0 * t);
        }
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) l(i, j) = special::log_bessel_i_regular(nu, x[i] * y[j] / t);
    }
    linalg::LogDet d = linalg::log_det_from_logs(l);
    if (d.sign == 0) return 0.0;
    return d.sign * std::exp(pre + d.log_abs);
}

Estimate survival_nu_kappa_mc(const dens::DensityParams& p, double tau, const OrderedConfiguration& x,
                              const McOptions& mc) {
    require_half_line(x, "survival_nu_kappa");
    if (p.nu < -0.5) throw NuOutOfRange("Monte Carlo route needs nu >= -1/2");
    const double kappa = p.kappa;
    if (tau == 0.0) {
        double w = 1.0;
        for (double v : x.values()) w *= std::pow(v, -kappa);
        return {w, 0.0, false};
    }
    const double dof_extra = 2.0 * p.nu + 1.0;  // d - 1 with d = 2nu + 2
    // exact squared-Bessel transition: Y'^2 / dt ~ noncentral chi^2_d(Y^2 / dt)
    auto step = [dof_extra](double v, double dt, RngStream& rng) {
        double sd = std::sqrt(dt);
        double z = rng.gaussian() + v / sd;
        double r2 = z * z;
        if (dof_extra > 0.0) r2 += rng.chi_squared(dof_extra);
        return sd * std::sqrt(r2);
    };
    auto last = [kappa](const std::vector<double>& y) {
        if (kappa == 0.0) return 1.0;
        double l = 0.0;
        for (double v : y) l -= kappa * std::log(v);
        return std::exp(l);
    };
    return noncollision_mc(x.values(), tau, mc, step, last);
}

Estimate survival_nu_kappa(const dens::DensityParams& p, double tau, const OrderedConfiguration& x,
                           const McOptions& mc) {
    p.validate();
    require_half_line(x, "survival_nu_kappa");
    if (p.kappa >= 2.0 * (p.nu + 1.0)) throw IntegrableSingularity("weight y^(-kappa) not integrable at 0");
    if (!(tau >= 0.0)) throw NonPositiveTime("survival_nu_kappa needs tau >= 0");
    require_no_zero_with_kappa(x, p.kappa);
    const int n = x.n();
    if (tau == 0.0) {
        double l = 0.0;
        for (double v : x.values()) l -= p.kappa * std::log(v);
        return {std::exp(l), 0.0, false};
    }
    if (n > 3) return survival_nu_kappa_mc(p, tau, x, mc);
    const double nu = p.nu, kappa = p.kappa;
    auto F = [&](int i, double y) {
        if (y <= 0.0) return 0.0;
        return std::exp(dens::log_bessel_density(nu, tau, y, x[i]) - kappa * std::log(y));
    };
    const double st = std::sqrt(tau);
    double ymax = x.values().back() + 12.0 * st;
    return {half_line_ordered_integral(F, n, 2.0 * nu + 1.0 - kappa, ymax, 0.25 * st), 0.0, false};
}

Estimate g_NT_nu_kappa(const dens::DensityParams& p, double s, const OrderedConfiguration& x, double t,
                       const OrderedConfiguration& y, const McOptions& mc) {
    p.validate();
    if (!(s >= 0.0 && s < t && t <= p.T)) throw TimeOrdering("g_NT_nu_kappa needs 0 <= s < t <= T");
    require_no_zero_with_kappa(y, p.kappa);
    Estimate num = survival_nu_kappa(p, p.T - t, y, with_stream(mc, 0));
    Estimate den = survival_nu_kappa(p, p.T - s, x, with_stream(mc, 1));
    return combine_ratio(f_N_nu(p.nu, t - s, y, x), num, den);
}

Estimate g_NT_nu_kappa_origin(const dens::DensityParams& p, double t, const OrderedConfiguration& y,
                              const McOptions& mc) {
    p.validate();
    if (!(t > 0.0 && t <= p.T)) throw TimeOrdering("g_NT_nu_kappa_origin needs 0 < t <= T");
    require_half_line(y, "g_NT_nu_kappa_origin");
    require_no_zero_with_kappa(y, p.kappa);
    const int n = y.n();
    const NormalizationConstants c = constants(n, p.nu, p.kappa);
    double l = 0.5 * n * (n + p.kappa - 1.0) * std::log(p.T) - n * (n + p.nu) * std::log(t) - c.log_c_nu_kappa +
               log_vandermonde_alpha(y.values(), 2.0 * p.nu + 1.0) - sum_squares(y.values()) / (2.0 * t);
    Estimate surv = survival_nu_kappa(p, p.T - t, y, mc);
    return scaled(std::exp(l), surv);
}

double p_N_nu(double nu, double t, const OrderedConfiguration& y, const OrderedConfiguration& x) {
    double hx = vandermonde_alpha(x.values(), 0.0);
    if (hx == 0.0) throw DomainError("p_N_nu needs distinct |x_i|; use p_N_nu_origin for the origin");
    return vandermonde_alpha(y.values(), 0.0) / hx * f_N_nu(nu, t, y, x);
}

double log_p_N_nu_origin(double nu, double t, std::span<const double> y) {
    if (!(t > 0.0)) throw NonPositiveTime("p_N_nu_origin needs t > 0");
    const int n = int(y.size());
    const NormalizationConstants c = constants(n, nu);
    return -n * (n + nu) * std::log(t) - c.log_c_nu + 2.0 * log_vandermonde_alpha(y, nu + 0.5) -
           sum_squares(y) / (2.0 * t);
}

double p_N_nu_origin(double nu, double t, const OrderedConfiguration& y) {
    if (!(nu > -1.0)) throw BesselIndexOutOfRange("nu must exceed -1");
    require_half_line(y, "p_N_nu_origin");
    return std::exp(log_p_N_nu_origin(nu, t, y.values()));
}

double generalized_imhof_limit(const dens::DensityParams& p, const OrderedConfiguration& y) {
    p.validate();
    const int n = y.n();
    const NormalizationConstants c = constants(n, p.nu, p.kappa);
    return std::exp(c.log_c_nu - c.log_c_nu_kappa + 0.5 * n * (n + p.kappa - 1.0) * std::log(p.T) -
                    log_vandermonde_alpha(y.values(), p.kappa));
}

double f_N_asymptotic(double t, const OrderedConfiguration& y, const OrderedConfiguration& x) {
    const int n = y.n();
    const NormalizationConstants c = constants(n);
    std::vector<double> xs(x.values().begin(), x.values().end());
    for (double& v : xs) v /= std::sqrt(t);
    return std::exp(-0.25 * n * (n + 1) * std::log(t) - c.log_c1 + log_abs_vandermonde(xs) +
                    log_abs_vandermonde(y.values()) - sum_squares(y.values()) / (2.0 * t));
}

double survival_N_asymptotic(double t, const OrderedConfiguration& x) {
    const NormalizationConstants c = constants(x.n());
    std::vector<double> xs(x.values().begin(), x.values().end());
    for (double& v : xs) v /= std::sqrt(t);
    return std::exp(c.log_c2 - c.log_c1 + log_abs_vandermonde(xs));
}

double f_N_nu_asymptotic(double nu, double t, const OrderedConfiguration& y, const OrderedConfiguration& x) {
    const int n = y.n();
    const NormalizationConstants c = constants(n, nu);
    std::vector<double> xs(x.values().begin(), x.values().end());
    for (double& v : xs) v /= std::sqrt(t);
    return std::exp(-0.5 * n * (n + 1 + 2.0 * nu) * std::log(t) - c.log_c_nu + log_vandermonde_alpha(xs, 0.0) +
                    log_vandermonde_alpha(y.values(), 2.0 * nu + 1.0) - sum_squares(y.values()) / (2.0 * t));
}

double survival_nu_kappa_asymptotic(const dens::DensityParams& p, double tau, const OrderedConfiguration& x) {
    const int n = x.n();
    const NormalizationConstants c = constants(n, p.nu, p.kappa);
    std::vector<double> xs(x.values().begin(), x.values().end());
    for (double& v : xs) v /= std::sqrt(tau);
    return std::exp(-0.5 * n * p.kappa * std::log(tau) + c.log_c_nu_kappa - c.log_c_nu +
                    log_vandermonde_alpha(xs, 0.0));
}

}  // namespace noncollide::km
