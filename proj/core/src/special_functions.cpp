#include "noncollide/special_functions.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "noncollide/errors.hpp"
#include "noncollide/quadrature.hpp"

namespace noncollide::special {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

bool use_i_asymptotic(double nu, double z) { return z >= 25.0 && z >= nu * nu; }

// sum_k (z/2)^(2k) / (k! (nu+1)_k), i.e. Gamma(nu+1) I_nu(z) / (z/2)^nu
long double i_series_sum(double nu, double z) {
    const long double q = 0.25L * (long double)z * z;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k < 5000; ++k) {
        term *= q / ((long double)k * (k + nu));
        sum += term;
        if (term < 1e-20L * sum) break;
    }
    return sum;
}

}  // namespace

double bessel_i_series_scaled(double nu, double z) {
    if (z == 0.0) return nu == 0.0 ? 1.0 : (nu > 0.0 ? 0.0 : kInf);
    long double s = i_series_sum(nu, z);
    double logp = nu * std::log(0.5 * z) - std::lgamma(nu + 1.0) - z;
    return double(std::exp((long double)logp) * s);
}

double bessel_i_asymptotic_scaled(double nu, double z) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0, prev = kInf;
    for (int k = 1; k < 200; ++k) {
        double next = -term * (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * z);
        if (std::abs(next) > std::abs(prev) && k > 2) break;  // divergent tail
        prev = std::abs(term);
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * kPi * z);
}

double bessel_i_scaled(double nu, double z) {
    if (!(z >= 0.0)) throw DomainError("bessel_i needs z >= 0");
    return use_i_asymptotic(nu, z) ? bessel_i_asymptotic_scaled(nu, z) : bessel_i_series_scaled(nu, z);
}

double log_bessel_i(double nu, double z) {
    if (!(z >= 0.0)) throw DomainError("bessel_i needs z >= 0");
    if (z == 0.0) return nu == 0.0 ? 0.0 : (nu > 0.0 ? -kInf : kInf);
    if (use_i_asymptotic(nu, z)) return z + std::log(bessel_i_asymptotic_scaled(nu, z));
    return nu * std::log(0.5 * z) - std::lgamma(nu + 1.0) + double(std::log(i_series_sum(nu, z)));
}

double bessel_i(double nu, double z) {
    double l = log_bessel_i(nu, z);
    if (l > std::log(DBL_MAX)) throw Overflow("I_nu(z) exceeds the double range at z = " + std::to_string(z));
    return std::exp(l);
}

double log_bessel_i_regular(double nu, double z) {
    if (!(z >= 0.0)) throw DomainError("bessel_i needs z >= 0");
    if (use_i_asymptotic(nu, z)) return z + std::log(bessel_i_asymptotic_scaled(nu, z)) - nu * std::log(0.5 * z);
    return double(std::log(i_series_sum(nu, z))) - std::lgamma(nu + 1.0);
}

double bessel_i_regular(double nu, double z) { return std::exp(log_bessel_i_regular(nu, z)); }

// ---- Bessel J ---------------------------------------------------------------

namespace {

bool use_j_asymptotic(double nu, double x) { return x > std::max(15.0, nu * nu); }

// Hankel expansion; P and Q series of the large-argument form
void hankel_pq(double nu, double x, double& p, double& q) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0, prev = kInf;
    p = 1.0;
    q = 0.0;
    for (int k = 1; k < 400; ++k) {
        double next = term * (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x);
        if (k > 2 && std::abs(next) > prev) break;
        prev = std::abs(term);
        term = next;
        // a_k / x^k enters P with sign (-1)^(k/2) for even k, Q with (-1)^((k-1)/2) for odd k
        int r = k % 4;
        if (r == 0) p += term;
        else if (r == 1) q += term;
        else if (r == 2) p -= term;
        else q -= term;
        if (std::abs(term) < 1e-17) break;
    }
}

}  // namespace

double bessel_j_series(double nu, double x) {
    if (x == 0.0) return nu == 0.0 ? 1.0 : (nu > 0.0 ? 0.0 : kInf);
    const long double q = 0.25L * (long double)x * x;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k < 2000; ++k) {
        term *= -q / ((long double)k * (k + nu));
        sum += term;
        if (std::abs(term) < 1e-21L * std::abs(sum) && k > q) break;
    }
    return double(std::exp((long double)(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0))) * sum);
}

double bessel_j_asymptotic(double nu, double x) {
    double p, q;
    hankel_pq(nu, x, p, q);
    double chi = x - (0.5 * nu + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double bessel_j(double nu, double x) {
    if (!(x >= 0.0)) throw DomainError("bessel_j needs x >= 0");
    return use_j_asymptotic(nu, x) ? bessel_j_asymptotic(nu, x) : bessel_j_series(nu, x);
}

double bessel_j_prime(double nu, double x) {
    if (!(x >= 0.0)) throw DomainError("bessel_j needs x >= 0");
    if (use_j_asymptotic(nu, x)) return bessel_j_asymptotic(nu - 1.0, x) - nu / x * bessel_j_asymptotic(nu, x);
    if (x == 0.0) {
        if (nu == 1.0) return 0.5;
        if (nu == 0.0 || nu > 1.0) return 0.0;
        return kInf;
    }
    // d/dx of the ascending series: (1/x) sum (2k+nu) c_k
    const long double q = 0.25L * (long double)x * x;
    long double term = 1.0L, sum = nu;
    for (int k = 1; k < 2000; ++k) {
        term *= -q / ((long double)k * (k + nu));
        sum += term * (2.0L * k + nu);
        if (std::abs(term) < 1e-21L && k > q) break;
    }
    return double(std::exp((long double)(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0))) * sum / x);
}

Checked bessel_j_checked(double nu, double x) {
    double v = bessel_j(nu, x);
    double digits = 16.0 - std::log10(std::max(1.0, x));
    return {v, digits, x > 500.0};
}

// ---- Airy -------------------------------------------------------------------

namespace {

constexpr long double kAi0 = 0.355028053887817239260063186004183176L;   // Ai(0)
constexpr long double kAip0 = 0.258819403792806798405183560189203963L;  // -Ai'(0)

struct AiryCoeffs {
    double u[40];
    double v[40];
    AiryCoeffs() {
        u[0] = v[0] = 1.0;
        for (int k = 1; k < 40; ++k) {
            u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
            v[k] = -u[k] * (6.0 * k + 1.0) / (6.0 * k - 1.0);
        }
    }
};

const AiryCoeffs& airy_coeffs() {
    static const AiryCoeffs c;
    return c;
}

const QuadratureRule& airy_rule() {
    static const QuadratureRule r = composite_gauss_legendre(24, 8, 0.0, 1.0);
    return r;
}

}  // namespace

Airy airy_series(double xd) {
    const long double x = xd, x3 = x * x * x;
    long double f = 1.0L, g = x, fp = 0.0L, gp = 1.0L;
    long double tf = 1.0L, tg = x, tfp = 0.5L * x * x, tgp = 1.0L;
    fp = tfp;
    for (int k = 1; k < 200; ++k) {
        tf *= x3 / ((3.0L * k - 1.0L) * (3.0L * k));
        tg *= x3 / ((3.0L * k) * (3.0L * k + 1.0L));
        if (k >= 2) {
            tfp *= x3 / ((3.0L * k - 3.0L) * (3.0L * k - 1.0L));
            fp += tfp;
        }
        tgp *= x3 / ((3.0L * k - 2.0L) * (3.0L * k));
        f += tf;
        g += tg;
        gp += tgp;
        long double scale = std::abs(f) + std::abs(g) + 1.0L;
        if (std::abs(tf) + std::abs(tg) + std::abs(tfp) + std::abs(tgp) < 1e-22L * scale) break;
    }
    return {double(kAi0 * f - kAip0 * g), double(kAi0 * fp - kAip0 * gp)};
}

Airy airy_integral(double x) {
    // Ai(x) = e^(-zeta)/pi * int_0^inf exp(-sqrt(x) t^2) cos(t^3/3) dt
    const double r = std::sqrt(x);
    const double zeta = 2.0 / 3.0 * x * r;
    const double tmax = std::sqrt(42.0 / r);
    const QuadratureRule& rule = airy_rule();
    double i0 = 0.0, i2 = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) {
        double t = tmax * rule.nodes[k];
        double w = tmax * rule.weights[k] * std::exp(-r * t * t) * std::cos(t * t * t / 3.0);
        i0 += w;
        i2 += w * t * t;
    }
    double pre = std::exp(-zeta) / kPi;
    return {pre * i0, pre * (-r * i0 - i2 / (2.0 * r))};
}

Airy airy_asymptotic(double x) {
    const AiryCoeffs& c = airy_coeffs();
    const double sqrt_pi = std::sqrt(kPi);
    if (x > 0.0) {
        const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
        double su = 0.0, sv = 0.0, pw = 1.0;
        for (int k = 0; k < 40; ++k) {
            double sign = (k % 2 == 0) ? 1.0 : -1.0;
            double tu = sign * c.u[k] * pw, tv = sign * c.v[k] * pw;
            su += tu;
            sv += tv;
            if (std::abs(tu) < 1e-17 * std::abs(su) && std::abs(tv) < 1e-17 * std::abs(sv)) break;
            pw /= zeta;
        }
        double q = std::pow(x, 0.25);
        double e = std::exp(-zeta);
        return {e / (2.0 * sqrt_pi * q) * su, -q * e / (2.0 * sqrt_pi) * sv};
    }
    const double z = -x;
    const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
    double ue = 0.0, uo = 0.0, ve = 0.0, vo = 0.0, pw = 1.0;
    for (int k = 0; k < 40; ++k) {
        double tu = c.u[k] * pw, tv = c.v[k] * pw;
        // (-1)^m on the 2m and 2m+1 terms
        double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            ue += sign * tu;
            ve += sign * tv;
        } else {
            uo += sign * tu;
            vo += sign * tv;
        }
        if (std::abs(tu) < 1e-17 && std::abs(tv) < 1e-17) break;
        pw /= zeta;
    }
    double th = zeta - 0.25 * kPi;
    double q = std::pow(z, 0.25);
    double ai = (std::cos(th) * ue + std::sin(th) * uo) / (sqrt_pi * q);
    double aip = q / sqrt_pi * (std::sin(th) * ve - std::cos(th) * vo);
    return {ai, aip};
}

Airy airy(double x) {
    if (!std::isfinite(x)) throw NonFinite("airy argument must be finite");
    if (x < -8.0 || x > 10.0) return airy_asymptotic(x);
    if (x > 2.0) return airy_integral(x);
    return airy_series(x);
}

double airy_ai(double x) { return airy(x).ai; }
double airy_ai_prime(double x) { return airy(x).aip; }

Checked airy_ai_checked(double x) {
    double v = airy_ai(x);
    double zeta = x < 0.0 ? 2.0 / 3.0 * std::pow(-x, 1.5) : 1.0;
    double digits = 16.0 - std::log10(std::max(1.0, zeta));
    return {v, digits, x < -500.0 || x > 500.0};
}

}  // namespace noncollide::special
