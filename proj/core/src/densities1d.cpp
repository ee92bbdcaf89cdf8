#include "noncollide/densities1d.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "noncollide/errors.hpp"
#include "noncollide/quadrature.hpp"
#include "noncollide/special_functions.hpp"

namespace noncollide::dens {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLog2Pi = 1.8378770664093454836;

void require_time(double t) {
    if (!(t > 0.0)) throw NonPositiveTime("time must be positive, got " + std::to_string(t));
}

void require_order(double s, double t, double T) {
    if (!(s >= 0.0 && s < t && t <= T)) throw TimeOrdering("need 0 <= s < t <= T");
}

void require_nu(double nu) {
    if (!(nu > -1.0)) throw BesselIndexOutOfRange("Bessel index must exceed -1");
}

// erf(y / sqrt(2 tau)) with the tau = 0 limit
double h_remaining(double tau, double y) {
    if (tau <= 0.0) return y > 0.0 ? 1.0 : 0.0;
    return std::erf(y / std::sqrt(2.0 * tau));
}

}  // namespace

void DensityParams::validate() const {
    require_nu(nu);
    if (!(kappa >= 0.0 && kappa <= 2.0 * (nu + 1.0))) throw DomainError("kappa must lie in [0, 2(nu+1)]");
    if (!(T > 0.0)) throw DomainError("horizon T must be positive");
}

double log_bm_density(double t, double y, double x) {
    require_time(t);
    double d = y - x;
    return -0.5 * (kLog2Pi + std::log(t)) - d * d / (2.0 * t);
}

double bm_density(double t, double y, double x) { return std::exp(log_bm_density(t, y, x)); }

double bridge_density(double s, double x, double t, double y, double T) {
    require_order(s, t, T);
    if (t == T) return y == 0.0 ? kInf : 0.0;
    return std::exp(log_bm_density(T - t, 0.0, y) + log_bm_density(t - s, y, x) - log_bm_density(T - s, 0.0, x));
}

double absorbing_density(double t, double y, double x) {
    require_time(t);
    if (!(x > 0.0)) throw DomainError("absorbing_density needs x > 0");
    if (y < 0.0) return 0.0;
    return bm_density(t, y, x) * -std::expm1(-2.0 * x * y / t);
}

double survival_h(double s, double x) {
    if (!(s > 0.0) || !(x > 0.0)) throw DomainError("survival_h needs s > 0 and x > 0");
    return std::erf(x / std::sqrt(2.0 * s));
}

double bessel3_density(double t, double y, double x) {
    if (!(x > 0.0)) throw DomainError("bessel3_density needs x > 0");
    if (y < 0.0) return 0.0;
    return (y / x) * absorbing_density(t, y, x);
}

double bessel3_density_origin(double t, double y) {
    require_time(t);
    if (y < 0.0) return 0.0;
    return (2.0 / t) * y * y * bm_density(t, y, 0.0);
}

double log_bessel_density(double nu, double t, double y, double x) {
    require_nu(nu);
    require_time(t);
    if (!(x >= 0.0)) throw DomainError("bessel_density needs x >= 0");
    if (y < 0.0) return -kInf;
    const double z = x * y / t;
    if (z < 1.0) {
        // y^(2nu+1) (2t)^(-nu) / t e^(-(x^2+y^2)/2t) I_nu(z)/(z/2)^nu
        double power = 2.0 * nu + 1.0;
        double ly = power == 0.0 ? 0.0 : (y == 0.0 ? (power > 0.0 ? -kInf : kInf) : power * std::log(y));
        return ly - nu * std::log(2.0 * t) - std::log(t) - (x * x + y * y) / (2.0 * t) +
               special::log_bessel_i_regular(nu, z);
    }
    double d = x - y;
    return (nu + 1.0) * std::log(y) - nu * std::log(x) - std::log(t) - d * d / (2.0 * t) +
           std::log(special::bessel_i_scaled(nu, z));
}

double bessel_density(double nu, double t, double y, double x) {
    return std::exp(log_bessel_density(nu, t, y, x));
}

double meander_density(double s, double x, double t, double y, double T) {
    require_order(s, t, T);
    bool origin = (s == 0.0 && x == 0.0);
    if (!origin && !(x > 0.0)) throw DomainError("meander_density needs x > 0 or (s, x) = (0, 0)");
    if (y < 0.0) return 0.0;
    double hr = h_remaining(T - t, y);
    if (origin) return std::sqrt(2.0 * std::numbers::pi * T) / t * hr * y * bm_density(t, y, 0.0);
    return hr / survival_h(T - s, x) * absorbing_density(t - s, y, x);
}

double h_nu_kappa(const DensityParams& p, double t, double x) {
    p.validate();
    if (p.kappa >= 2.0 * (p.nu + 1.0))
        throw IntegrableSingularity("h^(nu,kappa) diverges: kappa >= 2(nu+1)");
    if (!(t >= 0.0 && t <= p.T)) throw TimeOrdering("need 0 <= t <= T");
    if (!(x >= 0.0)) throw DomainError("h_nu_kappa needs x >= 0");
    const double tau = p.T - t;
    if (tau == 0.0) {
        if (x == 0.0) throw DomainError("h_nu_kappa at t = T needs x > 0");
        return std::pow(x, -p.kappa);
    }
    if (p.kappa == 0.0) return 1.0;
    const double nu = p.nu, kappa = p.kappa;
    auto f = [&](double y) {
        if (y <= 0.0) return 0.0;
        return std::exp(log_bessel_density(nu, tau, y, x) - kappa * std::log(y));
    };
    const double st = std::sqrt(tau);
    const double b = x + 12.0 * st;
    const double split = std::min(0.5 * st, 0.5 * b);
    // 1e-12 sits under the rounding floor of the Bessel factor for larger nu and
    // drives the adaptive rule to full depth
    quad::Tolerance tol;
    tol.rel = 1e-10;
    return quad::integrate_power_endpoint(f, 2.0 * nu + 1.0 - kappa, split, b, tol);
}

double gen_meander_density(const DensityParams& p, double s, double x, double t, double y) {
    p.validate();
    require_order(s, t, p.T);
    bool origin = (s == 0.0 && x == 0.0);
    if (!origin && !(x > 0.0)) throw DomainError("gen_meander_density needs x > 0 or (s, x) = (0, 0)");
    if (y < 0.0) return 0.0;
    if (p.kappa == 0.0) return bessel_density(p.nu, t - s, y, x);
    if (t == p.T && y == 0.0) return 0.0;
    double ht = h_nu_kappa(p, t, y);
    if (origin) {
        double logc = std::lgamma(p.nu + 1.0) + 0.5 * p.kappa * std::log(2.0 * p.T) -
                      std::lgamma(p.nu + 1.0 - 0.5 * p.kappa);
        return std::exp(logc) * ht * bessel_density(p.nu, t, y, 0.0);
    }
    return ht / h_nu_kappa(p, s, x) * bessel_density(p.nu, t - s, y, x);
}

}  // namespace noncollide::dens
