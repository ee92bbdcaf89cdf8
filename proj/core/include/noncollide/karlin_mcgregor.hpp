#pragma once

#include <functional>
#include <span>

#include "noncollide/core.hpp"
#include "noncollide/densities1d.hpp"
#include "noncollide/linalg.hpp"

namespace noncollide::km {

struct NormalizationConstants {
    int n = 1;
    double nu = 0.0;
    double kappa = 0.0;
    double log_c1 = 0.0, log_c2 = 0.0, log_c3 = 0.0, log_c_nu = 0.0, log_c_nu_kappa = 0.0;
    double c1 = 1.0, c2 = 1.0, c3 = 1.0, c_nu = 1.0, c_nu_kappa = 1.0;
};

NormalizationConstants constants(int N, double nu = 0.0, double kappa = 0.0);

// log of a one-particle transition density g(s, x; t, y)
using LogTransition = std::function<double(double s, double x, double t, double y)>;

LogTransition brownian_transition();
LogTransition bessel_transition(double nu);

linalg::LogDet km_log_density(const LogTransition& log_g, double s, const OrderedConfiguration& x, double t,
                              const OrderedConfiguration& y);
// Throws NumericalUnderflow when |det| is below the smallest normal double.
double km_density(const LogTransition& log_g, double s, const OrderedConfiguration& x, double t,
                  const OrderedConfiguration& y);

double vandermonde(std::span<const double> x);
double vandermonde_alpha(std::span<const double> x, double alpha);
// log |h^(alpha)(x)|, no domain restriction (0^alpha handled as a limit)
double log_vandermonde_alpha(std::span<const double> x, double alpha);
double log_abs_vandermonde(std::span<const double> x);

double f_N(double t, const OrderedConfiguration& y, const OrderedConfiguration& x);
linalg::LogDet log_f_N(double t, const OrderedConfiguration& y, const OrderedConfiguration& x);

Estimate survival_N(double t, const OrderedConfiguration& x, const McOptions& mc = {});
// Monte Carlo route regardless of N (used for the refinement and cross-route checks).
Estimate survival_N_mc(double t, const OrderedConfiguration& x, const McOptions& mc = {});

Estimate g_NT(double s, const OrderedConfiguration& x, double t, const OrderedConfiguration& y, double T,
              const McOptions& mc = {});
Estimate g_NT_origin(double t, const OrderedConfiguration& y, double T, const McOptions& mc = {});

double p_N(double t, const OrderedConfiguration& y, const OrderedConfiguration& x);
double p_N_origin(double t, const OrderedConfiguration& y);
double log_p_N_origin(double t, std::span<const double> y);

Estimate imhof_ratio(double t, const OrderedConfiguration& y, double T, const McOptions& mc = {});
// (C1/C2) T^(N(N-1)/4) / h_N(y)
double imhof_limit(const OrderedConfiguration& y, double T);

double f_N_nu(double nu, double t, const OrderedConfiguration& y, const OrderedConfiguration& x);

// tilde N^(nu,kappa)(tau, x) = int_W f^(nu)(tau, y|x) prod y^(-kappa) dy
Estimate survival_nu_kappa(const dens::DensityParams& p, double tau, const OrderedConfiguration& x,
                           const McOptions& mc = {});
Estimate survival_nu_kappa_mc(const dens::DensityParams& p, double tau, const OrderedConfiguration& x,
                              const McOptions& mc = {});

Estimate g_NT_nu_kappa(const dens::DensityParams& p, double s, const OrderedConfiguration& x, double t,
                       const OrderedConfiguration& y, const McOptions& mc = {});
Estimate g_NT_nu_kappa_origin(const dens::DensityParams& p, double t, const OrderedConfiguration& y,
                              const McOptions& mc = {});

double p_N_nu(double nu, double t, const OrderedConfiguration& y, const OrderedConfiguration& x);
double p_N_nu_origin(double nu, double t, const OrderedConfiguration& y);
double log_p_N_nu_origin(double nu, double t, std::span<const double> y);

// (C^(nu)/C^(nu,kappa)) T^(N(N+kappa-1)/2) / h^(kappa)(y)
double generalized_imhof_limit(const dens::DensityParams& p, const OrderedConfiguration& y);

// Leading small-|x|/sqrt(t) forms.
double f_N_asymptotic(double t, const OrderedConfiguration& y, const OrderedConfiguration& x);
double survival_N_asymptotic(double t, const OrderedConfiguration& x);
double f_N_nu_asymptotic(double nu, double t, const OrderedConfiguration& y, const OrderedConfiguration& x);
double survival_nu_kappa_asymptotic(const dens::DensityParams& p, double tau, const OrderedConfiguration& x);

}  // namespace noncollide::km
