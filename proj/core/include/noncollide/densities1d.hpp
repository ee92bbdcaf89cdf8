#pragma once

namespace noncollide::dens {

struct DensityParams {
    double nu = 0.5;
    double kappa = 1.0;
    double T = 1.0;

    void validate() const;
};

double bm_density(double t, double y, double x);
double log_bm_density(double t, double y, double x);

double bridge_density(double s, double x, double t, double y, double T);

double absorbing_density(double t, double y, double x);
double survival_h(double s, double x);

double bessel3_density(double t, double y, double x);
double bessel3_density_origin(double t, double y);

double bessel_density(double nu, double t, double y, double x);
double log_bessel_density(double nu, double t, double y, double x);

double meander_density(double s, double x, double t, double y, double T);

double gen_meander_density(const DensityParams& p, double s, double x, double t, double y);
// h^(nu,kappa)_T(t, x) = int_0^inf G^(nu)(T-t, y|x) y^(-kappa) dy
double h_nu_kappa(const DensityParams& p, double t, double x);

}  // namespace noncollide::dens
