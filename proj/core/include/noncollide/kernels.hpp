#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "noncollide/core.hpp"
#include "noncollide/special_functions.hpp"

namespace noncollide::kern {

using special::airy_ai;
using special::bessel_j;

// Orthonormal Hermite function; φ_0..φ_nmax written to out (size nmax+1).
void hermite_phi_table(int nmax, double x, double* out);
double hermite_phi(int n, double x);

// φ_n^ν(x) = sqrt(n!/Γ(ν+n+1)) x^(ν/2) L_n^ν(x) e^(-x/2)
void laguerre_phi_table(int nmax, double nu, double x, double* out);
double laguerre_phi(int n, double nu, double x);

double kernel_hermite(int N, double s, double x, double t, double y);
double kernel_laguerre(int N, double nu, double s, double x, double t, double y);
double kernel_sine(double s, double x, double t, double y);
double kernel_airy(double s, double x, double t, double y);
double kernel_bessel_hard(double nu, double s, double x, double t, double y);

// Pieces of the hard-edge kernel, exposed for the two-route diagonal check.
double bessel_hard_equal_time_closed(double nu, double x, double y);
double bessel_hard_integral(double nu, double dt, double x, double y, double u_lo, double u_hi);

// Partial bilinear sum (1/sqrt(2s)) Σ_{lo<=n<hi} (t/s)^(n/2) φ_n φ_n of the
// Hermite kernel; used to check the telescoping between branches.
double hermite_bilinear(int lo, int hi, double s, double x, double t, double y);

enum class Family { HermiteN, LaguerreN, Sine, Airy, BesselHard };

struct ExtendedKernel {
    Family family = Family::HermiteN;
    int n = 1;
    double nu = 0.0;
    std::function<double(double, double, double, double)> evaluator;

    double operator()(double s, double x, double t, double y) const { return evaluator(s, x, t, y); }
    bool half_line() const { return family == Family::LaguerreN || family == Family::BesselHard; }

    static ExtendedKernel hermite(int N);
    static ExtendedKernel laguerre(int N, double nu);
    static ExtendedKernel sine();
    static ExtendedKernel airy();
    static ExtendedKernel bessel_hard(double nu);
};

// K(t, x_i; t, x_j) over a node set.  Hermite/Laguerre assemble Φ Φ^T from
// one recurrence per node; Airy uses a shared quadrature of the u-integral.
Eigen::MatrixXd equal_time_matrix(const ExtendedKernel& k, double t, std::span<const double> nodes);

struct SpaceTimePoint {
    double time;
    double x;
};

// det[K(t_m, x_i; t_n, x_j)], at most 12 points
double correlation_function(const ExtendedKernel& k, std::span<const SpaceTimePoint> points);

}  // namespace noncollide::kern
