#pragma once

#include <vector>

#include "noncollide/kernels.hpp"
#include "noncollide/quadrature.hpp"

namespace noncollide::fred {

// Window (a, b) at time t.  A half-line (a, inf) is cut to (a, a + length).
struct GapSpec {
    kern::ExtendedKernel kernel;
    double time = 1.0;
    double a = 0.0;
    double b = 1.0;
    int m = 32;  // starting order, doubled until stable

    void validate() const;
};

struct DetResult {
    double value = 1.0;
    double change = 0.0;  // |D(m) - D(m/2)| at the returned order
    int m = 0;
    bool clamped = false;
};

// One symmetrized Nyström evaluation det(I - W^1/2 K W^1/2) at order m.
double nystrom_det(const kern::ExtendedKernel& k, double t, double a, double b, int m);

// Doubles m from spec.m until two orders agree to 1e-10; QuadratureUnstable
// if they still differ by more than 1e-6 at m = 256.
DetResult fredholm_det_report(const GapSpec& spec);
double fredholm_det(const GapSpec& spec);

// P(max Y_i(t) <= alpha) for the noncolliding BM from the origin.
double rightmost_cdf(int N, double t, double alpha);
double rightmost_upper_cut(int N, double t, double alpha);

DetResult tracy_widom_fredholm_report(double alpha);
double tracy_widom_fredholm(double alpha);

double sine_gap(double a);

struct PainleveSolution {
    std::vector<double> x;  // decreasing
    std::vector<double> q;
    std::vector<double> qp;
    long substeps = 0;
};

// q'' = 2q^3 + x q from (Ai(x0), Ai'(x0)) at x0 down to x_end, RK4 with
// nominal step h and step-doubling local control.
PainleveSolution painleve2_solve(double x0, double x_end, double h = 1e-3, double local_tol = 1e-10);
// Values at a user grid starting at x_grid[0] = x0 >= 6 and decreasing.
std::vector<double> painleve2_hastings_mcleod(const std::vector<double>& x_grid, double h = 1e-3);

double tracy_widom_painleve(double alpha);

}  // namespace noncollide::fred
