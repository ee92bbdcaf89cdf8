#pragma once

namespace noncollide::special {

// Modified Bessel function of the first kind.
double bessel_i(double nu, double z);
// e^(-z) I_nu(z); finite for every z >= 0
double bessel_i_scaled(double nu, double z);
// log I_nu(z); -inf at z = 0 when nu > 0
double log_bessel_i(double nu, double z);
// I_nu(z) / (z/2)^nu, the entire part; equals 1/Gamma(nu+1) at z = 0
double bessel_i_regular(double nu, double z);
double log_bessel_i_regular(double nu, double z);

// Branch evaluators, exposed so the seam at z = 25 can be tested.
double bessel_i_series_scaled(double nu, double z);
double bessel_i_asymptotic_scaled(double nu, double z);

double bessel_j(double nu, double x);
double bessel_j_prime(double nu, double x);
double bessel_j_series(double nu, double x);
double bessel_j_asymptotic(double nu, double x);

struct Airy {
    double ai;
    double aip;
};

Airy airy(double x);
double airy_ai(double x);
double airy_ai_prime(double x);

struct Checked {
    double value;
    double digits;  // estimated correct significant digits
    bool accuracy_loss;
};

// Flags the deep-oscillation regime |x| > 500 where phase rounding eats digits.
Checked airy_ai_checked(double x);
Checked bessel_j_checked(double nu, double x);

// Separate branches for seam tests.
Airy airy_series(double x);
Airy airy_integral(double x);
Airy airy_asymptotic(double x);

}  // namespace noncollide::special
