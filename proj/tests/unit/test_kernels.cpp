#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "noncollide/kernels.hpp"
#include "noncollide/quadrature.hpp"

using namespace noncollide;
using namespace noncollide::kern;

namespace {

const double kPi = std::numbers::pi;

double line(const std::function<double(double)>& f) {
    return quad::integrate_to_infinity([&](double u) { return f(u) + f(-u); }, 0.0, 1.0, 1e-17);
}

double half(const std::function<double(double)>& f, double p) {
    return quad::integrate_power_endpoint(f, p, 0.5, 1.0) + quad::integrate_to_infinity(f, 1.0, 1.0, 1e-17);
}

}  // namespace

TEST_CASE("hermite functions") {
    CHECK(hermite_phi(0, 0.0) == doctest::Approx(std::pow(kPi, -0.25)).epsilon(1e-15));
    for (int n = 0; n <= 20; ++n)
        for (double x : {0.3, 1.7, 4.2}) CHECK(hermite_phi(n, -x) == (n % 2 ? -1.0 : 1.0) * hermite_phi(n, x));
    // 60-point Gauss rule on [-12, 12] in four panels is exact far below 1e-9 here
    QuadratureRule r = composite_gauss_legendre(60, 4, -12.0, 12.0);
    std::vector<double> tab(21);
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(21, 21);
    for (std::size_t i = 0; i < r.size(); ++i) {
        hermite_phi_table(20, r.nodes[i], tab.data());
        for (int m = 0; m <= 20; ++m)
            for (int n = 0; n <= 20; ++n) g(m, n) += r.weights[i] * tab[m] * tab[n];
    }
    CHECK((g - Eigen::MatrixXd::Identity(21, 21)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("laguerre functions") {
    CHECK(laguerre_phi(0, 0.0, 0.0) == doctest::Approx(1.0));
    CHECK(laguerre_phi(0, 0.7, 2.0) ==
          doctest::Approx(std::sqrt(1.0 / std::tgamma(1.7)) * std::pow(2.0, 0.35) * std::exp(-1.0)).epsilon(1e-14));
    for (double nu : {-0.4, 0.0, 0.5, 2.0}) {
        // substitution x = u^2 removes the x^nu endpoint behaviour for the smooth part
        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(21, 21);
        std::vector<double> tab(21);
        QuadratureRule r = composite_gauss_legendre(60, 12, 0.0, 14.0);
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double u = r.nodes[i], x = u * u;
            laguerre_phi_table(20, nu, x, tab.data());
            for (int m = 0; m <= 20; ++m)
                for (int n = 0; n <= 20; ++n) g(m, n) += r.weights[i] * 2 * u * tab[m] * tab[n];
        }
        if (nu < 0) {
            // x^nu with nu < 0 leaves u^(2 nu + 1) in the integrand; check it by the adaptive power rule
            for (int m : {0, 3, 20})
                for (int n : {0, 5, 20}) {
                    double v = half([&](double x) { return laguerre_phi(m, nu, x) * laguerre_phi(n, nu, x); }, nu);
                    CHECK(std::abs(v - (m == n)) < 1e-9);
                }
        } else {
            CHECK((g - Eigen::MatrixXd::Identity(21, 21)).cwiseAbs().maxCoeff() < 1e-9);
        }
    }
    // L_n^(-1/2)(x^2) and L_n^(1/2)(x^2) are the even and odd Hermite functions
    for (int n = 0; n < 8; ++n)
        for (double x : {0.2, 0.9, 2.3}) {
            const double ev = hermite_phi(2 * n, x) / std::sqrt(x), od = hermite_phi(2 * n + 1, x) / std::sqrt(x);
            const double le = laguerre_phi(n, -0.5, x * x) * (n % 2 ? -1.0 : 1.0);
            const double lo = laguerre_phi(n, 0.5, x * x) * (n % 2 ? -1.0 : 1.0);
            CHECK(std::abs(le - ev) <= 1e-8 * std::abs(ev) + 1e-14);
            CHECK(std::abs(lo - od) <= 1e-8 * std::abs(od) + 1e-14);
        }
}

TEST_CASE("hermite kernel") {
    CHECK(kernel_hermite(1, 0.5, 0.0, 0.5, 0.0) == doctest::Approx(1 / std::sqrt(kPi)).epsilon(1e-14));
    for (int N = 1; N <= 5; ++N)
        CHECK(std::abs(line([&](double x) { return kernel_hermite(N, 0.5, x, 0.5, x); }) - N) < 1e-8);
    for (auto [x, y] : {std::pair{0.3, -0.8}, std::pair{1.1, 1.4}}) {
        double v = line([&](double z) { return kernel_hermite(3, 1.0, x, 1.0, z) * kernel_hermite(3, 1.0, z, 1.0, y); });
        CHECK(std::abs(v - kernel_hermite(3, 1.0, x, 1.0, y)) < 1e-8);
    }
}

TEST_CASE("laguerre kernel") {
    for (int N = 1; N <= 4; ++N)
        CHECK(std::abs(half([&](double x) { return kernel_laguerre(N, 0.5, 1.0, x, 1.0, x); }, 2.0) - N) < 1e-8);
    for (double x : {0.4, 1.3}) {
        const double t = 0.8, p = laguerre_phi(0, 0.5, x * x / (2 * t));
        CHECK(kernel_laguerre(1, 0.5, t, x, t, x) == doctest::Approx(x / t * p * p).epsilon(1e-13));
    }
}

TEST_CASE("sine kernel") {
    CHECK(kernel_sine(1, 0.4, 1, 0.4) == doctest::Approx(1 / kPi).epsilon(1e-14));
    CHECK(std::abs(kernel_sine(1, kPi + 0.2, 1, 0.2)) < 1e-15);
    CHECK(std::abs(kernel_sine(1, 0.3, 1 + 1e-12, 0.3) - 1 / kPi) < 1e-10);
    const double d = 0.6;
    double expect = quad::integrate([&](double u) { return std::exp(d * u * u / 2); }, 0, 1) / kPi;
    CHECK(kernel_sine(0.2, 0.5, 0.2 + d, 0.5) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("airy and hard-edge kernels") {
    for (double x : {-2.0, 0.0, 1.5}) {
        double v = quad::integrate_to_infinity([&](double u) { double a = airy_ai(x + u); return a * a; }, 0.0, 1.0, 1e-18);
        CHECK(kernel_airy(0, x, 0, x) == doctest::Approx(v).epsilon(1e-8));
    }
    CHECK(kernel_airy(0, 12.0, 0, 12.0) < std::exp(-12.0) * 1e-6);
    for (double nu : {-0.5, 0.0, 1.0, 2.5})
        for (double x : {0.3, 1.7}) {
            double closed = bessel_hard_equal_time_closed(nu, x, x);
            double integral = bessel_hard_integral(nu, 0.0, x, x, 0.0, 2.0);
            CHECK(std::abs(closed - integral) < 1e-6);
        }
}

TEST_CASE("correlation functions") {
    ExtendedKernel k = ExtendedKernel::hermite(3);
    std::vector<SpaceTimePoint> one{{1.0, 0.4}};
    CHECK(correlation_function(k, one) == doctest::Approx(kernel_hermite(3, 1.0, 0.4, 1.0, 0.4)).epsilon(1e-14));
    for (double y : {-1.0, 0.41, 2.0}) {
        std::vector<SpaceTimePoint> two{{1.0, 0.4}, {1.0, y}};
        CHECK(correlation_function(k, two) >= -1e-12);
    }
    std::vector<SpaceTimePoint> ordered{{0.5, 0.2}, {1.0, -0.3}};
    const double k11 = kernel_hermite(3, 0.5, 0.2, 0.5, 0.2), k22 = kernel_hermite(3, 1.0, -0.3, 1.0, -0.3);
    const double k12 = kernel_hermite(3, 0.5, 0.2, 1.0, -0.3), k21 = kernel_hermite(3, 1.0, -0.3, 0.5, 0.2);
    CHECK(correlation_function(k, ordered) == doctest::Approx(k11 * k22 - k12 * k21).epsilon(1e-12));
    std::vector<double> nodes{-0.5, 0.1, 0.8};
    Eigen::MatrixXd m = equal_time_matrix(k, 1.0, nodes);
    CHECK(m(0, 2) == doctest::Approx(kernel_hermite(3, 1.0, -0.5, 1.0, 0.8)).epsilon(1e-13));
}
