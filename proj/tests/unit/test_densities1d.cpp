#include <cmath>
#include <numbers>

#include "doctest.h"
#include "noncollide/densities1d.hpp"
#include "noncollide/errors.hpp"
#include "noncollide/quadrature.hpp"

using namespace noncollide;
using namespace noncollide::dens;

namespace {

const double kPi = std::numbers::pi;

double line(const quad::Fn& f, double c) {
    return quad::integrate_to_infinity([&](double u) { return f(c + u) + f(c - u); }, 0.0, 1.0, 1e-16);
}

double half(const quad::Fn& f) { return quad::integrate_to_infinity(f, 0.0, 1.0, 1e-16); }

double half_power(const quad::Fn& f, double p) {
    return quad::integrate_power_endpoint(f, p, 0.5, 1.0) + quad::integrate_to_infinity(f, 1.0, 1.0, 1e-16);
}

}  // namespace

TEST_CASE("brownian density") {
    CHECK(bm_density(1, 0, 0) == doctest::Approx(1.0 / std::sqrt(2 * kPi)).epsilon(1e-15));
    CHECK(bm_density(2, 1.5, 0.5) == bm_density(2, 0.5, 1.5));
    CHECK(std::abs(line([](double y) { return bm_density(1, y, 0); }, 0.0) - 1.0) < 1e-10);
    CHECK(std::exp(log_bm_density(0.7, 3.0, -1.0)) == doctest::Approx(bm_density(0.7, 3.0, -1.0)).epsilon(1e-14));
    CHECK_THROWS_AS(bm_density(0.0, 0.0, 0.0), NonPositiveTime);
}

TEST_CASE("brownian bridge") {
    CHECK(std::abs(line([](double y) { return bridge_density(0, 0, 0.4, y, 1); }, 0.0) - 1.0) < 1e-10);
    CHECK(std::abs(line([](double y) { return y * y * bridge_density(0, 0, 0.9, y, 1); }, 0.0) - 0.09) < 1e-8);
    for (double y : {0.1, 0.5, 1.7}) CHECK(bridge_density(0, 0, 0.5, y, 1) == bridge_density(0, 0, 0.5, -y, 1));
}

TEST_CASE("absorbing density and survival") {
    CHECK(absorbing_density(1, 1, 1) == doctest::Approx((1 - std::exp(-2.0)) / std::sqrt(2 * kPi)).epsilon(1e-14));
    CHECK(absorbing_density(1, 1, 1) == doctest::Approx(0.344951).epsilon(1e-6));
    CHECK(absorbing_density(0.3, 0.0, 0.8) == 0.0);
    CHECK(std::abs(half([](double y) { return absorbing_density(1.3, y, 0.6); }) - survival_h(1.3, 0.6)) < 1e-10);
    CHECK(survival_h(1, 1) == doctest::Approx(std::erf(1 / std::sqrt(2.0))).epsilon(1e-14));
    CHECK(survival_h(1, 1) == doctest::Approx(0.6826895).epsilon(1e-7));
    CHECK(survival_h(1e-4, 5.0) == doctest::Approx(1.0));
    CHECK(survival_h(4, 1) < survival_h(1, 1));
}

TEST_CASE("three-dimensional bessel") {
    CHECK(bessel3_density_origin(1.0, 0.0) == 0.0);
    CHECK(bessel3_density(1, 1, 1) == doctest::Approx(absorbing_density(1, 1, 1)).epsilon(1e-14));
    for (double y : {0.05, 0.7, 2.0, 4.5})
        for (double x : {0.3, 1.0}) {
            CHECK(bessel_density(0.5, 0.8, y, x) == doctest::Approx(bessel3_density(0.8, y, x)).epsilon(1e-12));
        }
    CHECK(bessel_density(0.5, 0.8, 1.1, 0.0) == doctest::Approx(bessel3_density_origin(0.8, 1.1)).epsilon(1e-12));
}

TEST_CASE("bessel density normalization and chapman-kolmogorov") {
    const double cases[][3] = {{0.5, 1, 1}, {0, 1, 2}, {-0.4, 1, 1}};
    for (const auto& c : cases) {
        const double nu = c[0], t = c[1], x = c[2];
        double m = half_power([=](double y) { return bessel_density(nu, t, y, x); }, 2 * nu + 1);
        CHECK(std::abs(m - 1.0) < 1e-8);
    }
    const double s = 0.4, t = 0.7, x = 0.5, y = 1.2;
    for (double nu : {0.0, -0.4, 1.5}) {
        auto f = [&](double z) { return bessel_density(nu, s, z, x) * bessel_density(nu, t, y, z); };
        CHECK(std::abs(half_power(f, 2 * nu + 1) - bessel_density(nu, s + t, y, x)) < 1e-6);
    }
    CHECK_THROWS_AS(bessel_density(-1.0, 1.0, 1.0, 1.0), BesselIndexOutOfRange);
}

TEST_CASE("meander") {
    CHECK(std::abs(half([](double y) { return meander_density(0, 0, 0.5, y, 1); }) - 1.0) < 1e-8);
    CHECK(std::abs(half([](double y) { return meander_density(0, 0, 1.0, y, 1); }) - 1.0) < 1e-8);
    const double T = 1.3;
    for (double y : {0.2, 0.9, 2.4}) {
        double r = meander_density(0, 0, T, y, T) / bessel3_density_origin(T, y);
        CHECK(r == doctest::Approx(std::sqrt(kPi * T / 2) / y).epsilon(1e-10));
    }
}

TEST_CASE("generalized meander") {
    DensityParams bes{0.7, 0.0, 1.0};
    for (double y : {0.3, 1.1})
        CHECK(gen_meander_density(bes, 0.2, 0.6, 0.5, y) == doctest::Approx(bessel_density(0.7, 0.3, y, 0.6)).epsilon(1e-10));
    DensityParams mea{0.5, 1.0, 1.0};
    for (double y : {0.3, 1.1, 2.0}) {
        CHECK(std::abs(gen_meander_density(mea, 0, 0, 0.5, y) - meander_density(0, 0, 0.5, y, 1)) < 1e-8);
        CHECK(std::abs(gen_meander_density(mea, 0.1, 0.4, 0.5, y) - meander_density(0.1, 0.4, 0.5, y, 1)) < 1e-8);
    }
    DensityParams p{1.5, 1.2, 2.0};
    for (double y : {0.4, 1.3}) {
        double r = gen_meander_density(p, 0, 0, p.T, y) / bessel_density(p.nu, p.T, y, 0.0);
        double expect = std::tgamma(p.nu + 1) / std::tgamma(p.nu + 1 - p.kappa / 2) * std::pow(std::sqrt(2 * p.T) / y, p.kappa);
        CHECK(std::abs(r / expect - 1.0) < 1e-8);
    }
    CHECK_THROWS_AS((DensityParams{0.5, 3.5, 1.0}).validate(), DomainError);
}
