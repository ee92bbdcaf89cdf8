#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "noncollide/karlin_mcgregor.hpp"
#include "noncollide/quadrature.hpp"

using namespace noncollide;
using namespace noncollide::km;

namespace {

const double kPi = std::numbers::pi;

OrderedConfiguration A(std::initializer_list<double> v) { return validate_chamber(v, Chamber::A); }
OrderedConfiguration C(std::initializer_list<double> v) { return validate_chamber(v, Chamber::C); }

// int over y1 < y2 of f(y1, y2), both in (lo, hi)
double ordered2(const std::function<double(double, double)>& f, double lo, double hi) {
    auto inner = [&](double y1) { return quad::integrate([&](double y2) { return f(y1, y2); }, y1, hi); };
    quad::Tolerance tol;
    tol.rel = 1e-9;
    return quad::integrate(inner, lo, hi, tol);
}

}  // namespace

TEST_CASE("km_density small cases") {
    const LogTransition bm = brownian_transition();
    CHECK(km_density(bm, 0.0, A({0.3}), 0.8, A({1.1})) == doctest::Approx(dens::bm_density(0.8, 1.1, 0.3)).epsilon(1e-15));
    const double expect = (1 - std::exp(-1.0)) / (2 * kPi);
    CHECK(km_density(bm, 0.0, A({0, 1}), 1.0, A({0, 1})) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(expect == doctest::Approx(0.100607).epsilon(1e-5));
    RngStream r(3, 1);
    for (int k = 0; k < 50; ++k) {
        std::vector<double> x(3), y(3);
        for (auto& v : x) v = r.gaussian();
        for (auto& v : y) v = r.gaussian();
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        CHECK(km_density(bm, 0.0, validate_chamber(x, Chamber::A), 0.5 + r.uniform(), validate_chamber(y, Chamber::A)) >= 0.0);
    }
    CHECK_THROWS_AS(km_density(bm, 1.0, A({0, 1}), 1.0, A({0, 1})), TimeOrdering);
    CHECK_THROWS_AS(km_density(bm, 0.0, A({0, 1}), 1.0, A({0})), SizeMismatch);
}

TEST_CASE("f_N is the brownian km density") {
    auto x = A({-0.5, 0.2, 1.0}), y = A({-1.0, 0.4, 0.9});
    CHECK(f_N(0.7, y, x) == km_density(brownian_transition(), 0.0, x, 0.7, y));
    auto x2 = A({-0.3, 0.4});
    double mass = ordered2([&](double a, double b) { return f_N(1.0, A({a, b}), x2); }, -10, 10);
    CHECK(mass <= 1.0);
    CHECK(mass == doctest::Approx(survival_N(1.0, x2).value).epsilon(1e-6));
}

TEST_CASE("survival_N") {
    CHECK(survival_N(0.0, A({0, 1, 2})).value == 1.0);
    for (double t : {0.3, 1.0, 4.0}) {
        auto x = A({-0.2, 0.9});
        CHECK(std::abs(survival_N(t, x).value - std::erf(1.1 / (2 * std::sqrt(t)))) < 1e-6);
    }
    const double e = 1e-3;
    auto x = A({-e, 0.5 * e, 2 * e});
    CHECK(survival_N(1.0, x).value / survival_N_asymptotic(1.0, x) == doctest::Approx(1.0).epsilon(1e-3));
    Estimate mc = survival_N(1.0, A({-1, 0, 1, 2}));
    CHECK(mc.monte_carlo);
    CHECK(mc.std_error > 0.0);
}

TEST_CASE("vandermonde") {
    std::vector<double> one{3.0}, two{1, 3}, three{0, 1, 2}, a{1, 2};
    CHECK(vandermonde(one) == 1.0);
    CHECK(vandermonde(two) == 2.0);
    CHECK(vandermonde(three) == 2.0);
    CHECK(vandermonde_alpha(a, 0.0) == 3.0);
}

TEST_CASE("normalization constants") {
    CHECK(constants(1).c1 == doctest::Approx(std::sqrt(2 * kPi)).epsilon(1e-14));
    CHECK(constants(2).c1 == doctest::Approx(2 * kPi).epsilon(1e-14));
    CHECK(constants(2).c2 == doctest::Approx(2 * std::sqrt(kPi)).epsilon(1e-14));
    CHECK(constants(1, 0.0).c_nu == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(constants(1, 0.7).c_nu == doctest::Approx(std::pow(2.0, 0.7) * std::tgamma(1.7)).epsilon(1e-13));
}

TEST_CASE("bridge to GOE") {
    auto x = A({-0.4, 0.3}), y = A({-0.8, 1.2});
    CHECK(g_NT(0.2, x, 1.0, y, 1.0).value == doctest::Approx(f_N(0.8, y, x) / survival_N(0.8, x).value).epsilon(1e-12));
    CHECK(g_NT_origin(0.4, A({0.7}), 1.0).value == doctest::Approx(dens::bm_density(0.4, 0.7, 0)).epsilon(1e-12));
    const double T = 1.0;
    for (auto yy : {A({-0.8, 1.2}), A({0.1, 0.3})}) {
        double h = yy[1] - yy[0];
        double expect = std::pow(T, 0.5) * std::pow(T, -2.0) / constants(2).c2 * h *
                        std::exp(-(yy[0] * yy[0] + yy[1] * yy[1]) / (2 * T));
        CHECK(g_NT_origin(T, yy, T).value == doctest::Approx(expect).epsilon(1e-12));
    }
    double mass = ordered2([](double a, double b) { return g_NT_origin(0.5, A({a, b}), 1.0).value; }, -9, 9);
    CHECK(std::abs(mass - 1.0) < 1e-6);
}

TEST_CASE("noncolliding brownian motion") {
    CHECK(p_N_origin(0.6, A({0.4})) == doctest::Approx(dens::bm_density(0.6, 0.4, 0)).epsilon(1e-14));
    double mass = ordered2([](double a, double b) { return p_N_origin(1.0, A({a, b})); }, -10, 10);
    CHECK(std::abs(mass - 1.0) < 1e-6);
    // p_2 from the origin propagated by p_2
    const double s = 0.4, t = 1.0;
    auto y = A({-0.3, 0.8});
    double ck = ordered2([&](double a, double b) { auto z = A({a, b}); return p_N_origin(s, z) * p_N(t - s, y, z); }, -9, 9);
    CHECK(std::abs(ck - p_N_origin(t, y)) < 1e-5);
}

TEST_CASE("imhof ratio") {
    CHECK(imhof_ratio(0.4, A({0.3}), 1.0).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(imhof_ratio(1.0, A({-1, 1}), 1.0).value == doctest::Approx(std::sqrt(kPi) / 2).epsilon(1e-10));
    CHECK(imhof_limit(A({-1, 1}), 1.0) == doctest::Approx(0.886227).epsilon(1e-6));
}

TEST_CASE("noncolliding bessel") {
    CHECK(f_N_nu(0.3, 0.9, C({1.2}), C({0.5})) == doctest::Approx(dens::bessel_density(0.3, 0.9, 1.2, 0.5)).epsilon(1e-12));
    RngStream r(11, 0);
    for (int k = 0; k < 100; ++k) {
        std::vector<double> x(2), y(2);
        for (auto& v : x) v = 0.05 + std::abs(r.gaussian());
        for (auto& v : y) v = 0.05 + std::abs(r.gaussian());
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        auto cx = validate_chamber(x, Chamber::C), cy = validate_chamber(y, Chamber::C);
        const double t = 0.3 + r.uniform();
        double a = km_density(bessel_transition(0.5), 0.0, cx, t, cy), b = f_N_nu(0.5, t, cy, cx);
        CHECK(std::abs(a - b) <= 1e-10 * std::abs(b));
    }
    CHECK(p_N_nu_origin(0.5, 0.7, C({0.9})) == doctest::Approx(dens::bessel3_density_origin(0.7, 0.9)).epsilon(1e-12));
    double mass = ordered2([](double a, double b) { return a <= 0 ? 0.0 : p_N_nu_origin(0.5, 1.0, C({a, b})); }, 0.0, 12);
    CHECK(std::abs(mass - 1.0) < 1e-6);
    const double e = 1e-3;
    auto x = C({e, 2 * e}), y = C({0.5, 1.3});
    CHECK(f_N_nu(0.5, 1.0, y, x) / f_N_nu_asymptotic(0.5, 1.0, y, x) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("generalized meander system") {
    dens::DensityParams p{0.5, 0.0, 1.0};
    auto x = C({0.4, 0.9}), y = C({0.3, 1.5});
    Estimate g = g_NT_nu_kappa(p, 0.2, x, 0.6, y);
    double expect = f_N_nu(0.5, 0.4, y, x) * survival_nu_kappa(p, 0.4, y).value / survival_nu_kappa(p, 0.8, x).value;
    CHECK(g.value == doctest::Approx(expect).epsilon(1e-8));
    dens::DensityParams q{0.8, 1.0, 1.0};
    CHECK(g_NT_nu_kappa(q, 0.1, C({0.6}), 0.5, C({0.9})).value ==
          doctest::Approx(dens::gen_meander_density(q, 0.1, 0.6, 0.5, 0.9)).epsilon(1e-8));
}
