#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "noncollide/fredholm.hpp"

using namespace noncollide;
using namespace noncollide::fred;

namespace {

double phi_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

TEST_CASE("rank-one and trivial windows") {
    kern::ExtendedKernel rank1;
    rank1.family = kern::Family::HermiteN;
    rank1.evaluator = [](double, double x, double, double y) { return kern::hermite_phi(0, x) * kern::hermite_phi(0, y); };
    GapSpec g{rank1, 1.0, 0.0, 30.0};
    CHECK(std::abs(fredholm_det(g) - 0.5) < 1e-9);
    GapSpec empty{kern::ExtendedKernel::hermite(3), 1.0, 0.4, 0.4};
    CHECK(fredholm_det(empty) == 1.0);
}

TEST_CASE("rightmost particle") {
    for (double t : {0.5, 1.0, 2.0})
        for (double a : {-1.5, 0.0, 0.7, 2.0}) CHECK(std::abs(rightmost_cdf(1, t, a) - phi_cdf(a / std::sqrt(t))) < 1e-8);
    double prev = 0.0;
    for (double a = -6.0; a <= 6.0; a += 0.25) {
        double v = rightmost_cdf(3, 1.0, a);
        CHECK(v >= prev - 1e-12);
        prev = v;
    }
    CHECK(rightmost_cdf(3, 1.0, -8.0) < 1e-10);
    CHECK(rightmost_cdf(3, 1.0, 10.0) > 1.0 - 1e-10);
}

TEST_CASE("tracy-widom by the Fredholm route") {
    CHECK(1.0 - tracy_widom_fredholm(8.0) < 1e-10);
    CHECK(std::abs(tracy_widom_fredholm(0.0) - 0.969372828355264) < 1e-8);
    DetResult r = tracy_widom_fredholm_report(-2.0);
    CHECK(r.change < 1e-10);
    double prev = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double a = -6.0 + 10.0 * i / 199.0;
        double v = tracy_widom_fredholm(a);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("hastings-mcleod solution") {
    PainleveSolution s = painleve2_solve(8.0, -6.0);
    CHECK(s.q.front() == kern::airy_ai(8.0));
    for (double q : s.q) CHECK(q > 0.0);
    std::vector<double> grid{8.0, 0.0, -2.0};
    std::vector<double> a = painleve2_hastings_mcleod(grid, 1e-3), b = painleve2_hastings_mcleod(grid, 2.5e-4);
    CHECK(std::abs(a[2] - b[2]) < 1e-8);
}

TEST_CASE("tracy-widom by the Painleve route") {
    CHECK(1.0 - tracy_widom_painleve(8.0) < 1e-10);
    for (double a : {-5.0, -3.0, -1.0, 0.0, 1.0, 2.0}) CHECK(std::abs(tracy_widom_painleve(a) - tracy_widom_fredholm(a)) <= 1e-6);
    double prev = 0.0;
    for (double a = -6.0; a <= 4.0; a += 0.1) {
        double v = tracy_widom_painleve(a);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("sine gap") {
    CHECK_THROWS_AS(sine_gap(0.0), DomainError);
    CHECK(1.0 - sine_gap(1e-9) < 1e-8);
    const double a = 1e-2;
    CHECK(std::abs(sine_gap(a) - (1 - 2 * a / std::numbers::pi)) < 1e-7);
    double prev = 1.0;
    for (double s = 0.1; s <= 3.0; s += 0.1) {
        double v = sine_gap(s);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("gap spec validation") {
    GapSpec bad{kern::ExtendedKernel::hermite(2), 1.0, 1.0, 0.0};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    GapSpec neg{kern::ExtendedKernel::laguerre(2, 0.5), 1.0, -1.0, 1.0};
    CHECK_THROWS_AS(neg.validate(), DomainError);
}
