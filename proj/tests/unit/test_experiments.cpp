#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "noncollide/experiments.hpp"
#include "noncollide/kernels.hpp"
#include "noncollide/suites.hpp"

using namespace noncollide;
using namespace noncollide::experiments;

namespace {

double phi_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

std::vector<double> normals(std::size_t n, std::uint64_t seed) {
    RngStream r(seed, 0);
    std::vector<double> v(n);
    for (auto& x : v) x = r.gaussian();
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("ks statistic") {
    std::vector<double> a = normals(1000, 1);
    CHECK(ks_statistic(a, a).d == 0.0);
    auto ecdf = [&](double x) { return double(std::upper_bound(a.begin(), a.end(), x) - a.begin()) / a.size(); };
    CHECK(ks_statistic(a, ecdf).d <= 1.0 / a.size() + 1e-15);
    std::vector<double> b = normals(10000, 2);
    KsResult k = ks_statistic(b, phi_cdf);
    CHECK(k.critical == doctest::Approx(1.6276 / 100.0).epsilon(1e-3));
    CHECK(k.pass());
    std::vector<double> shifted(b);
    for (auto& x : shifted) x += 0.2;
    CHECK_FALSE(ks_statistic(shifted, phi_cdf).pass());
}

TEST_CASE("chi-square") {
    CHECK(chi_square_critical_1pct(19) == doctest::Approx(36.190869129).epsilon(1e-9));
    std::vector<double> s = normals(20000, 3);
    std::vector<double> edges = equiprobable_edges([](double p) {
        double lo = -10, hi = 10;
        for (int i = 0; i < 100; ++i) {
            double m = 0.5 * (lo + hi);
            (phi_cdf(m) < p ? lo : hi) = m;
        }
        return 0.5 * (lo + hi);
    }, 20);
    CHECK(edges.size() == 19);
    ChiSquareResult c = chi_square(s, edges, phi_cdf);
    CHECK(c.dof == 19);
    CHECK(c.min_expected == doctest::Approx(1000.0));
    CHECK(c.pass());
}

TEST_CASE("tabulated cdf") {
    TabulatedCdf t = TabulatedCdf::from_density([](double x) { return std::exp(-x * x / 2) / std::sqrt(2 * M_PI); }, -9, 9, 400);
    CHECK(std::abs(t.mass() - 1.0) < 1e-10);
    for (double x : {-2.0, 0.0, 0.5, 1.7}) CHECK(std::abs(t.cdf(x) - phi_cdf(x)) < 1e-8);
    CHECK(std::abs(t.quantile(phi_cdf(0.8)) - 0.8) < 1e-7);
    // x^0.2 has an unbounded derivative at 0; grading recovers the accuracy
    auto root = [](double x) { return 1.2 * std::pow(x, 0.2); };
    TabulatedCdf g = TabulatedCdf::from_density(root, 0, 1, 400, 3.0), u = TabulatedCdf::from_density(root, 0, 1, 400);
    CHECK(std::abs(g.mass() - 1.0) < 1e-9);
    CHECK(std::abs(g.mass() - 1.0) < std::abs(u.mass() - 1.0));
    CHECK(std::abs(g.cdf(1e-3) - std::pow(1e-3, 1.2)) < 1e-9);
    // the hermite-kernel cloud and the N <= 3 joint-density cloud are the same law
    TabulatedCdf k = hermite_cloud_cdf(3, 1.0), j = exact_cloud_cdf(ens::EnsembleTag::GUE, 3, 1.0);
    CHECK(k.sup_distance(j) < 1e-7);
}

TEST_CASE("report json round trip") {
    ExperimentReport r;
    r.experiment_id = "x.y";
    r.param("N", 3ll);
    r.param("t", 0.1);
    r.seed = 5;
    r.streams = {1, 2};
    r.check_le("d", 0.1 + 0.2, 0.5);
    r.stat("m", 1.0 / 3.0, 1e-3);
    r.verdict("flag", false);
    ExperimentReport back = report_from_json(to_json(r));
    CHECK(back.experiment_id == r.experiment_id);
    CHECK(back.parameters == r.parameters);
    CHECK(back.streams == r.streams);
    REQUIRE(back.statistics.size() == 2);
    CHECK(back.statistics[0].value == r.statistics[0].value);
    CHECK(back.statistics[1].std_error == r.statistics[1].std_error);
    CHECK_FALSE(back.passed());
    CHECK(to_json(back) == to_json(r));
    std::vector<ExperimentReport> many{r, back};
    std::string doc = to_json(many, "unit", 5, {{"threads", "1"}});
    CHECK(doc.find("\"config\"") != std::string::npos);
    CHECK(reports_from_json(doc).size() == 2);
    CHECK(fmt(0.1) == "0.10000000000000001");
    CHECK(std::stod(fmt(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("marginal and equivalence runners") {
    ExperimentReport m = run_marginal_check(ens::EnsembleKind::make(ens::EnsembleTag::GUE, 2), 1.0, 5000, 0, 900, 1);
    CHECK(m.passed());
    CHECK(m.streams == std::vector<std::uint64_t>{900});
    EquivalenceParams p;
    p.n_samples = 3000;
    ExperimentReport e = run_equivalence_check(Route::Matrix, Route::KernelAnalytic, p, 0, 901, 1);
    CHECK(e.passed());
    CHECK(parse_route("kernel-analytic") == Route::KernelAnalytic);
    CHECK_THROWS_AS(parse_route("nope"), DomainError);
    EquivalenceParams goe;
    goe.system = sde::System::dyson(1.0);
    CHECK_THROWS_AS(run_equivalence_check(Route::Sde, Route::KernelAnalytic, goe, 0, 902, 1), RouteInapplicable);
    CHECK_THROWS_AS(run_equivalence_check(Route::Sde, Route::Sde, p, 0, 902, 1), RouteInapplicable);
}

TEST_CASE("suite registry") {
    const auto& names = suite_names();
    CHECK(std::find(names.begin(), names.end(), "all") != names.end());
    CHECK_THROWS_AS(run_suite("nope", {}), DomainError);
    SuiteOptions o;
    o.threads = 1;
    auto a = run_suite("densities", o), b = run_suite("densities", o);
    CHECK(to_json(a, "densities", 0) == to_json(b, "densities", 0));
    for (const auto& r : a) CHECK(r.passed());
}
