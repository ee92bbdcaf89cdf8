#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "noncollide/ensembles.hpp"
#include "noncollide/karlin_mcgregor.hpp"
#include "noncollide/quadrature.hpp"
#include "noncollide/statistics.hpp"

using namespace noncollide;
using namespace noncollide::ens;

namespace {

double spectral_norm(const MatrixSample& m) {
    std::vector<double> ev = eigenvalues(m);
    return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

}  // namespace

TEST_CASE("tag parsing") {
    CHECK(parse_tag("gue") == EnsembleTag::GUE);
    CHECK(parse_tag("classd") == EnsembleTag::ClassD);
    CHECK_THROWS_AS(parse_tag("cue"), DomainError);
    CHECK_THROWS_AS(EnsembleKind::laguerre(2, -1.5).validate(), DomainError);
}

TEST_CASE("GUE trace moment") {
    RngStream r(0, 40);
    const int n = 100000;
    std::vector<double> tr(n);
    for (int i = 0; i < n; ++i) {
        MatrixSample m = sample_matrix(EnsembleKind::make(EnsembleTag::GUE, 2), 1.0, r);
        tr[std::size_t(i)] = (m.entries * m.entries).trace().real();
    }
    experiments::MeanStat s = experiments::mean_and_stderr(tr);
    CHECK(std::abs(s.mean - 4.0) <= 3 * s.std_error);
}

TEST_CASE("structural spectra") {
    RngStream r(1, 41);
    for (int i = 0; i < 200; ++i) {
        MatrixSample gse = sample_matrix(EnsembleKind::make(EnsembleTag::GSE, 2), 1.0, r);
        REQUIRE(gse.entries.rows() == 4);
        std::vector<double> ev = eigenvalues(gse);
        const double tol = 1e-9 * spectral_norm(gse);
        CHECK(std::abs(ev[1] - ev[0]) <= tol);
        CHECK(std::abs(ev[3] - ev[2]) <= tol);

        MatrixSample d = sample_matrix(EnsembleKind::make(EnsembleTag::ClassD, 2), 1.0, r);
        std::vector<double> dv = eigenvalues(d);
        for (std::size_t k = 0; k < dv.size(); ++k) CHECK(std::abs(dv[k] + dv[dv.size() - 1 - k]) <= 1e-9 * spectral_norm(d));

        MatrixSample c = sample_matrix(EnsembleKind::make(EnsembleTag::ClassC, 2), 1.0, r);
        std::vector<double> cv = eigenvalues(c);
        for (std::size_t k = 0; k < cv.size(); ++k) CHECK(std::abs(cv[k] + cv[cv.size() - 1 - k]) <= 1e-9 * spectral_norm(c));

        MatrixSample w = sample_matrix(EnsembleKind::wishart(2, 1), 1.0, r);
        for (double v : particles(w)) CHECK(v >= -1e-10 * spectral_norm(w));
        MatrixSample l = sample_matrix(EnsembleKind::laguerre(3, 0.5), 1.0, r);
        for (double v : particles(l)) CHECK(v >= -1e-10 * spectral_norm(l));
    }
}

TEST_CASE("GUE to GOE bridge paths") {
    RngStream r(2, 42);
    MatrixPath p = sample_path(EnsembleKind::bridge(3, 1.0), TimeGrid({0.3, 0.7, 1.0}, 1.0), r);
    REQUIRE(p.samples.size() == 3);
    CHECK(p.samples.back().entries.imag().cwiseAbs().maxCoeff() == 0.0);
    CHECK(p.samples.front().entries.imag().cwiseAbs().maxCoeff() > 0.0);
    CHECK_THROWS_AS(sample_path(EnsembleKind::bridge(3, 1.0), TimeGrid({0.3, 0.7}, 2.0), r), DomainError);
}

TEST_CASE("GUE path increments are independent of the past") {
    RngStream r(3, 43);
    const int n = 20000;
    std::vector<double> a(n), b(n);
    for (int i = 0; i < n; ++i) {
        MatrixPath p = sample_path(EnsembleKind::make(EnsembleTag::GUE, 2), TimeGrid({0.5, 1.0}), r);
        a[std::size_t(i)] = p.samples[0].entries(0, 0).real();
        b[std::size_t(i)] = p.samples[1].entries(0, 0).real() - a[std::size_t(i)];
    }
    double sab = 0.0;
    for (int i = 0; i < n; ++i) sab += a[std::size_t(i)] * b[std::size_t(i)];
    // both pieces have variance 1/2: stderr of the product mean is 1/2 / sqrt(n)
    CHECK(std::abs(sab / n) <= 3 * 0.5 / std::sqrt(double(n)));
}

TEST_CASE("eigenvalues of small matrices") {
    MatrixSample m;
    m.kind = EnsembleKind::make(EnsembleTag::GOE, 3);
    m.entries = Eigen::MatrixXcd::Zero(3, 3);
    m.entries(0, 0) = 2.0;
    m.entries(1, 1) = -1.0;
    m.entries(2, 2) = 0.5;
    CHECK(eigenvalues(m) == std::vector<double>{-1.0, 0.5, 2.0});
    m.kind = EnsembleKind::make(EnsembleTag::GOE, 2);
    m.entries = Eigen::MatrixXcd::Zero(2, 2);
    m.entries(0, 1) = m.entries(1, 0) = 1.0;
    std::vector<double> ev = eigenvalues(m);
    CHECK(ev[0] == doctest::Approx(-1.0));
    CHECK(ev[1] == doctest::Approx(1.0));
    RngStream r(4, 44);
    MatrixSample g = sample_matrix(EnsembleKind::make(EnsembleTag::GUE, 6), 1.0, r);
    std::vector<double> gv = eigenvalues(g);
    double s = 0.0;
    for (double v : gv) s += v;
    CHECK(std::abs(s - g.entries.trace().real()) <= 1e-10 * spectral_norm(g));
    EigenDecomposition e = eigen_decomposition(g);
    for (Eigen::Index k = 0; k < e.values.size(); ++k)
        CHECK((g.entries * e.vectors.col(k) - e.values(k) * e.vectors.col(k)).norm() <= 1e-10 * spectral_norm(g));
}

TEST_CASE("exact eigenvalue densities") {
    auto y1 = validate_chamber({0.7}, Chamber::A);
    CHECK(eigen_density_exact(EnsembleTag::GUE, y1, 0.8) == doctest::Approx(dens::bm_density(0.8, 0.7, 0)).epsilon(1e-14));
    for (auto y : {validate_chamber({-0.4, 1.1}, Chamber::A), validate_chamber({-1, 0.2, 0.9}, Chamber::A)})
        CHECK(eigen_density_exact(EnsembleTag::GUE, y, 1.3) == doctest::Approx(km::p_N_origin(1.3, y)).epsilon(2e-16));
    auto goe = [](double a) {
        return quad::integrate(
            [&](double b) { return eigen_density_exact(EnsembleTag::GOE, validate_chamber({a, b}, Chamber::A), 1.0); }, a, 12);
    };
    quad::Tolerance tol;
    tol.rel = 1e-9;
    CHECK(std::abs(quad::integrate(goe, -12, 12, tol) - 1.0) < 1e-6);
}

TEST_CASE("haar unitaries") {
    RngStream r(5, 45);
    for (int n : {1, 2, 3, 8, 16}) {
        Eigen::MatrixXcd u = haar_unitary(n, r);
        CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12);
    }
    const int n = 100000;
    std::vector<double> m(n), before(n), after(n);
    Eigen::MatrixXcd fixed = haar_unitary(3, r);
    for (int i = 0; i < n; ++i) {
        Eigen::MatrixXcd u = haar_unitary(3, r);
        m[std::size_t(i)] = std::norm(u(0, 0));
        before[std::size_t(i)] = std::abs(u(0, 0));
        after[std::size_t(i)] = std::abs((fixed * haar_unitary(3, r))(0, 0));
    }
    experiments::MeanStat s = experiments::mean_and_stderr(m);
    CHECK(std::abs(s.mean - 1.0 / 3.0) <= 3 * s.std_error);
    std::sort(before.begin(), before.end());
    std::sort(after.begin(), after.end());
    CHECK(experiments::ks_statistic(before, after).pass());
}

TEST_CASE("harish-chandra") {
    RngStream r(6, 46);
    auto x1 = validate_chamber({0.3}, Chamber::A), y1 = validate_chamber({1.4}, Chamber::A);
    HarishChandraReport one = harish_chandra_check(x1, y1, 0.8, 100, r, 1);
    CHECK(one.rhs_exact == doctest::Approx(std::exp(-1.21 / (2 * 0.64))).epsilon(1e-14));
    CHECK(one.lhs_mc == doctest::Approx(one.rhs_exact).epsilon(1e-14));
    auto x = validate_chamber({0, 1}, Chamber::A), y = validate_chamber({0.5, 2}, Chamber::A);
    CHECK(harish_chandra_rhs(x, y, 1.0) == doctest::Approx(harish_chandra_rhs(y, x, 1.0)).epsilon(1e-12));
    HarishChandraReport two = harish_chandra_check(x, y, 1.0, 200000, r, 2);
    CHECK(std::abs(two.lhs_mc - two.rhs_exact) <= 3 * two.lhs_stderr);
}

TEST_CASE("ginibre mean squared modulus") {
    RngStream r(7, 47);
    const int n = 3000, N = 4;
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
        std::vector<std::complex<double>> z = complex_eigenvalues(sample_matrix(EnsembleKind::make(EnsembleTag::Ginibre, N), 1.0, r));
        double s = 0.0;
        for (auto c : z) s += std::norm(c);
        v[std::size_t(i)] = s / N;
    }
    experiments::MeanStat s = experiments::mean_and_stderr(v);
    CHECK(std::abs(s.mean - (N + 1) / 2.0) <= 3 * s.std_error);
}

TEST_CASE("matrix dump") {
    RngStream r(8, 48);
    std::ostringstream os;
    write_matrix_dump(os, sample_matrix(EnsembleKind::make(EnsembleTag::GOE, 2), 1.0, r), 8, 48);
    CHECK(os.str().find("goe") != std::string::npos);
}
