#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "noncollide/sde.hpp"
#include "noncollide/statistics.hpp"

using namespace noncollide;
using namespace noncollide::sde;

TEST_CASE("one dyson particle is a brownian motion") {
    const std::vector<double> x0{0.0};
    Eigen::MatrixXd end = terminal_positions(System::dyson(2.0), x0, 1.0, 10000, RngStream(0, 1), 1e-2, 1);
    std::vector<double> sq(std::size_t(end.rows()));
    for (Eigen::Index i = 0; i < end.rows(); ++i) sq[std::size_t(i)] = end(i, 0) * end(i, 0);
    experiments::MeanStat m = experiments::mean_and_stderr(sq);
    CHECK(std::abs(m.mean - 1.0) <= 3 * m.std_error);
}

TEST_CASE("three-dimensional bessel second moment from the origin") {
    const std::vector<double> x0{0.0};
    Eigen::MatrixXd end = terminal_positions(System::bessel(0.5), x0, 0.7, 10000, RngStream(0, 2), 1e-3, 1);
    std::vector<double> sq(std::size_t(end.rows()));
    for (Eigen::Index i = 0; i < end.rows(); ++i) sq[std::size_t(i)] = end(i, 0) * end(i, 0);
    experiments::MeanStat m = experiments::mean_and_stderr(sq);
    CHECK(std::abs(m.mean - 2.1) <= 3 * m.std_error);
}

TEST_CASE("ordering and positivity hold along paths") {
    RngStream r(1, 3);
    const TimeGrid grid = TimeGrid::uniform(1.0, 50);
    for (double beta : {1.0, 2.0, 4.0}) {
        for (int p = 0; p < 30; ++p) {
            SdeRun run = simulate_dyson(beta, std::vector<double>(4, 0.0), grid, r, 1e-3);
            for (Eigen::Index k = 0; k < run.paths.rows(); ++k)
                for (Eigen::Index j = 0; j + 1 < run.paths.cols(); ++j) CHECK(run.paths(k, j) < run.paths(k, j + 1));
        }
    }
    for (double nu : {-0.5, 0.0, 1.0}) {
        for (int p = 0; p < 30; ++p) {
            SdeRun run = simulate_bessel_system(nu, std::vector<double>(3, 0.0), grid, r, 1e-3);
            for (Eigen::Index k = 0; k < run.paths.rows(); ++k) {
                CHECK(run.paths(k, 0) >= 0.0);
                for (Eigen::Index j = 0; j + 1 < run.paths.cols(); ++j) CHECK(run.paths(k, j) < run.paths(k, j + 1));
            }
        }
    }
}

TEST_CASE("explicit starts and validation") {
    RngStream r(2, 4);
    const std::vector<double> x0{-1.0, 0.0, 1.0};
    SdeRun run = simulate_dyson(2.0, x0, TimeGrid({0.1, 0.2}), r, 1e-3);
    CHECK(run.paths.rows() == 2);
    CHECK(run.step_stats.accepted >= 200);
    const std::vector<double> bad{1.0, 0.0};
    CHECK_THROWS_AS(simulate_dyson(2.0, bad, TimeGrid({1.0}), r), ChamberViolation);
    CHECK_THROWS_AS(simulate_dyson(0.5, x0, TimeGrid({1.0}), r), BetaOutOfRange);
    const std::vector<double> pos{0.5, 1.0};
    CHECK_THROWS_AS(simulate_bessel_system(-0.7, pos, TimeGrid({1.0}), r), NuOutOfRange);
}

TEST_CASE("same stream gives the same path") {
    const std::vector<double> x0(2, 0.0);
    RngStream a(9, 9), b(9, 9);
    SdeRun ra = simulate_dyson(2.0, x0, TimeGrid::uniform(0.5, 5), a);
    SdeRun rb = simulate_dyson(2.0, x0, TimeGrid::uniform(0.5, 5), b);
    CHECK(ra.paths == rb.paths);
    Eigen::MatrixXd t1 = terminal_positions(System::dyson(2.0), x0, 0.3, 3000, RngStream(4, 4), 1e-3, 1);
    Eigen::MatrixXd t3 = terminal_positions(System::dyson(2.0), x0, 0.3, 3000, RngStream(4, 4), 1e-3, 3);
    CHECK(t1 == t3);
}

TEST_CASE("path csv") {
    RngStream r(3, 5);
    SdeRun run = simulate_bessel_system(0.0, std::vector<double>{0.5, 1.0}, TimeGrid::uniform(0.1, 2), r);
    std::ostringstream os;
    write_path_csv(os, run, 3, 5, 1e-3);
    const std::string s = os.str();
    CHECK(s.rfind("# system=bessel", 0) == 0);
    CHECK(s.find("time,particle_index,position\n") != std::string::npos);
}
