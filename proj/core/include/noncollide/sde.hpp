#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "noncollide/core.hpp"

namespace noncollide::sde {

enum class SystemKind { Dyson, BesselSystem };

struct System {
    SystemKind kind = SystemKind::Dyson;
    double param = 2.0;  // beta for Dyson, nu for the Bessel system

    static System dyson(double beta) { return {SystemKind::Dyson, beta}; }
    static System bessel(double nu) { return {SystemKind::BesselSystem, nu}; }
};

struct StepStats {
    std::uint64_t accepted = 0;
    std::uint64_t rejected = 0;
    double smallest_step = 0.0;
};

struct SdeRun {
    System system;
    std::vector<double> x0;
    TimeGrid grid;
    Eigen::MatrixXd paths;  // row k = positions at grid[k]
    StepStats step_stats;
};

// x0 is either a point of the open chamber (A for Dyson, C for the Bessel
// system) or all zeros.  A zero start is replaced at the first positive grid
// time by an exact ensemble draw.
SdeRun simulate_dyson(double beta, std::span<const double> x0, const TimeGrid& grid, RngStream& stream,
                      double dt_max = 1e-3);
SdeRun simulate_bessel_system(double nu, std::span<const double> x0, const TimeGrid& grid, RngStream& stream,
                              double dt_max = 1e-3);
SdeRun simulate(const System& sys, std::span<const double> x0, const TimeGrid& grid, RngStream& stream,
                double dt_max = 1e-3);

// Positions at time t for n_paths independent paths (row per path).  Path p
// uses stream.split(p / kBlockSize) so the result is thread-count independent.
Eigen::MatrixXd terminal_positions(const System& sys, std::span<const double> x0, double t, std::size_t n_paths,
                                   const RngStream& stream, double dt_max = 1e-3, unsigned threads = 0);

void write_path_csv(std::ostream& os, const SdeRun& run, std::uint64_t seed, std::uint64_t stream_id, double dt_max);

}  // namespace noncollide::sde
