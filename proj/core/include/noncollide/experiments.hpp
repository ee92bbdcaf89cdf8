#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "noncollide/ensembles.hpp"
#include "noncollide/marginals.hpp"
#include "noncollide/report.hpp"
#include "noncollide/sde.hpp"
#include "noncollide/statistics.hpp"

namespace noncollide::experiments {

// n_samples particle configurations (row per sample) drawn in blocks of
// kBlockSize, block b from stream.split(b).
// With radii = true the Laguerre/Wishart rows hold square roots of the eigenvalues.
Eigen::MatrixXd sample_particles(const ens::EnsembleKind& kind, double t, std::size_t n_samples, const RngStream& stream,
                                 unsigned threads = 0, bool radii = false);
// Same for path samplers: one matrix per grid time.
std::vector<Eigen::MatrixXd> sample_particle_paths(const ens::EnsembleKind& kind, const TimeGrid& grid,
                                                   std::size_t n_samples, const RngStream& stream, unsigned threads = 0,
                                                   bool radii = false);
// SDE clouds at the given times from the zero start (bootstrapped at times[0]/100).
std::vector<Eigen::MatrixXd> sde_particle_paths(const sde::System& sys, int N, const std::vector<double>& times,
                                                std::size_t n_paths, const RngStream& stream, double dt_max,
                                                unsigned threads = 0);

// sorted pooled values
std::vector<double> pooled(const Eigen::MatrixXd& m);
std::vector<double> column(const Eigen::MatrixXd& m, Eigen::Index c);

// Cloud CDF of the exact eigenvalue law (N <= 3 from the joint density; GUE
// beyond that from the Hermite kernel diagonal).
TabulatedCdf exact_cloud_cdf(ens::EnsembleTag tag, int N, double t, double beta = 2.0);
// Cloud of the noncolliding Bessel process from the origin (radii of the Laguerre process).
TabulatedCdf bessel_cloud_cdf_joint(int N, double nu, double t);
TabulatedCdf hermite_cloud_cdf(int N, double t);
TabulatedCdf laguerre_cloud_cdf(int N, double nu, double t);
TabulatedCdf bridge_cloud_cdf(int N, double t, double T);

void add_ks(ExperimentReport& r, const std::string& name, const KsResult& ks);
void add_chi2(ExperimentReport& r, const std::string& name, const std::vector<double>& sample, const TabulatedCdf& ref,
              int bins = 20);

ExperimentReport run_marginal_check(const ens::EnsembleKind& kind, double t, std::size_t n_samples, std::uint64_t seed,
                                    std::uint64_t stream, unsigned threads = 0);

enum class Route { Sde, Matrix, KernelAnalytic };
Route parse_route(const std::string& name);
std::string to_string(Route r);

struct EquivalenceParams {
    sde::System system = sde::System::dyson(2.0);
    int n = 2;
    std::vector<double> times{1.0};
    std::size_t n_samples = 10000;
    double dt_max = 1e-3;
};

ExperimentReport run_equivalence_check(Route a, Route b, const EquivalenceParams& p, std::uint64_t seed,
                                       std::uint64_t stream, unsigned threads = 0);

ExperimentReport run_bridge_check(int N, double T, const std::vector<double>& times, std::size_t n_samples,
                                  std::uint64_t seed, std::uint64_t stream, unsigned threads = 0);

}  // namespace noncollide::experiments
