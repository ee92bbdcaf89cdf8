#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "noncollide/core.hpp"

namespace noncollide::ens {

enum class EnsembleTag {
    GUE,
    GOE,
    GSE,
    LaguerreProcess,
    WishartProcess,
    ClassC,
    ClassD,
    GUEtoGOEBridge,
    BetaTridiagonal,
    Ginibre
};

std::string to_string(EnsembleTag tag);
// accepts the CLI spellings: gue goe gse laguerre wishart classc classd bridge tridiagonal ginibre
EnsembleTag parse_tag(const std::string& name);

struct EnsembleKind {
    EnsembleTag tag = EnsembleTag::GUE;
    int n = 1;
    std::optional<double> nu;       // Laguerre / Wishart
    std::optional<double> beta;     // BetaTridiagonal
    std::optional<double> horizon;  // GUEtoGOEBridge

    static EnsembleKind make(EnsembleTag tag, int n);
    static EnsembleKind laguerre(int n, double nu);
    static EnsembleKind wishart(int n, int nu);
    static EnsembleKind tridiagonal(int n, double beta);
    static EnsembleKind bridge(int n, double horizon);

    void validate() const;
    // rows of the sampled matrix (2N for the sigma-tensor kinds)
    int dim() const;
    bool complex_entries() const;
    // t is ignored for these (time normalized to 1)
    bool static_only() const;
};

struct MatrixSample {
    EnsembleKind kind;
    double time = 0.0;
    Eigen::MatrixXcd entries;
};

struct MatrixPath {
    EnsembleKind kind;
    TimeGrid grid;
    std::vector<MatrixSample> samples;
};

MatrixSample sample_matrix(const EnsembleKind& kind, double t, RngStream& stream);
MatrixPath sample_path(const EnsembleKind& kind, const TimeGrid& grid, RngStream& stream);

// Ascending eigenvalues of a Hermitian-structured sample (every kind but Ginibre).
std::vector<double> eigenvalues(const MatrixSample& m);

struct EigenDecomposition {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
};
EigenDecomposition eigen_decomposition(const MatrixSample& m);

// Particle positions carried by the sample: N eigenvalues for GUE/GOE/bridge/
// tridiagonal, pair-collapsed values for GSE, the nonnegative half for
// class C/D, and the eigenvalues of L*L / W^T W for Laguerre/Wishart.
std::vector<double> particles(const MatrixSample& m);
// sqrt of the Laguerre/Wishart eigenvalues (the noncolliding Bessel positions)
std::vector<double> radii(const MatrixSample& m);

std::vector<std::complex<double>> complex_eigenvalues(const MatrixSample& m);

// g^GUE, g^GOE, g^GSE
double eigen_density_exact(EnsembleTag tag, const OrderedConfiguration& x, double t);
double log_eigen_density_exact(EnsembleTag tag, std::span<const double> x, double t);

Eigen::MatrixXcd haar_unitary(int n, RngStream& stream);

struct HarishChandraReport {
    double lhs_mc = 0.0;
    double lhs_stderr = 0.0;
    double rhs_exact = 0.0;
    std::size_t n_mc = 0;
};

double harish_chandra_rhs(const OrderedConfiguration& x, const OrderedConfiguration& y, double sigma);
HarishChandraReport harish_chandra_check(const OrderedConfiguration& x, const OrderedConfiguration& y, double sigma,
                                         std::size_t n_mc, RngStream& stream, unsigned threads = 0);

void write_matrix_dump(std::ostream& os, const MatrixSample& m, std::uint64_t seed, std::uint64_t stream);

}  // namespace noncollide::ens
