#pragma once

#include <functional>
#include <span>
#include <vector>

namespace noncollide::experiments {

// A CDF on [lo, hi] tabulated once and then interpolated.  Built either from
// a density (Simpson per cell, cubic Hermite in between) or from CDF values
// directly (linear in between).
class TabulatedCdf {
public:
    // grading > 1 packs nodes toward lo as lo + (hi - lo) (i / cells)^grading,
    // for densities with a power singularity there
    static TabulatedCdf from_density(const std::function<double(double)>& density, double lo, double hi, int cells,
                                     double grading = 1.0);
    static TabulatedCdf from_cdf(const std::function<double(double)>& cdf, double lo, double hi, int cells);

    double cdf(double x) const;
    double quantile(double p) const;
    // total mass seen on [lo, hi] before normalization (density route)
    double mass() const { return mass_; }
    double lo() const { return x_.front(); }
    double hi() const { return x_.back(); }
    // sup |F - G| over the union of both grids
    double sup_distance(const TabulatedCdf& other) const;

private:
    std::vector<double> x_, f_, d_;
    bool hermite_ = false;
    double mass_ = 1.0;
};

using LogJoint = std::function<double(std::span<const double>)>;

// One-point density of the unordered cloud, (1/N) Σ_k marginal of y_k,
// integrated out of an ordered-chamber joint density for N <= 3.  `lower` is
// the chamber floor (-inf for A, 0 for C) and `reach` the truncation length.
std::function<double(double)> cloud_density_from_joint(LogJoint log_joint, int N, double lower, double reach);

// log density of the β = 1, 2, 4 Gaussian ensembles at time t (g^GOE, p_N_origin, g^GSE);
// other β > 0 up to the normalizing constant
LogJoint gaussian_ensemble_log_joint(int N, double beta, double t);

}  // namespace noncollide::experiments
