#include "noncollide/sde.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "noncollide/ensembles.hpp"
#include "noncollide/parallel.hpp"

namespace noncollide::sde {

namespace {

bool all_zero(std::span<const double> x) {
    return std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; });
}

void drift(const System& sys, const std::vector<double>& x, std::vector<double>& out) {
    const std::size_t n = x.size();
    std::fill(out.begin(), out.end(), 0.0);
    if (sys.kind == SystemKind::Dyson) {
        const double c = 0.5 * sys.param;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                double v = c / (x[i] - x[j]);
                out[i] += v;
                out[j] -= v;
            }
        return;
    }
    const double a = sys.param + 0.5;
    for (std::size_t i = 0; i < n; ++i) {
        if (a != 0.0) out[i] += a / x[i];
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) out[i] += 2.0 * x[i] / (x[i] * x[i] - x[j] * x[j]);
    }
}

bool admissible(const System& sys, const std::vector<double>& x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    if (sys.kind == SystemKind::BesselSystem && !(x[0] > 0.0)) return false;
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i - 1] < x[i])) return false;
    return true;
}

// A state so close to a collision (or to 0) that the drift at the floor step
// would already carry a particle past half the gap: the next step could not
// be taken at any allowed size.  Proposals landing there are rejected too.
bool stiff(const System& sys, const std::vector<double>& x, std::vector<double>& b, double floor) {
    drift(sys, x, b);
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < x.size(); ++i) gap = std::min(gap, x[i] - x[i - 1]);
    if (sys.kind == SystemKind::BesselSystem && sys.param != -0.5) gap = std::min(gap, x[0]);
    for (double v : b)
        if (std::abs(v) * floor > 0.5 * gap) return true;
    return false;
}

std::vector<double> bootstrap(const System& sys, int n, double t, RngStream& rng) {
    using ens::EnsembleKind;
    using ens::EnsembleTag;
    if (sys.kind == SystemKind::BesselSystem) return ens::radii(ens::sample_matrix(EnsembleKind::laguerre(n, sys.param), t, rng));
    const double beta = sys.param;
    if (beta == 2.0) return ens::particles(ens::sample_matrix(EnsembleKind::make(EnsembleTag::GUE, n), t, rng));
    if (beta == 1.0) return ens::particles(ens::sample_matrix(EnsembleKind::make(EnsembleTag::GOE, n), t, rng));
    if (beta == 4.0 && n >= 2) return ens::particles(ens::sample_matrix(EnsembleKind::make(EnsembleTag::GSE, n), t, rng));
    std::vector<double> v = ens::particles(ens::sample_matrix(EnsembleKind::tridiagonal(n, beta), 1.0, rng));
    for (double& e : v) e *= std::sqrt(t);
    return v;
}

void check_system(const System& sys) {
    if (sys.kind == SystemKind::Dyson) {
        if (!(sys.param >= 1.0)) throw BetaOutOfRange("Dyson model needs beta >= 1");
    } else if (!(sys.param >= -0.5)) {
        throw NuOutOfRange("Bessel system SDE needs nu >= -1/2");
    }
}

}  // namespace

SdeRun simulate(const System& sys, std::span<const double> x0, const TimeGrid& grid, RngStream& rng, double dt_max) {
    check_system(sys);
    if (x0.empty()) throw DomainError("empty initial configuration");
    if (!(dt_max > 0.0)) throw DomainError("dt_max must be positive");
    const bool zero_start = all_zero(x0);
    if (!zero_start) validate_chamber(x0, sys.kind == SystemKind::Dyson ? Chamber::A : Chamber::C);
    const int n = int(x0.size());

    SdeRun run;
    run.system = sys;
    run.x0.assign(x0.begin(), x0.end());
    run.grid = grid;
    run.paths.resize(Eigen::Index(grid.size()), n);
    run.step_stats.smallest_step = dt_max;

    const bool reflect = sys.kind == SystemKind::BesselSystem && sys.param == -0.5;
    const double floor = dt_max / 1024.0;
    std::vector<double> x(run.x0), prop(n), b(n), bp(n);
    double now = 0.0;
    bool started = !zero_start;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double target = grid[k];
        if (!started) {
            if (target > 0.0) {
                x = bootstrap(sys, n, target, rng);
                now = target;
                started = true;
            }
        }
        while (started && now < target) {
            double h = std::min(dt_max, target - now);
            drift(sys, x, b);
            for (;;) {
                const double sd = std::sqrt(h);
                for (int i = 0; i < n; ++i) prop[i] = x[i] + b[i] * h + sd * rng.gaussian();
                if (reflect) {
                    for (double& v : prop) v = std::abs(v);
                    std::sort(prop.begin(), prop.end());
                }
                if (admissible(sys, prop) && !stiff(sys, prop, bp, floor)) break;
                ++run.step_stats.rejected;
                h *= 0.5;
                if (h < floor) throw StepFloorReached("step halved below dt_max/2^10 near a collision");
            }
            run.step_stats.smallest_step = std::min(run.step_stats.smallest_step, h);
            ++run.step_stats.accepted;
            x.swap(prop);
            // land exactly on the output time
            now = (target - now - h <= 1e-15 * std::max(1.0, target)) ? target : now + h;
        }
        for (int i = 0; i < n; ++i) run.paths(Eigen::Index(k), i) = x[i];
    }
    return run;
}

SdeRun simulate_dyson(double beta, std::span<const double> x0, const TimeGrid& grid, RngStream& stream, double dt_max) {
    return simulate(System::dyson(beta), x0, grid, stream, dt_max);
}

SdeRun simulate_bessel_system(double nu, std::span<const double> x0, const TimeGrid& grid, RngStream& stream,
                              double dt_max) {
    return simulate(System::bessel(nu), x0, grid, stream, dt_max);
}

Eigen::MatrixXd terminal_positions(const System& sys, std::span<const double> x0, double t, std::size_t n_paths,
                                   const RngStream& stream, double dt_max, unsigned threads) {
    if (!(t > 0.0)) throw NonPositiveTime("terminal_positions needs t > 0");
    const int n = int(x0.size());
    Eigen::MatrixXd out(Eigen::Index(n_paths), n);
    const TimeGrid grid({t});
    for_each_block(block_count(n_paths), threads, [&](std::size_t blk) {
        RngStream rng = stream.split(blk);
        const std::size_t lo = blk * kBlockSize, hi = std::min(n_paths, lo + kBlockSize);
        for (std::size_t p = lo; p < hi; ++p) out.row(Eigen::Index(p)) = simulate(sys, x0, grid, rng, dt_max).paths.row(0);
    });
    return out;
}

void write_path_csv(std::ostream& os, const SdeRun& run, std::uint64_t seed, std::uint64_t stream_id, double dt_max) {
    char buf[64];
    os << "# system=" << (run.system.kind == SystemKind::Dyson ? "dyson" : "bessel");
    std::snprintf(buf, sizeof buf, "%.17g", run.system.param);
    os << (run.system.kind == SystemKind::Dyson ? ",beta=" : ",nu=") << buf;
    os << ",N=" << run.x0.size();
    std::snprintf(buf, sizeof buf, "%.17g", dt_max);
    os << ",dt_max=" << buf << ",seed=" << seed << ",stream=" << stream_id;
    os << ",accepted=" << run.step_stats.accepted << ",rejected=" << run.step_stats.rejected << '\n';
    os << "# x0=";
    for (std::size_t i = 0; i < run.x0.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", run.x0[i]);
        os << (i ? ";" : "") << buf;
    }
    os << "\ntime,particle_index,position\n";
    for (Eigen::Index k = 0; k < run.paths.rows(); ++k)
        for (Eigen::Index i = 0; i < run.paths.cols(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", run.grid[std::size_t(k)]);
            os << buf << ',' << i << ',';
            std::snprintf(buf, sizeof buf, "%.17g", run.paths(k, i));
            os << buf << '\n';
        }
}

}  // namespace noncollide::sde
