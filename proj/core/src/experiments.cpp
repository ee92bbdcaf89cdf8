#include "noncollide/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "noncollide/fredholm.hpp"
#include "noncollide/karlin_mcgregor.hpp"
#include "noncollide/kernels.hpp"
#include "noncollide/parallel.hpp"

namespace noncollide::experiments {

namespace {

using ens::EnsembleKind;
using ens::EnsembleTag;

std::vector<double> positions(const ens::MatrixSample& m, bool radii) {
    const bool chiral = m.kind.tag == EnsembleTag::LaguerreProcess || m.kind.tag == EnsembleTag::WishartProcess;
    return radii && chiral ? ens::radii(m) : ens::particles(m);
}

double beta_of(EnsembleTag tag, const EnsembleKind& k) {
    switch (tag) {
        case EnsembleTag::GOE: return 1.0;
        case EnsembleTag::GSE: return 4.0;
        case EnsembleTag::BetaTridiagonal: return *k.beta;
        default: return 2.0;
    }
}

double edge(int N, double beta, double t) { return std::sqrt(t) * (std::sqrt(2.0 * beta * N) + 8.0); }

double chiral_edge(int N, double nu, double t) { return std::sqrt(t) * (2.0 * std::sqrt(2.0 * (N + nu + 1.0)) + 8.0); }

constexpr int kCells = 400;

// dense ensemble with the same beta, if there is one
std::optional<EnsembleKind> dense_partner(int N, double beta) {
    if (beta == 1.0) return EnsembleKind::make(EnsembleTag::GOE, N);
    if (beta == 2.0) return EnsembleKind::make(EnsembleTag::GUE, N);
    if (beta == 4.0 && N >= 2) return EnsembleKind::make(EnsembleTag::GSE, N);
    return std::nullopt;
}

std::vector<Eigen::MatrixXd> matrix_clouds(const EnsembleKind& kind, const std::vector<double>& times, std::size_t n,
                                           const RngStream& root, unsigned threads, bool radii) {
    if (!kind.static_only()) return sample_particle_paths(kind, TimeGrid(times, kind.horizon), n, root, threads, radii);
    std::vector<Eigen::MatrixXd> out;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        Eigen::MatrixXd m = sample_particles(kind, t, n, root.split(0x100000 + i), threads, radii);
        if (kind.tag == EnsembleTag::BetaTridiagonal) m *= std::sqrt(t);
        out.push_back(std::move(m));
    }
    return out;
}

std::string kind_label(const EnsembleKind& k) {
    std::string s = ens::to_string(k.tag);
    if (k.beta) s += "(beta=" + label(*k.beta) + ")";
    if (k.nu) s += "(nu=" + label(*k.nu) + ")";
    return s;
}

}  // namespace

Eigen::MatrixXd sample_particles(const EnsembleKind& kind, double t, std::size_t n, const RngStream& stream,
                                 unsigned threads, bool radii) {
    kind.validate();
    Eigen::MatrixXd out(Eigen::Index(n), kind.n);
    for_each_block(block_count(n), threads, [&](std::size_t b) {
        RngStream rng = stream.split(b);
        const std::size_t lo = b * kBlockSize, hi = std::min(n, lo + kBlockSize);
        for (std::size_t i = lo; i < hi; ++i) {
            std::vector<double> p = positions(ens::sample_matrix(kind, t, rng), radii);
            for (int j = 0; j < kind.n; ++j) out(Eigen::Index(i), j) = p[std::size_t(j)];
        }
    });
    return out;
}

std::vector<Eigen::MatrixXd> sample_particle_paths(const EnsembleKind& kind, const TimeGrid& grid, std::size_t n,
                                                   const RngStream& stream, unsigned threads, bool radii) {
    kind.validate();
    std::vector<Eigen::MatrixXd> out(grid.size(), Eigen::MatrixXd(Eigen::Index(n), kind.n));
    for_each_block(block_count(n), threads, [&](std::size_t b) {
        RngStream rng = stream.split(b);
        const std::size_t lo = b * kBlockSize, hi = std::min(n, lo + kBlockSize);
        for (std::size_t i = lo; i < hi; ++i) {
            ens::MatrixPath path = ens::sample_path(kind, grid, rng);
            for (std::size_t k = 0; k < grid.size(); ++k) {
                std::vector<double> p = positions(path.samples[k], radii);
                for (int j = 0; j < kind.n; ++j) out[k](Eigen::Index(i), j) = p[std::size_t(j)];
            }
        }
    });
    return out;
}

std::vector<Eigen::MatrixXd> sde_particle_paths(const sde::System& sys, int N, const std::vector<double>& times,
                                                std::size_t n, const RngStream& stream, double dt_max,
                                                unsigned threads) {
    std::vector<double> g{times.front() / 100.0};
    g.insert(g.end(), times.begin(), times.end());
    const TimeGrid grid(g);
    const std::vector<double> x0(std::size_t(N), 0.0);
    std::vector<Eigen::MatrixXd> out(times.size(), Eigen::MatrixXd(Eigen::Index(n), N));
    for_each_block(block_count(n), threads, [&](std::size_t b) {
        RngStream rng = stream.split(b);
        const std::size_t lo = b * kBlockSize, hi = std::min(n, lo + kBlockSize);
        for (std::size_t i = lo; i < hi; ++i) {
            sde::SdeRun run = sde::simulate(sys, x0, grid, rng, dt_max);
            for (std::size_t k = 0; k < times.size(); ++k) out[k].row(Eigen::Index(i)) = run.paths.row(Eigen::Index(k + 1));
        }
    });
    return out;
}

std::vector<double> pooled(const Eigen::MatrixXd& m) {
    std::vector<double> v(m.data(), m.data() + m.size());
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<double> column(const Eigen::MatrixXd& m, Eigen::Index c) {
    std::vector<double> v(std::size_t(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) v[std::size_t(i)] = m(i, c);
    std::sort(v.begin(), v.end());
    return v;
}

TabulatedCdf hermite_cloud_cdf(int N, double t) {
    const double h = edge(N, 2.0, t);
    return TabulatedCdf::from_density([=](double x) { return kern::kernel_hermite(N, t, x, t, x) / N; }, -h, h, kCells);
}

TabulatedCdf laguerre_cloud_cdf(int N, double nu, double t) {
    return TabulatedCdf::from_density([=](double x) { return kern::kernel_laguerre(N, nu, t, x, t, x) / N; }, 0.0,
                                      chiral_edge(N, nu, t), kCells, nu < 0.5 ? 3.0 : 1.0);
}

TabulatedCdf exact_cloud_cdf(EnsembleTag tag, int N, double t, double beta) {
    if (tag == EnsembleTag::GOE) beta = 1.0;
    if (tag == EnsembleTag::GUE) beta = 2.0;
    if (tag == EnsembleTag::GSE) beta = 4.0;
    const double h = edge(N, beta, t);
    if (N <= 3) {
        auto dens = cloud_density_from_joint(gaussian_ensemble_log_joint(N, beta, t), N,
                                             -std::numeric_limits<double>::infinity(), 2.0 * h);
        return TabulatedCdf::from_density(dens, -h, h, kCells);
    }
    if (beta == 2.0) return hermite_cloud_cdf(N, t);
    throw RouteInapplicable("no exact cloud marginal for this ensemble and N > 3");
}

TabulatedCdf bessel_cloud_cdf_joint(int N, double nu, double t) {
    const double h = chiral_edge(N, nu, t);
    LogJoint lj = [nu, t](std::span<const double> y) { return km::log_p_N_nu_origin(nu, t, y); };
    return TabulatedCdf::from_density(cloud_density_from_joint(lj, N, 0.0, 2.0 * h), 0.0, h, kCells);
}

TabulatedCdf bridge_cloud_cdf(int N, double t, double T) {
    const double h = edge(N, 2.0, t);
    LogJoint lj = [t, T](std::span<const double> y) {
        try {
            Estimate e = km::g_NT_origin(t, validate_chamber(y, Chamber::A), T);
            return e.value > 0.0 ? std::log(e.value) : -std::numeric_limits<double>::infinity();
        } catch (const DomainError&) {
            return -std::numeric_limits<double>::infinity();
        }
    };
    return TabulatedCdf::from_density(cloud_density_from_joint(lj, N, -std::numeric_limits<double>::infinity(), 2.0 * h),
                                      -h, h, kCells);
}

void add_ks(ExperimentReport& r, const std::string& name, const KsResult& ks) {
    r.check_le(name + ".ks_D", ks.d, ks.critical);
}

void add_chi2(ExperimentReport& r, const std::string& name, const std::vector<double>& sample, const TabulatedCdf& ref,
              int bins) {
    std::vector<double> edges = equiprobable_edges([&](double p) { return ref.quantile(p); }, bins);
    ChiSquareResult c = chi_square(sample, edges, [&](double x) { return ref.cdf(x); });
    r.check_le(name + ".chi2", c.statistic, c.critical);
}

ExperimentReport run_marginal_check(const EnsembleKind& kind, double t, std::size_t n, std::uint64_t seed,
                                    std::uint64_t stream, unsigned threads) {
    kind.validate();
    const EnsembleTag tag = kind.tag;
    if (tag != EnsembleTag::GUE && tag != EnsembleTag::GOE && tag != EnsembleTag::GSE && tag != EnsembleTag::BetaTridiagonal)
        throw RouteInapplicable("marginal check runs on gue, goe, gse, tridiagonal");
    const int N = kind.n;
    const double beta = beta_of(tag, kind);
    const double te = tag == EnsembleTag::BetaTridiagonal ? 1.0 : t;
    ExperimentReport r;
    r.experiment_id = "marginal." + ens::to_string(tag) + ".N" + std::to_string(N);
    r.param("kind", kind_label(kind));
    r.param("N", (long long)N);
    r.param("t", te);
    r.param("n_samples", (long long)n);
    r.seed = seed;
    r.streams = {stream};
    const Eigen::MatrixXd x = sample_particles(kind, te, n, RngStream(seed, stream), threads);
    const std::vector<double> cloud = pooled(x);

    bool analytic = N <= 3 || beta == 2.0;
    if (analytic) {
        TabulatedCdf ref = exact_cloud_cdf(tag, N, te, beta);
        r.check_le("reference.mass_error", std::abs(ref.mass() - 1.0), (beta == 1.0 || beta == 2.0 || beta == 4.0) ? 1e-6 : 1e300);
        add_chi2(r, "cloud", cloud, ref);
        add_ks(r, "cloud", ks_statistic(cloud, [&](double v) { return ref.cdf(v); }));
    }
    std::optional<EnsembleKind> partner;
    if (tag == EnsembleTag::BetaTridiagonal) partner = dense_partner(N, beta);
    else if (!analytic) partner = EnsembleKind::tridiagonal(N, beta);
    if (partner) {
        r.streams.push_back(stream + 1);
        r.param("partner", kind_label(*partner));
        const std::vector<double> other = pooled(sample_particles(*partner, te, n, RngStream(seed, stream + 1), threads));
        add_ks(r, "cloud_vs_" + ens::to_string(partner->tag), ks_statistic(cloud, other));
    }
    if (!analytic && !partner) throw RouteInapplicable("no reference for this marginal check");
    if (tag == EnsembleTag::GUE) {
        const double h = edge(N, 2.0, t);
        TabulatedCdf top = TabulatedCdf::from_cdf([&](double a) { return fred::rightmost_cdf(N, t, a); }, -h, h, 300);
        add_ks(r, "top_vs_rightmost_cdf", ks_statistic(column(x, N - 1), [&](double v) { return top.cdf(v); }));
    }
    return r;
}

Route parse_route(const std::string& name) {
    if (name == "sde") return Route::Sde;
    if (name == "matrix") return Route::Matrix;
    if (name == "kernel-analytic" || name == "kernel") return Route::KernelAnalytic;
    throw DomainError("unknown route '" + name + "'");
}

std::string to_string(Route r) {
    switch (r) {
        case Route::Sde: return "sde";
        case Route::Matrix: return "matrix";
        default: return "kernel-analytic";
    }
}

ExperimentReport run_equivalence_check(Route a, Route b, const EquivalenceParams& p, std::uint64_t seed,
                                       std::uint64_t stream, unsigned threads) {
    if (a == b) throw RouteInapplicable("equivalence check needs two distinct routes");
    if (p.times.empty()) throw DomainError("equivalence check needs output times");
    const bool dyson = p.system.kind == sde::SystemKind::Dyson;
    const double par = p.system.param;
    auto applicable = [&](Route r) {
        if (r == Route::KernelAnalytic) return dyson ? par == 2.0 : par > -1.0;
        if (r == Route::Sde) return dyson ? par >= 1.0 : par >= -0.5;
        return dyson ? par > 0.0 : par > -1.0;
    };
    if (!applicable(a) || !applicable(b)) throw RouteInapplicable("route not applicable to these parameters");

    ExperimentReport r;
    r.experiment_id = "equivalence." + to_string(a) + "_vs_" + to_string(b) + (dyson ? ".dyson" : ".bessel");
    r.param(dyson ? "beta" : "nu", par);
    r.param("N", (long long)p.n);
    std::string ts;
    for (double t : p.times) ts += (ts.empty() ? "" : ";") + label(t);
    r.param("times", ts);
    r.param("n_samples", (long long)p.n_samples);
    r.param("dt_max", p.dt_max);
    r.seed = seed;

    auto clouds = [&](Route route, std::uint64_t st) -> std::vector<Eigen::MatrixXd> {
        r.streams.push_back(st);
        const RngStream root(seed, st);
        if (route == Route::Sde) return sde_particle_paths(p.system, p.n, p.times, p.n_samples, root, p.dt_max, threads);
        EnsembleKind kind;
        if (!dyson) kind = EnsembleKind::laguerre(p.n, par);
        else if (auto d = dense_partner(p.n, par)) kind = *d;
        else kind = EnsembleKind::tridiagonal(p.n, par);
        return matrix_clouds(kind, p.times, p.n_samples, root, threads, true);
    };
    std::vector<Eigen::MatrixXd> ca, cb;
    if (a != Route::KernelAnalytic) ca = clouds(a, stream);
    if (b != Route::KernelAnalytic) cb = clouds(b, stream + 1);
    for (std::size_t i = 0; i < p.times.size(); ++i) {
        const double t = p.times[i];
        const std::string tag = "t=" + label(t);
        if (ca.empty() || cb.empty()) {
            const std::vector<double> cloud = pooled(ca.empty() ? cb[i] : ca[i]);
            TabulatedCdf ref = dyson ? hermite_cloud_cdf(p.n, t) : laguerre_cloud_cdf(p.n, par, t);
            add_chi2(r, tag, cloud, ref);
            add_ks(r, tag, ks_statistic(cloud, [&](double v) { return ref.cdf(v); }));
        } else {
            add_ks(r, tag, ks_statistic(pooled(ca[i]), pooled(cb[i])));
        }
    }
    return r;
}

ExperimentReport run_bridge_check(int N, double T, const std::vector<double>& times, std::size_t n, std::uint64_t seed,
                                  std::uint64_t stream, unsigned threads) {
    const EnsembleKind kind = EnsembleKind::bridge(N, T);
    for (double t : times)
        if (!(t > 0.0 && t <= T)) throw DomainError("bridge check times must lie in (0, T]");
    ExperimentReport r;
    r.experiment_id = "bridge.N" + std::to_string(N);
    r.param("N", (long long)N);
    r.param("T", T);
    std::string ts;
    for (double t : times) ts += (ts.empty() ? "" : ";") + label(t);
    r.param("times", ts);
    r.param("n_samples", (long long)n);
    r.seed = seed;
    r.streams = {stream};
    const std::vector<Eigen::MatrixXd> clouds = sample_particle_paths(kind, TimeGrid(times, T), n, RngStream(seed, stream), threads);
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        const std::string tag = "t=" + label(t);
        const std::vector<double> cloud = pooled(clouds[i]);
        TabulatedCdf ref = bridge_cloud_cdf(N, t, T);
        r.check_le(tag + ".reference.mass_error", std::abs(ref.mass() - 1.0), 1e-6);
        add_chi2(r, tag + ".vs_g_NT_origin", cloud, ref);
        if (t == T) add_chi2(r, tag + ".vs_goe", cloud, exact_cloud_cdf(EnsembleTag::GOE, N, T));
        if (t <= 0.1 * T) {
            TabulatedCdf gue = exact_cloud_cdf(EnsembleTag::GUE, N, t);
            // the law at t > 0 is not exactly GUE: the empirical distance may
            // exceed the sampling critical value by the exact sup distance
            const double sup = ref.sup_distance(gue);
            r.statistics.push_back({tag + ".analytic_sup_distance_to_gue", sup, std::nullopt, std::nullopt});
            const KsResult ks = ks_statistic(cloud, [&](double v) { return gue.cdf(v); });
            r.check_le(tag + ".vs_gue.ks_D", ks.d, ks.critical + sup);
        }
    }
    return r;
}

}  // namespace noncollide::experiments
