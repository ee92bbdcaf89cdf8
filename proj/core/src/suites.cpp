#include "noncollide/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>

#include "noncollide/densities1d.hpp"
#include "noncollide/ensembles.hpp"
#include "noncollide/experiments.hpp"
#include "noncollide/fredholm.hpp"
#include "noncollide/karlin_mcgregor.hpp"
#include "noncollide/kernels.hpp"
#include "noncollide/parallel.hpp"
#include "noncollide/quadrature.hpp"
#include "noncollide/sde.hpp"

namespace noncollide::experiments {

namespace {

using ens::EnsembleKind;
using ens::EnsembleTag;
using Reports = std::vector<ExperimentReport>;

// stream ranges per suite; each experiment owns one or two consecutive ids
constexpr std::uint64_t kKmStream = 100;
constexpr std::uint64_t kEnsStream = 200;
constexpr std::uint64_t kSdeStream = 300;
constexpr std::uint64_t kKernStream = 400;
constexpr std::uint64_t kFredStream = 500;
constexpr std::uint64_t kBridgeStream = 600;
constexpr std::uint64_t kHcStream = 700;

ExperimentReport make_report(const std::string& id, const SuiteOptions& o) {
    ExperimentReport r;
    r.experiment_id = id;
    r.seed = o.seed;
    return r;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double phi_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double whole_line(const quad::Fn& f, double c) {
    return quad::integrate_to_infinity(f, c, 1.0, 1e-16) +
           quad::integrate_to_infinity([&](double u) { return f(2.0 * c - u); }, c, 1.0, 1e-16);
}

double half_line(const quad::Fn& f) { return quad::integrate_to_infinity(f, 0.0, 1.0, 1e-16); }

// f ~ y^p at 0
double half_line_power(const quad::Fn& f, double p) {
    return quad::integrate_power_endpoint(f, p, 0.5, 1.0) + quad::integrate_to_infinity(f, 1.0, 1.0, 1e-16);
}

OrderedConfiguration random_config(RngStream& rng, int n, double scale, bool positive) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = positive ? 0.05 + scale * std::abs(rng.gaussian()) : scale * rng.gaussian();
    std::sort(v.begin(), v.end());
    return validate_chamber(v, positive ? Chamber::C : Chamber::A);
}

// Half-line configurations built from gaps 0.25 + |g|.  Points drawn
// independently cluster near the origin, where det[I_nu(x_i y_j / t)] cancels
// to ~1e-9 of its terms and no double-precision route holds 1e-10.
OrderedConfiguration spaced_config(RngStream& rng, int n, double scale) {
    std::vector<double> v(static_cast<std::size_t>(n));
    double c = 0.05 * scale;
    for (auto& x : v) x = c += scale * (0.25 + std::abs(rng.gaussian()));
    return validate_chamber(v, Chamber::C);
}

// ---------------------------------------------------------------- densities

Reports suite_densities(const SuiteOptions& o) {
    Reports out;
    {
        ExperimentReport r = make_report("densities.normalization", o);
        r.param("tolerance", 1e-8);
        r.check_le("bm(1,.|0.3)", std::abs(whole_line([](double y) { return dens::bm_density(1.0, y, 0.3); }, 0.3) - 1.0), 1e-8);
        r.check_le("bridge(0,0;0.5,.;1)",
                   std::abs(whole_line([](double y) { return dens::bridge_density(0, 0, 0.5, y, 1.0); }, 0.0) - 1.0), 1e-8);
        r.check_le("bridge_variance(t=0.9,T=1)",
                   std::abs(whole_line([](double y) { return y * y * dens::bridge_density(0, 0, 0.9, y, 1.0); }, 0.0) - 0.09), 1e-8);
        r.check_le("absorbing(1,.|1)_vs_survival_h",
                   std::abs(half_line([](double y) { return dens::absorbing_density(1, y, 1); }) - dens::survival_h(1, 1)), 1e-8);
        r.check_le("bessel3(1,.|1)", std::abs(half_line([](double y) { return dens::bessel3_density(1, y, 1); }) - 1.0), 1e-8);
        r.check_le("bessel3_origin(1,.)",
                   std::abs(half_line([](double y) { return dens::bessel3_density_origin(1, y); }) - 1.0), 1e-8);
        const double cases[][3] = {{0.5, 1, 1}, {0, 1, 2}, {-0.4, 1, 1}, {-0.4, 1, 0}, {1.5, 0.5, 0}};
        for (const auto& c : cases) {
            const double nu = c[0], t = c[1], x = c[2];
            double m = half_line_power([=](double y) { return dens::bessel_density(nu, t, y, x); }, 2 * nu + 1);
            r.check_le("bessel(nu=" + label(nu) + ",t=" + label(t) + ",x=" + label(x) + ")", std::abs(m - 1.0), 1e-8);
        }
        r.check_le("meander(0,0;0.5,.;1)",
                   std::abs(half_line([](double y) { return dens::meander_density(0, 0, 0.5, y, 1); }) - 1.0), 1e-8);
        r.check_le("meander(0,0;1,.;1)",
                   std::abs(half_line([](double y) { return dens::meander_density(0, 0, 1, y, 1); }) - 1.0), 1e-8);
        r.check_le("meander(0,1;0.5,.;1)",
                   std::abs(half_line([](double y) { return dens::meander_density(0, 1, 0.5, y, 1); }) - 1.0), 1e-8);
        const double gm[][2] = {{0.5, 1.0}, {0.0, 0.5}, {-0.4, 0.5}, {2.0, 3.0}};
        for (const auto& c : gm) {
            dens::DensityParams p{c[0], c[1], 1.0};
            auto f = [p](double y) { return dens::gen_meander_density(p, 0, 0, 0.5, y); };
            // the density is below 1e-25 past y = 8 at t = 0.5; the inner h integral
            // is only good to 1e-10, so a finer outer tolerance never converges
            quad::Tolerance tol;
            tol.rel = 1e-10;
            double m = quad::integrate_power_endpoint(f, 2 * c[0] + 1, 0.5, 10.0, tol);
            r.check_le("gen_meander(nu=" + label(c[0]) + ",kappa=" + label(c[1]) + ")", std::abs(m - 1.0), 1e-8);
        }
        out.push_back(std::move(r));
    }
    {
        ExperimentReport r = make_report("densities.chapman_kolmogorov", o);
        r.param("tolerance", 1e-6);
        const double s = 0.4, t = 0.7, x = 0.5, y = 1.2;
        double lhs = whole_line([&](double z) { return dens::bm_density(s, z, x) * dens::bm_density(t, y, z); }, x);
        r.check_le("G", std::abs(lhs - dens::bm_density(s + t, y, x)), 1e-6);
        lhs = half_line([&](double z) { return dens::bessel3_density(s, z, x) * dens::bessel3_density(t, y, z); });
        r.check_le("G(1/2)", std::abs(lhs - dens::bessel3_density(s + t, y, x)), 1e-6);
        for (double nu : {0.0, -0.4, 1.5}) {
            auto f = [&](double z) { return dens::bessel_density(nu, s, z, x) * dens::bessel_density(nu, t, y, z); };
            lhs = half_line_power(f, 2 * nu + 1);
            r.check_le("G(nu=" + label(nu) + ")", std::abs(lhs - dens::bessel_density(nu, s + t, y, x)), 1e-6);
        }
        out.push_back(std::move(r));
    }
    {
        ExperimentReport r = make_report("densities.h_transform", o);
        double worst = 0.0;
        for (double y : {0.1, 0.7, 1.3, 3.0})
            for (double x : {0.2, 1.0, 2.5})
                worst = std::max(worst, std::abs(dens::bessel3_density(0.8, y, x) - (y / x) * dens::absorbing_density(0.8, y, x)));
        r.check_le("bessel3_minus_h_transform", worst, 0.0);
        double nu_half = 0.0;
        for (double y : {0.1, 0.7, 1.3, 3.0})
            nu_half = std::max(nu_half, rel_err(dens::bessel_density(0.5, 0.8, y, 1.0), dens::bessel3_density(0.8, y, 1.0)));
        r.check_le("bessel(nu=1/2)_vs_bessel3.rel", nu_half, 1e-12);
        out.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------- km

Reports suite_km(const SuiteOptions& o) {
    Reports out;
    RngStream rng(o.seed, kKmStream);
    {
        ExperimentReport r = make_report("km.fN_vs_km_density", o);
        r.streams = {kKmStream};
        r.param("configurations", 100ll);
        double worst = 0.0;
        const auto bm = km::brownian_transition();
        for (int k = 0; k < 100; ++k) {
            const int N = 1 + k % 4;
            const double t = 0.3 + 1.7 * rng.uniform();
            OrderedConfiguration x = random_config(rng, N, 1.0, false), y = random_config(rng, N, std::sqrt(t), false);
            worst = std::max(worst, rel_err(km::km_density(bm, 0.0, x, t, y), km::f_N(t, y, x)));
        }
        r.check_le("max_rel_error", worst, 1e-10);
        out.push_back(std::move(r));
    }
    {
        ExperimentReport r = make_report("km.fNnu_vs_km_density", o);
        r.streams = {kKmStream};
        r.param("configurations", 100ll);
        double worst = 0.0;
        const double nus[] = {0.5, 0.0, 2.0, -0.4};
        for (int k = 0; k < 100; ++k) {
            const int N = 1 + k % 4;
            const double nu = nus[(k / 4) % 4];
            const double t = 0.3 + 1.7 * rng.uniform();
            OrderedConfiguration x = spaced_config(rng, N, 1.0), y = spaced_config(rng, N, std::sqrt(t));
            worst = std::max(worst, rel_err(km::km_density(km::bessel_transition(nu), 0.0, x, t, y), km::f_N_nu(nu, t, y, x)));
        }
        r.check_le("max_rel_error", worst, 1e-10);
        out.push_back(std::move(r));
    }
    {
        ExperimentReport r = make_report("km.imhof_1d", o);
        double worst = 0.0;
        for (double T : {1.0, 2.0})
            for (double y : {0.3, 1.0, 2.5}) {
                double ratio = dens::meander_density(0, 0, T, y, T) / dens::bessel3_density_origin(T, y);
                worst = std::max(worst, rel_err(ratio, std::sqrt(std::numbers::pi * T / 2) / y));
            }
        r.check_le("meander_over_bessel3.rel", worst, 1e-8);
        double gen = 0.0;
        const double cases[][2] = {{0.5, 1.0}, {0.0, 0.5}, {1.5, 2.0}, {-0.4, 0.3}};
        for (const auto& c : cases)
            for (double y : {0.4, 1.1, 2.0}) {
                dens::DensityParams p{c[0], c[1], 1.5};
                double ratio = dens::gen_meander_density(p, 0, 0, p.T, y) / dens::bessel_density(p.nu, p.T, y, 0.0);
                double expect = std::exp(std::lgamma(p.nu + 1) - std::lgamma(p.nu + 1 - p.kappa / 2)) *
                                std::pow(std::sqrt(2 * p.T) / y, p.kappa);
                gen = std::max(gen, rel_err(ratio, expect));
            }
        r.check_le("generalized_meander_over_bessel.rel", gen, 1e-8);
        out.push_back(std::move(r));
    }
    {
        ExperimentReport r = make_report("km.imhof_multi", o);
        double worst = 0.0;
        for (int N : {2, 3}) {
            const auto c = km::constants(N);
            for (double T : {1.0, 1.7}) {
                OrderedConfiguration y = N == 2 ? validate_chamber({-1.0, 1.0}, Chamber::A)
                                                : validate_chamber({-1.1, 0.2, 1.4}, Chamber::A);
                double expect = c.c1 / c.c2 * std::pow(T, N * (N - 1) / 4.0) / km::vandermonde(y.values());
                worst = std::max(worst, rel_err(km::imhof_ratio(T, y, T).value, expect));
                worst = std::max(worst, rel_err(km::imhof_limit(y, T), expect));
            }
        }
        r.check_le("ratio_at_T.rel", worst, 1e-8);
        r.check_le("N2_y(-1,1)_spot.rel",
                   rel_err(km::imhof_ratio(1, validate_chamber({-1.0, 1.0}, Chamber::A), 1).value, std::sqrt(std::numbers::pi) / 2), 1e-8);
        double gen = 0.0;
        const double cases[][2] = {{0.5, 1.0}, {0.0, 0.5}, {1.0, 2.0}};
        for (const auto& cs : cases) {
            dens::DensityParams p{cs[0], cs[1], 1.3};
            OrderedConfiguration y = validate_chamber({0.4, 1.5}, Chamber::C);
            const auto c = km::constants(2, p.nu, p.kappa);
            double expect = c.c_nu / c.c_nu_kappa * std::pow(p.T, 2 * (2 + p.kappa - 1) / 2.0) /
                            km::vandermonde_alpha(y.values(), p.kappa);
            double ratio = km::g_NT_nu_kappa_origin(p, p.T, y).value / km::p_N_nu_origin(p.nu, p.T, y);
            gen = std::max(gen, rel_err(ratio, expect));
            gen = std::max(gen, rel_err(km::generalized_imhof_limit(p, y), expect));
        }
        r.check_le("generalized_ratio_at_T.rel", gen, 1e-8);
        out.push_back(std::move(r));
    }
    {
        ExperimentReport r = make_report("km.asymptotics", o);
        r.param("eps", std::string("0.1;0.01;0.001"));
        r.param("t", 1.0);
        const double eps[] = {1e-1, 1e-2, 1e-3};
        auto sweep = [&](const std::string& name, const std::function<double(double)>& ratio) {
            double prev = std::numeric_limits<double>::infinity();
            bool monotone = true;
            double dev = 0.0;
            for (double e : eps) {
                dev = std::abs(ratio(e) - 1.0);
                r.statistics.push_back({name + ".dev(eps=" + label(e) + ")", dev, std::nullopt, std::nullopt});
                if (dev > prev + 1e-12) monotone = false;
                prev = dev;
            }
            r.verdict(name + ".monotone", monotone);
            r.check_le(name + ".dev_finest", dev, 1e-4);
        };
        for (int N : {2, 3}) {
            const std::vector<double> u = N == 2 ? std::vector<double>{-0.6, 0.9} : std::vector<double>{-0.8, 0.1, 1.0};
            const OrderedConfiguration y = N == 2 ? validate_chamber({-0.5, 0.7}, Chamber::A)
                                                  : validate_chamber({-1.0, 0.3, 1.2}, Chamber::A);
            auto scaled = [u](double e, Chamber c) {
                std::vector<double> v(u);
                for (auto& a : v) a *= e;
                return validate_chamber(v, c);
            };
            const std::string tag = "N" + std::to_string(N);
            sweep(tag + ".f_N", [&](double e) {
                auto x = scaled(e, Chamber::A);
                return km::f_N(1.0, y, x) / km::f_N_asymptotic(1.0, y, x);
            });
            sweep(tag + ".survival_N", [&](double e) {
                auto x = scaled(e, Chamber::A);
                return km::survival_N(1.0, x).value / km::survival_N_asymptotic(1.0, x);
            });
        }
        {
            const std::vector<double> u{0.4, 1.0};
            const OrderedConfiguration y = validate_chamber({0.5, 1.3}, Chamber::C);
            sweep("N2.f_N_nu(0.5)", [&](double e) {
                auto x = validate_chamber({e * u[0], e * u[1]}, Chamber::C);
                return km::f_N_nu(0.5, 1.0, y, x) / km::f_N_nu_asymptotic(0.5, 1.0, y, x);
            });
        }
        out.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------- ensembles

Reports suite_ensembles(const SuiteOptions& o) {
    Reports out;
    out.push_back(run_marginal_check(EnsembleKind::make(EnsembleTag::GUE, 2), 1.0, 20000, o.seed, kEnsStream, o.threads));
    out.push_back(run_marginal_check(EnsembleKind::make(EnsembleTag::GOE, 3), 1.0, 20000, o.seed, kEnsStream + 2, o.threads));
    out.push_back(run_marginal_check(EnsembleKind::tridiagonal(4, 4.0), 1.0, 10000, o.seed, kEnsStream + 4, o.threads));
    out.push_back(run_marginal_check(EnsembleKind::tridiagonal(8, 1.0), 1.0, 10000, o.seed, kEnsStream + 6, o.threads));
    for (double nu : {0.0, 1.0}) {
        const std::uint64_t st = kEnsStream + 8 + std::uint64_t(nu);
        ExperimentReport r = make_report("ensembles.laguerre_radii_vs_pNnu.nu" + label(nu), o);
        r.streams = {st};
        r.param("N", 2ll);
        r.param("nu", nu);
        r.param("t", 1.0);
        r.param("n_samples", 20000ll);
        Eigen::MatrixXd x = sample_particles(EnsembleKind::laguerre(2, nu), 1.0, 20000, RngStream(o.seed, st), o.threads, true);
        TabulatedCdf ref = bessel_cloud_cdf_joint(2, nu, 1.0);
        r.check_le("reference.mass_error", std::abs(ref.mass() - 1.0), 1e-6);
        std::vector<double> cloud = pooled(x);
        add_chi2(r, "cloud", cloud, ref);
        add_ks(r, "cloud", ks_statistic(cloud, [&](double v) { return ref.cdf(v); }));
        out.push_back(std::move(r));
    }
    {
        ExperimentReport r = make_report("ensembles.exact_densities", o);
        double worst = 0.0;
        RngStream rng(o.seed, kEnsStream + 10);
        r.streams = {kEnsStream + 10};
        for (int k = 0; k < 20; ++k) {
            OrderedConfiguration y = random_config(rng, 1 + k % 4, 1.0, false);
            worst = std::max(worst, rel_err(ens::eigen_density_exact(EnsembleTag::GUE, y, 0.8), km::p_N_origin(0.8, y)));
        }
        r.check_le("gue_vs_pN_origin.rel", worst, 1e-13);
        r.check_le("gue_N1_vs_bm.rel",
                   rel_err(ens::eigen_density_exact(EnsembleTag::GUE, validate_chamber({0.7}, Chamber::A), 1.3),
                           dens::bm_density(1.3, 0.7, 0.0)),
                   1e-14);
        out.push_back(std::move(r));
    }
    {
        ExperimentReport r = make_report("ensembles.trace_moment", o);
        r.streams = {kEnsStream + 11};
        const std::size_t n = 100000;
        std::vector<double> tr(n);
        const EnsembleKind k = EnsembleKind::make(EnsembleTag::GUE, 2);
        for_each_block(block_count(n), o.threads, [&](std::size_t b) {
            RngStream rng = RngStream(o.seed, kEnsStream + 11).split(b);
            for (std::size_t i = b * kBlockSize; i < std::min(n, (b + 1) * kBlockSize); ++i)
                tr[i] = ens::sample_matrix(k, 1.0, rng).entries.squaredNorm();
        });
        MeanStat m = mean_and_stderr(tr);
        r.stat("E_TrH2", m.mean, m.std_error);
        r.check_le("E_TrH2.z", std::abs(m.mean - 4.0) / m.std_error, 3.0);
        out.push_back(std::move(r));
    }
    {
        ExperimentReport r = make_report("ensembles.structural", o);
        r.streams = {kEnsStream + 12};
        r.param("n_samples", 1000ll);
        RngStream root(o.seed, kEnsStream + 12);
        auto worst_over = [&](const EnsembleKind& k, std::uint64_t sub, auto&& residual) {
            RngStream rng = root.split(sub);
            double w = 0.0;
            for (int i = 0; i < 1000; ++i) {
                ens::MatrixSample m = ens::sample_matrix(k, 1.0, rng);
                std::vector<double> ev = ens::eigenvalues(m);
                double norm = std::max(std::abs(ev.front()), std::abs(ev.back()));
                w = std::max(w, residual(m, ev) / norm);
            }
            return w;
        };
        auto pair_gap = [](const ens::MatrixSample&, const std::vector<double>& ev) {
            double g = 0.0;
            for (std::size_t i = 0; i + 1 < ev.size(); i += 2) g = std::max(g, ev[i + 1] - ev[i]);
            return g;
        };
        auto pm = [](const ens::MatrixSample&, const std::vector<double>& ev) {
            double g = 0.0;
            for (std::size_t i = 0; i < ev.size(); ++i) g = std::max(g, std::abs(ev[i] + ev[ev.size() - 1 - i]));
            return g;
        };
        auto nonneg = [](const ens::MatrixSample&, const std::vector<double>& ev) { return std::max(0.0, -ev.front()); };
        auto herm = [](const ens::MatrixSample& m, const std::vector<double>&) {
            return (m.entries - m.entries.adjoint()).cwiseAbs().maxCoeff();
        };
        for (int N : {2, 3}) {
            const std::string s = ".N" + std::to_string(N);
            r.check_le("gse.pair_gap" + s, worst_over(EnsembleKind::make(EnsembleTag::GSE, N), 10 + N, pair_gap), 1e-9);
            r.check_le("classc.pm_asymmetry" + s, worst_over(EnsembleKind::make(EnsembleTag::ClassC, N), 20 + N, pm), 1e-9);
            r.check_le("classd.pm_asymmetry" + s, worst_over(EnsembleKind::make(EnsembleTag::ClassD, N), 30 + N, pm), 1e-9);
            r.check_le("laguerre.negative_part" + s, worst_over(EnsembleKind::laguerre(N, 1.0), 40 + N, nonneg), 1e-10);
            r.check_le("laguerre_nonint.negative_part" + s, worst_over(EnsembleKind::laguerre(N, 0.5), 50 + N, nonneg), 1e-10);
            r.check_le("wishart.negative_part" + s, worst_over(EnsembleKind::wishart(N, 1), 60 + N, nonneg), 1e-10);
            r.check_le("gue.hermiticity" + s, worst_over(EnsembleKind::make(EnsembleTag::GUE, N), 70 + N, herm), 0.0);
        }
        double imag = 0.0;
        RngStream rng = root.split(80);
        for (int i = 0; i < 1000; ++i) {
            ens::MatrixPath p = ens::sample_path(EnsembleKind::bridge(3, 1.0), TimeGrid({0.5, 1.0}, 1.0), rng);
            imag = std::max(imag, p.samples.back().entries.imag().cwiseAbs().maxCoeff());
        }
        r.check_le("bridge_at_T.max_imag", imag, 0.0);
        out.push_back(std::move(r));
    }
    {
        ExperimentReport r = make_report("ensembles.haar", o);
        r.streams = {kEnsStream + 13};
        const std::size_t n = 100000;
        std::vector<double> u11(n);
        double resid = 0.0;
        RngStream rng(o.seed, kEnsStream + 13);
        for (std::size_t i = 0; i < n; ++i) {
            Eigen::MatrixXcd U = ens::haar_unitary(3, rng);
            if (i < 1000) resid = std::max(resid, (U.adjoint() * U - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff());
            u11[i] = std::norm(U(0, 0));
        }
        r.check_le("unitarity_residual", resid, 1e-12);
        MeanStat m = mean_and_stderr(u11);
        r.stat("E|U11|^2", m.mean, m.std_error);
        r.check_le("E|U11|^2.z", std::abs(m.mean - 1.0 / 3.0) / m.std_error, 3.0);
        out.push_back(std::move(r));
    }
    {
        // complex Ginibre with unit-variance entries: |z|^2 are Gamma(k,1), k = 1..N
        ExperimentReport r = make_report("ensembles.ginibre", o);
        r.streams = {kEnsStream + 14};
        const int N = 6;
        const std::size_t n = 5000;
        std::vector<double> z2(n);
        RngStream rng(o.seed, kEnsStream + 14);
        for (std::size_t i = 0; i < n; ++i) {
            auto ev = ens::complex_eigenvalues(ens::sample_matrix(EnsembleKind::make(EnsembleTag::Ginibre, N), 1.0, rng));
            double s = 0.0;
            for (auto z : ev) s += std::norm(z);
            z2[i] = s / N;
        }
        MeanStat m = mean_and_stderr(z2);
        r.stat("mean|z|^2", m.mean, m.std_error);
        r.check_le("mean|z|^2.z", std::abs(m.mean - (N + 1) / 2.0) / m.std_error, 3.0);
        out.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------- sde

Reports suite_sde(const SuiteOptions& o) {
    Reports out;
    const double dt = o.dt_max;
    {
        EquivalenceParams p{sde::System::dyson(2.0), 2, {1.0}, 10000, dt};
        out.push_back(run_equivalence_check(Route::Sde, Route::Matrix, p, o.seed, kSdeStream, o.threads));
        out.push_back(run_equivalence_check(Route::Sde, Route::KernelAnalytic, p, o.seed, kSdeStream + 2, o.threads));
        p.system = sde::System::bessel(0.0);
        out.push_back(run_equivalence_check(Route::Sde, Route::Matrix, p, o.seed, kSdeStream + 4, o.threads));
    }
    auto moment = [&](const std::string& id, const sde::System& sys, double expect, std::uint64_t st) {
        ExperimentReport r = make_report(id, o);
        r.streams = {st};
        r.param("dt_max", dt);
        r.param("n_paths", 10000ll);
        Eigen::MatrixXd x = sde_particle_paths(sys, 1, {1.0}, 10000, RngStream(o.seed, st), dt, o.threads)[0];
        std::vector<double> sq(std::size_t(x.rows()));
        for (Eigen::Index i = 0; i < x.rows(); ++i) sq[std::size_t(i)] = x(i, 0) * x(i, 0);
        MeanStat m = mean_and_stderr(sq);
        r.stat("E_X2", m.mean, m.std_error);
        r.check_le("E_X2.z", std::abs(m.mean - expect) / m.std_error, 3.0);
        out.push_back(std::move(r));
    };
    moment("sde.dyson_N1_variance", sde::System::dyson(2.0), 1.0, kSdeStream + 6);
    // from a positive start the Euler scheme itself carries the N=1 Bessel(1/2) law
    {
        ExperimentReport r = make_report("sde.bessel3_second_moment", o);
        const std::uint64_t st = kSdeStream + 7;
        r.streams = {st};
        r.param("dt_max", dt);
        r.param("x0", 0.5);
        const std::size_t n = 10000;
        std::vector<double> sq(n);
        for_each_block(block_count(n), o.threads, [&](std::size_t b) {
            RngStream rng = RngStream(o.seed, st).split(b);
            const double x0[] = {0.5};
            for (std::size_t i = b * kBlockSize; i < std::min(n, (b + 1) * kBlockSize); ++i) {
                auto run = sde::simulate(sde::System::bessel(0.5), x0, TimeGrid({1.0}), rng, dt);
                sq[i] = run.paths(0, 0) * run.paths(0, 0);
            }
        });
        MeanStat m = mean_and_stderr(sq);
        r.stat("E_Y2", m.mean, m.std_error);
        r.check_le("E_Y2.z", std::abs(m.mean - (3.0 + 0.25)) / m.std_error, 3.0);
        out.push_back(std::move(r));
    }
    moment("sde.bessel3_origin_second_moment", sde::System::bessel(0.5), 3.0, kSdeStream + 8);
    {
        ExperimentReport r = make_report("sde.ordering_positivity", o);
        const std::uint64_t st = kSdeStream + 9;
        r.streams = {st};
        r.param("paths_per_system", 200ll);
        const TimeGrid grid = TimeGrid::uniform(1.0, 100);
        auto check = [&](const std::string& name, const sde::System& sys, std::uint64_t sub, bool positive) {
            RngStream rng = RngStream(o.seed, st).split(sub);
            const std::vector<double> x0(3, 0.0);
            bool ok = true;
            for (int i = 0; i < 200; ++i) {
                auto run = sde::simulate(sys, x0, grid, rng, dt);
                for (Eigen::Index k = 0; k < run.paths.rows(); ++k) {
                    for (Eigen::Index j = 0; j + 1 < run.paths.cols(); ++j) ok &= run.paths(k, j) < run.paths(k, j + 1);
                    if (positive) ok &= run.paths(k, 0) >= 0.0;
                }
            }
            r.verdict(name, ok);
        };
        check("dyson_beta1.ordered", sde::System::dyson(1.0), 0, false);
        check("dyson_beta2.ordered", sde::System::dyson(2.0), 1, false);
        check("dyson_beta2.5.ordered", sde::System::dyson(2.5), 2, false);
        check("bessel_nu-0.5.ordered_nonnegative", sde::System::bessel(-0.5), 3, true);
        check("bessel_nu0.ordered_nonnegative", sde::System::bessel(0.0), 4, true);
        out.push_back(std::move(r));
    }
    {
        ExperimentReport r = make_report("sde.step_halving", o);
        r.streams = {kSdeStream + 10, kSdeStream + 11};
        r.param("dt_max", dt);
        const sde::System sys = sde::System::dyson(2.0);
        auto top = [&](double h, std::uint64_t st) {
            Eigen::MatrixXd x = sde_particle_paths(sys, 2, {1.0}, 10000, RngStream(o.seed, st), h, o.threads)[0];
            return mean_and_stderr(column(x, 1));
        };
        MeanStat a = top(dt, kSdeStream + 10), b = top(dt / 2, kSdeStream + 11);
        r.stat("top_mean(dt_max)", a.mean, a.std_error);
        r.stat("top_mean(dt_max/2)", b.mean, b.std_error);
        r.check_le("difference.z", std::abs(a.mean - b.mean) / std::hypot(a.std_error, b.std_error), 3.0);
        out.push_back(std::move(r));
    }
    {
        ExperimentReport r = make_report("sde.exchangeability", o);
        r.streams = {kSdeStream + 12, kSdeStream + 13};
        const sde::System sys = sde::System::dyson(2.0);
        auto cloud = [&](std::uint64_t st) {
            return pooled(sde_particle_paths(sys, 3, {1.0}, 5000, RngStream(o.seed, st), dt, o.threads)[0]);
        };
        add_ks(r, "stream_relabel", ks_statistic(cloud(kSdeStream + 12), cloud(kSdeStream + 13)));
        out.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------- kernels

double trace(const std::function<double(double)>& diag, bool half) {
    return half ? half_line(diag) : whole_line(diag, 0.0);
}

Reports suite_kernels(const SuiteOptions& o) {
    Reports out;
    {
        ExperimentReport r = make_report("kernels.trace", o);
        for (int N = 1; N <= 5; ++N)
            r.check_le("hermite.N" + std::to_string(N),
                       std::abs(trace([N](double x) { return kern::kernel_hermite(N, 0.5, x, 0.5, x); }, false) - N), 1e-8);
        for (double nu : {-0.4, 0.5})
            for (int N = 1; N <= 4; ++N) {
                auto d = [N, nu](double x) { return kern::kernel_laguerre(N, nu, 0.7, x, 0.7, x); };
                double tr = quad::integrate_power_endpoint(d, 2 * nu + 1, 0.5, 1.0) +
                            quad::integrate_to_infinity(d, 1.0, 1.0, 1e-16);
                r.check_le("laguerre.nu" + label(nu) + ".N" + std::to_string(N), std::abs(tr - N), 1e-8);
            }
        out.push_back(std::move(r));
    }
    {
        ExperimentReport r = make_report("kernels.reproducing", o);
        double worst = 0.0;
        for (int N : {2, 4})
            for (auto [x, y] : {std::pair{0.3, -0.8}, std::pair{1.1, 1.1}}) {
                auto f = [&](double z) { return kern::kernel_hermite(N, 0.5, x, 0.5, z) * kern::kernel_hermite(N, 0.5, z, 0.5, y); };
                worst = std::max(worst, std::abs(whole_line(f, 0.0) - kern::kernel_hermite(N, 0.5, x, 0.5, y)));
            }
        r.check_le("hermite.max_abs_error", worst, 1e-8);
        worst = 0.0;
        for (double nu : {-0.4, 0.5})
            for (auto [x, y] : {std::pair{0.3, 1.8}, std::pair{1.1, 1.1}}) {
                auto f = [&](double z) { return kern::kernel_laguerre(3, nu, 0.7, x, 0.7, z) * kern::kernel_laguerre(3, nu, 0.7, z, 0.7, y); };
                double I = quad::integrate_power_endpoint(f, 2 * nu + 1, 0.5, 1.0) + quad::integrate_to_infinity(f, 1.0, 1.0, 1e-16);
                worst = std::max(worst, std::abs(I - kern::kernel_laguerre(3, nu, 0.7, x, 0.7, y)));
            }
        r.check_le("laguerre.max_abs_error", worst, 1e-8);
        out.push_back(std::move(r));
    }
    {
        ExperimentReport r = make_report("kernels.branches", o);
        double sym = 0.0, cont = 0.0, tele = 0.0;
        for (double x : {-1.0, 0.2, 1.5})
            for (double y : {-0.4, 0.9}) {
                sym = std::max(sym, std::abs(kern::kernel_hermite(4, 1, x, 1, y) - kern::kernel_hermite(4, 1, y, 1, x)));
                cont = std::max(cont, std::abs(kern::kernel_hermite(4, 1 - 1e-9, x, 1, y) - kern::kernel_hermite(4, 1, x, 1, y)));
                // s > t: K + tail = 0 and head - K = full
                const double s = 1.3, t = 0.8;
                double full = kern::hermite_bilinear(0, 400, s, x, t, y);
                double head = kern::hermite_bilinear(0, 4, s, x, t, y);
                tele = std::max(tele, std::abs(head - kern::kernel_hermite(4, s, x, t, y) - full));
            }
        r.check_le("hermite.symmetry", sym, 1e-15);
        r.check_le("hermite.s_to_t_continuity", cont, 1e-8);
        r.check_le("hermite.telescoping", tele, 1e-10);
        double two_point = 0.0;
        const auto K = kern::ExtendedKernel::hermite(3);
        for (double x : {-1.0, 0.1})
            for (double y : {0.12, 1.4}) {
                kern::SpaceTimePoint pts[] = {{1.0, x}, {1.0, y}};
                two_point = std::min(two_point, kern::correlation_function(K, pts));
            }
        r.check_le("two_point.negative_part", -two_point, 1e-12);
        out.push_back(std::move(r));
    }
    auto rho1 = [&](const std::string& id, const EnsembleKind& k, const TabulatedCdf& ref, std::uint64_t st) {
        ExperimentReport r = make_report(id, o);
        r.streams = {st};
        r.param("N", (long long)k.n);
        r.param("t", 1.0);
        r.param("n_samples", 10000ll);
        std::vector<double> cloud = pooled(sample_particles(k, 1.0, 10000, RngStream(o.seed, st), o.threads, true));
        r.check_le("reference.mass_error", std::abs(ref.mass() - 1.0), 1e-6);
        add_chi2(r, "rho1", cloud, ref);
        out.push_back(std::move(r));
    };
    rho1("kernels.rho1.hermite.N4", EnsembleKind::make(EnsembleTag::GUE, 4), hermite_cloud_cdf(4, 1.0), kKernStream);
    rho1("kernels.rho1.hermite.N5", EnsembleKind::make(EnsembleTag::GUE, 5), hermite_cloud_cdf(5, 1.0), kKernStream + 1);
    rho1("kernels.rho1.laguerre.N4.nu-0.4", EnsembleKind::laguerre(4, -0.4), laguerre_cloud_cdf(4, -0.4, 1.0), kKernStream + 2);
    rho1("kernels.rho1.laguerre.N4.nu0.5", EnsembleKind::laguerre(4, 0.5), laguerre_cloud_cdf(4, 0.5, 1.0), kKernStream + 3);
    {
        ExperimentReport r = make_report("kernels.multi_time_rho", o);
        const std::uint64_t st = kKernStream + 4;
        r.streams = {st};
        const std::size_t n = 100000;
        const double h = 0.15;
        r.param("N", 2ll);
        r.param("times", std::string("0.5;1"));
        r.param("n_samples", (long long)n);
        r.param("half_width", h);
        std::vector<Eigen::MatrixXd> c =
            sample_particle_paths(EnsembleKind::make(EnsembleTag::GUE, 2), TimeGrid({0.5, 1.0}), n, RngStream(o.seed, st), o.threads);
        const auto K = kern::ExtendedKernel::hermite(2);
        const auto gl = gauss_legendre(6, -h, h);
        for (auto [x, y] : {std::pair{0.0, 0.0}, std::pair{0.7, 1.0}, std::pair{-0.8, 0.5}}) {
            std::vector<double> counts(n);
            for (std::size_t i = 0; i < n; ++i) {
                int a = 0, b = 0;
                for (int j = 0; j < 2; ++j) {
                    a += std::abs(c[0](Eigen::Index(i), j) - x) < h;
                    b += std::abs(c[1](Eigen::Index(i), j) - y) < h;
                }
                counts[i] = a * b / (4 * h * h);
            }
            MeanStat m = mean_and_stderr(counts);
            double exact = 0.0;
            for (std::size_t p = 0; p < gl.size(); ++p)
                for (std::size_t q = 0; q < gl.size(); ++q) {
                    kern::SpaceTimePoint pts[] = {{0.5, x + gl.nodes[p]}, {1.0, y + gl.nodes[q]}};
                    exact += gl.weights[p] * gl.weights[q] * kern::correlation_function(K, pts);
                }
            exact /= 4 * h * h;
            const std::string tag = "(" + label(x) + "," + label(y) + ")";
            r.stat("mc" + tag, m.mean, m.std_error);
            r.statistics.push_back({"kernel" + tag, exact, std::nullopt, std::nullopt});
            r.check_le("z" + tag, std::abs(m.mean - exact) / m.std_error, 3.0);
        }
        out.push_back(std::move(r));
    }
    {
        ExperimentReport r = make_report("kernels.airy_approach", o);
        r.param("N", std::string("50;100;200"));
        const double grid[] = {-2, -1, 0, 1, 2};
        double prev = std::numeric_limits<double>::infinity();
        bool decreasing = true;
        for (int N : {50, 100, 200}) {
            const double T = std::cbrt(double(N)), a = 2.0 * std::pow(double(N), 2.0 / 3.0);
            double err = 0.0;
            for (double x : grid)
                for (double d : {0.0, 0.5})
                    err = std::max(err, std::abs(kern::kernel_hermite(N, T, a + x, T, a + x + d) - kern::kernel_airy(0, x, 0, x + d)));
            r.statistics.push_back({"max_error.N" + std::to_string(N), err, std::nullopt, std::nullopt});
            if (!(err < prev)) decreasing = false;
            prev = err;
        }
        r.verdict("error_decreasing", decreasing);
        out.push_back(std::move(r));
    }
    {
        ExperimentReport r = make_report("kernels.sine", o);
        r.check_le("diagonal_minus_1/pi", std::abs(kern::kernel_sine(1, 0.3, 1, 0.3) - 1 / std::numbers::pi), 1e-12);
        r.check_le("zero_at_pi", std::abs(kern::kernel_sine(1, std::numbers::pi, 1, 0)), 1e-15);
        r.check_le("s_to_t_continuity", std::abs(kern::kernel_sine(1, 0.2, 1 + 1e-12, 0.2) - 1 / std::numbers::pi), 1e-10);
        out.push_back(std::move(r));
    }
    {
        ExperimentReport r = make_report("kernels.hard_edge", o);
        double worst = 0.0;
        for (double nu : {-0.5, 0.0, 0.5, 2.0})
            for (auto [x, y] : {std::pair{0.5, 0.5}, std::pair{1.3, 1.3}, std::pair{0.8, 0.3}, std::pair{2.2, 1.7}, std::pair{1.0, 1.0 + 1e-5}})
                worst = std::max(worst, std::abs(kern::bessel_hard_equal_time_closed(nu, x, y) - kern::bessel_hard_integral(nu, 0, x, y, 0, 2)));
        r.check_le("closed_vs_integral", worst, 1e-6);
        double odd = 0.0, even = 0.0;
        for (double x : {0.3, 0.9, 1.7})
            for (double y : {0.2, 1.1, 2.6}) {
                const double pi = std::numbers::pi;
                auto sinc = [](double z) { return z == 0 ? 2.0 : std::sin(2 * z) / z; };
                odd = std::max(odd, std::abs(kern::kernel_bessel_hard(0.5, 1, x, 1, y) - (sinc(x - y) - sinc(x + y)) / pi));
                even = std::max(even, std::abs(kern::kernel_bessel_hard(-0.5, 1, x, 1, y) - (sinc(x - y) + sinc(x + y)) / pi));
            }
        r.check_le("nu=1/2_vs_odd_sine", odd, 1e-6);
        r.check_le("nu=-1/2_vs_even_sine", even, 1e-6);
        out.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------- fredholm

Reports suite_fredholm(const SuiteOptions& o) {
    Reports out;
    {
        ExperimentReport r = make_report("fredholm.tracy_widom_dual_route", o);
        double worst = 0.0;
        for (double a : {-5.0, -3.0, -1.0, 0.0, 1.0, 2.0}) {
            double f = fred::tracy_widom_fredholm(a), p = fred::tracy_widom_painleve(a);
            r.statistics.push_back({"F_fredholm(" + label(a) + ")", f, std::nullopt, std::nullopt});
            r.statistics.push_back({"F_painleve(" + label(a) + ")", p, std::nullopt, std::nullopt});
            worst = std::max(worst, std::abs(f - p));
        }
        r.check_le("max_abs_diff", worst, 1e-6);
        r.check_le("F(0)_regression", std::abs(fred::tracy_widom_fredholm(0.0) - 0.969372828355264), 1e-8);
        r.check_le("1-F_fredholm(8)", 1.0 - fred::tracy_widom_fredholm(8.0), 1e-10);
        r.check_le("1-F_painleve(8)", 1.0 - fred::tracy_widom_painleve(8.0), 1e-10);
        bool mono = true;
        double prev = 0.0;
        for (int i = 0; i < 200; ++i) {
            double v = fred::tracy_widom_painleve(-8.0 + 0.05 * i);
            if (!(v > prev)) mono = false;
            prev = v;
        }
        r.verdict("painleve_increasing_200", mono);
        out.push_back(std::move(r));
    }
    {
        ExperimentReport r = make_report("fredholm.painleve", o);
        fred::PainleveSolution a = fred::painleve2_solve(8.0, -2.0, 1e-3), b = fred::painleve2_solve(8.0, -2.0, 2.5e-4);
        r.check_le("q(-2).h_vs_h/4", std::abs(a.q.back() - b.q.back()), 1e-8);
        r.check_le("q(x0)-Ai(x0)", std::abs(a.q.front() - special::airy_ai(8.0)), 0.0);
        fred::PainleveSolution full = fred::painleve2_solve(8.0, -10.0, 1e-3);
        r.verdict("q_positive", *std::min_element(full.q.begin(), full.q.end()) > 0.0);
        out.push_back(std::move(r));
    }
    {
        ExperimentReport r = make_report("fredholm.rightmost", o);
        double worst = 0.0;
        for (double t : {0.5, 2.0})
            for (double a : {-1.5, 0.0, 0.7, 2.0}) worst = std::max(worst, std::abs(fred::rightmost_cdf(1, t, a) - phi_cdf(a / std::sqrt(t))));
        r.check_le("N1_vs_Phi", worst, 1e-8);
        bool mono = true;
        double prev = 0.0;
        for (int i = 0; i <= 30; ++i) {
            double v = fred::rightmost_cdf(3, 1.0, -3.0 + 0.3 * i);
            if (v < prev) mono = false;
            prev = v;
        }
        r.verdict("N3_monotone", mono);
        r.check_le("rank_one_half", std::abs(fred::rightmost_cdf(1, 0.5, 0.0) - 0.5), 1e-9);

        const std::uint64_t st = kFredStream;
        r.streams = {st};
        const std::size_t n = 1000000;
        Eigen::MatrixXd x = sample_particles(EnsembleKind::make(EnsembleTag::GUE, 2), 1.0, n, RngStream(o.seed, st), o.threads);
        std::vector<double> ind(n);
        for (std::size_t i = 0; i < n; ++i) ind[i] = x(Eigen::Index(i), 1) <= 2.0;
        MeanStat m = mean_and_stderr(ind);
        const double det = fred::rightmost_cdf(2, 1.0, 2.0);
        r.param("mc_samples", (long long)n);
        r.stat("mc_P(max<=2)", m.mean, m.std_error);
        r.statistics.push_back({"det_P(max<=2)", det, std::nullopt, std::nullopt});
        r.check_le("N2_alpha2.z", std::abs(m.mean - det) / m.std_error, 3.0);
        // Det route through the generic Nystrom driver
        fred::GapSpec g{kern::ExtendedKernel::hermite(2), 1.0, 2.0, fred::rightmost_upper_cut(2, 1.0, 2.0)};
        r.check_le("N2_alpha2.generic_det", std::abs(fred::fredholm_det(g) - det), 1e-8);
        out.push_back(std::move(r));
    }
    {
        ExperimentReport r = make_report("fredholm.sine_gap", o);
        const double a = 1e-2;
        r.check_le("small_window", std::abs(fred::sine_gap(a) - (1 - 2 * a / std::numbers::pi)), 1e-7);
        bool mono = true;
        double prev = 1.0;
        for (double w = 0.25; w <= 3.0; w += 0.25) {
            double v = fred::sine_gap(w);
            if (!(v < prev)) mono = false;
            prev = v;
        }
        r.verdict("decreasing", mono);
        out.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------- bridge, hc

Reports suite_bridge(const SuiteOptions& o) {
    return {run_bridge_check(2, 1.0, {0.05, 0.5, 1.0}, 100000, o.seed, kBridgeStream, o.threads)};
}

Reports suite_hc(const SuiteOptions& o) {
    ExperimentReport r = make_report("hc.harish_chandra", o);
    r.streams = {kHcStream};
    const std::size_t n = 1000000;
    r.param("n_mc", (long long)n);
    struct Case {
        std::vector<double> x, y;
        double sigma;
    };
    const Case cases[] = {{{0.3}, {1.1}, 0.8}, {{0.0, 1.0}, {0.5, 2.0}, 1.0}, {{0.0, 1.0, 2.5}, {-0.5, 0.5, 2.0}, 1.5}};
    for (const auto& c : cases) {
        const int N = int(c.x.size());
        OrderedConfiguration x = validate_chamber(c.x, Chamber::A), y = validate_chamber(c.y, Chamber::A);
        RngStream rng = RngStream(o.seed, kHcStream).split(std::uint64_t(N) << 32);
        auto rep = ens::harish_chandra_check(x, y, c.sigma, n, rng, o.threads);
        const std::string tag = "N" + std::to_string(N);
        r.stat(tag + ".lhs_mc", rep.lhs_mc, rep.lhs_stderr);
        r.statistics.push_back({tag + ".rhs", rep.rhs_exact, std::nullopt, std::nullopt});
        if (N == 1) {
            r.check_le(tag + ".abs_diff", std::abs(rep.lhs_mc - rep.rhs_exact), 1e-14);
            r.check_le(tag + ".rhs_vs_gaussian", std::abs(rep.rhs_exact - std::exp(-0.64 / (2 * 0.64))), 1e-14);
        } else {
            r.check_le(tag + ".z", std::abs(rep.lhs_mc - rep.rhs_exact) / rep.lhs_stderr, 3.0);
        }
        r.check_le(tag + ".rhs_symmetry", std::abs(ens::harish_chandra_rhs(x, y, c.sigma) - ens::harish_chandra_rhs(y, x, c.sigma)),
                   1e-12 * rep.rhs_exact);
    }
    return {r};
}

using SuiteFn = Reports (*)(const SuiteOptions&);

SuiteFn lookup(const std::string& name) {
    if (name == "densities") return suite_densities;
    if (name == "km") return suite_km;
    if (name == "ensembles") return suite_ensembles;
    if (name == "sde") return suite_sde;
    if (name == "kernels") return suite_kernels;
    if (name == "fredholm") return suite_fredholm;
    if (name == "bridge") return suite_bridge;
    if (name == "hc") return suite_hc;
    throw DomainError("unknown suite '" + name + "'");
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"densities", "km", "ensembles", "sde", "kernels", "fredholm", "bridge", "hc", "all"};
    return names;
}

std::vector<ExperimentReport> run_suite(const std::string& name, const SuiteOptions& options) {
    if (name == "all") {
        Reports all;
        for (const auto& n : suite_names()) {
            if (n == "all") continue;
            Reports part = run_suite(n, options);
            all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
        }
        return all;
    }
    SuiteFn fn = lookup(name);
    const auto start = std::chrono::steady_clock::now();
    Reports out = fn(options);
    if (options.timing) {
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        for (auto& r : out) r.wall_time = secs / double(out.size());
    }
    return out;
}

}  // namespace noncollide::experiments
