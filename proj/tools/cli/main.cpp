#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "noncollide/densities1d.hpp"
#include "noncollide/ensembles.hpp"
#include "noncollide/errors.hpp"
#include "noncollide/experiments.hpp"
#include "noncollide/fredholm.hpp"
#include "noncollide/kernels.hpp"
#include "noncollide/parallel.hpp"
#include "noncollide/report.hpp"
#include "noncollide/sde.hpp"
#include "noncollide/suites.hpp"

namespace nc = noncollide;
namespace ex = noncollide::experiments;
using ex::fmt;

namespace {

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;

    explicit Output(const std::string& path) {
        if (path.empty() || path == "-") return;
        file.open(path, std::ios::binary);
        if (!file) throw nc::Error("cannot open '" + path + "' for writing");
        os = &file;
    }
    std::ostream& operator*() { return *os; }
};

// ordered key=value echo
struct Config {
    std::vector<std::pair<std::string, std::string>> items;
    void add(const std::string& k, const std::string& v) { items.emplace_back(k, v); }
    void add(const std::string& k, double v) { add(k, fmt(v)); }
    void add(const std::string& k, long long v) { add(k, std::to_string(v)); }
    std::string line() const {
        std::string s = "#";
        for (std::size_t i = 0; i < items.size(); ++i) s += (i ? "," : " ") + items[i].first + "=" + items[i].second;
        return s;
    }
    std::map<std::string, std::string> map() const { return {items.begin(), items.end()}; }
};

std::uint64_t default_seed() {
    const char* env = std::getenv("NONCOLLIDE_SEED");
    if (!env || !*env) return 0;
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(env, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != std::string(env).size()) throw CLI::ValidationError("NONCOLLIDE_SEED", "not an unsigned integer");
    return v;
}

std::string csv_row(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
    return s;
}

void write_rows(std::ostream& os, const std::string& format, const Config& cfg, const std::vector<std::string>& columns,
                const std::vector<std::vector<double>>& rows) {
    if (format == "json") {
        os << "{\n  \"config\": {";
        for (std::size_t i = 0; i < cfg.items.size(); ++i)
            os << (i ? ", " : "") << '"' << cfg.items[i].first << "\": \"" << cfg.items[i].second << '"';
        os << "},\n  \"columns\": [";
        for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? ", " : "") << '"' << columns[i] << '"';
        os << "],\n  \"rows\": [";
        for (std::size_t i = 0; i < rows.size(); ++i) os << (i ? ",\n    [" : "\n    [") << csv_row(rows[i]) << "]";
        os << "\n  ]\n}\n";
        return;
    }
    os << cfg.line() << "\n";
    if (!columns.empty()) {
        for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
        os << "\n";
    }
    for (const auto& r : rows) os << csv_row(r) << "\n";
}

void write_plot_script(const std::string& csv_path, const std::string& what, const std::vector<std::string>& columns) {
    const std::string path = csv_path + ".py";
    std::ofstream os(path);
    if (!os) throw nc::Error("cannot open '" + path + "' for writing");
    std::string ycols = what == "tw" ? "[1, 2]" : std::to_string(columns.size() - 1);
    if (what != "tw") ycols = "[" + ycols + "]";
    const std::string xcol = what == "kernel" ? "1" : "0";
    os << "# plot " << what << " table from " << csv_path << "\n"
       << "import csv\nimport sys\nimport matplotlib\nmatplotlib.use('Agg')\nimport matplotlib.pyplot as plt\n\n"
       << "path = sys.argv[1] if len(sys.argv) > 1 else " << '"' << csv_path << "\"\n"
       << "with open(path) as f:\n"
       << "    lines = [l for l in f if not l.startswith('#')]\n"
       << "rows = list(csv.reader(lines))\nheader, data = rows[0], [[float(v) for v in r] for r in rows[1:]]\n"
       << "x = [r[" << xcol << "] for r in data]\n"
       << "for c in " << ycols << ":\n"
       << "    plt.plot(x, [r[c] for r in data], label=header[c])\n"
       << "plt.xlabel(header[" << xcol << "])\nplt.legend()\nplt.savefig(path + '.png', dpi=120)\n";
}

std::vector<double> grid(double lo, double hi, double step) {
    if (!(step > 0.0)) throw CLI::ValidationError("--step", "must be positive");
    if (!(hi >= lo)) throw CLI::ValidationError("--max", "must not be below --min");
    const long long n = std::llround((hi - lo) / step) + 1;
    std::vector<double> g(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) g[std::size_t(i)] = lo + double(i) * step;
    return g;
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
    std::string kind, sde, out, format = "csv";
    int n = 2;
    std::optional<double> nu, beta, horizon;
    double t = 1.0, dt_max = 1e-3;
    long long count = 1;
    std::uint64_t seed = 0, stream = 0;
    unsigned threads = 0;
    bool radii = false, path = false;
    int steps = 100;
};

int cmd_sample(const SampleArgs& a) {
    Config cfg;
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(a.count));
    if (!a.sde.empty()) {
        const double p = a.sde == "dyson" ? a.beta.value_or(2.0) : a.nu.value_or(0.0);
        const nc::sde::System sys = a.sde == "dyson" ? nc::sde::System::dyson(p) : nc::sde::System::bessel(p);
        cfg.add("sde", a.sde);
        cfg.add(a.sde == "dyson" ? "beta" : "nu", p);
        cfg.add("N", (long long)a.n);
        cfg.add("t", a.t);
        cfg.add("seed", (long long)a.seed);
        cfg.add("stream", (long long)a.stream);
        cfg.add("dt_max", a.dt_max);
        Output out(a.out);
        if (a.path) {
            nc::RngStream rng(a.seed, a.stream);
            std::vector<double> x0(std::size_t(a.n), 0.0);
            auto run = nc::sde::simulate(sys, x0, nc::TimeGrid::uniform(a.t, a.steps), rng, a.dt_max);
            nc::sde::write_path_csv(*out, run, a.seed, a.stream, a.dt_max);
            return 0;
        }
        cfg.add("count", a.count);
        Eigen::MatrixXd x = ex::sde_particle_paths(sys, a.n, {a.t}, std::size_t(a.count), nc::RngStream(a.seed, a.stream),
                                                   a.dt_max, a.threads)[0];
        for (Eigen::Index i = 0; i < x.rows(); ++i) rows[std::size_t(i)].assign(x.row(i).data(), x.row(i).data() + x.cols());
        write_rows(*out, a.format, cfg, {}, rows);
        return 0;
    }

    nc::ens::EnsembleKind k = nc::ens::EnsembleKind::make(nc::ens::parse_tag(a.kind), a.n);
    k.nu = a.nu;
    k.beta = a.beta;
    k.horizon = a.horizon;
    k.validate();
    if (k.tag == nc::ens::EnsembleTag::GUEtoGOEBridge && a.t > *k.horizon)
        throw nc::DomainError("bridge time must not exceed the horizon");
    cfg.add("kind", a.kind);
    cfg.add("N", (long long)a.n);
    cfg.add("t", a.t);
    cfg.add("seed", (long long)a.seed);
    cfg.add("stream", (long long)a.stream);
    cfg.add("count", a.count);
    if (a.nu) cfg.add("nu", *a.nu);
    if (a.beta) cfg.add("beta", *a.beta);
    if (a.horizon) cfg.add("horizon", *a.horizon);
    if (a.radii) cfg.add("radii", std::string("true"));
    const bool full = k.tag == nc::ens::EnsembleTag::ClassC || k.tag == nc::ens::EnsembleTag::ClassD;
    const bool complex = k.tag == nc::ens::EnsembleTag::Ginibre;
    cfg.add("values", std::string(complex ? "re,im pairs sorted by re" : full ? "full spectrum" : "particles"));
    const std::size_t n = std::size_t(a.count);
    const nc::RngStream root(a.seed, a.stream);
    nc::for_each_block(nc::block_count(n), a.threads, [&](std::size_t b) {
        nc::RngStream rng = root.split(b);
        for (std::size_t i = b * nc::kBlockSize; i < std::min(n, (b + 1) * nc::kBlockSize); ++i) {
            nc::ens::MatrixSample m = nc::ens::sample_matrix(k, a.t, rng);
            if (complex) {
                auto z = nc::ens::complex_eigenvalues(m);
                std::sort(z.begin(), z.end(), [](auto p, auto q) { return p.real() < q.real() || (p.real() == q.real() && p.imag() < q.imag()); });
                for (auto c : z) {
                    rows[i].push_back(c.real());
                    rows[i].push_back(c.imag());
                }
            } else if (full) {
                rows[i] = nc::ens::eigenvalues(m);
            } else {
                rows[i] = a.radii ? nc::ens::radii(m) : nc::ens::particles(m);
            }
        }
    });
    Output out(a.out);
    write_rows(*out, a.format, cfg, {}, rows);
    return 0;
}

// ---------------------------------------------------------------- table

struct TableArgs {
    std::string what, fn = "bm", family = "hermite", out, format = "csv";
    int n = 1;
    double nu = 0.0, kappa = 1.0, horizon = 1.0, s = 1.0, t = 1.0, x0 = 0.0;
    std::optional<double> y;
    double lo = -3.0, hi = 3.0, step = 0.1;
    bool plot = false;
};

int cmd_table(const TableArgs& a) {
    Config cfg;
    cfg.add("what", a.what);
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    const std::vector<double> g = grid(a.lo, a.hi, a.step);
    if (a.what == "density") {
        cfg.add("fn", a.fn);
        cfg.add("N", (long long)a.n);
        cfg.add("t", a.t);
        cfg.add("x0", a.x0);
        cfg.add("nu", a.nu);
        cfg.add("kappa", a.kappa);
        cfg.add("T", a.horizon);
        std::function<double(double)> f;
        if (a.fn == "bm") f = [&](double x) { return nc::dens::bm_density(a.t, x, a.x0); };
        else if (a.fn == "bridge") f = [&](double x) { return nc::dens::bridge_density(0.0, a.x0, a.t, x, a.horizon); };
        else if (a.fn == "absorbing") f = [&](double x) { return nc::dens::absorbing_density(a.t, x, a.x0); };
        else if (a.fn == "bessel3")
            f = [&](double x) { return a.x0 == 0.0 ? nc::dens::bessel3_density_origin(a.t, x) : nc::dens::bessel3_density(a.t, x, a.x0); };
        else if (a.fn == "bessel") f = [&](double x) { return nc::dens::bessel_density(a.nu, a.t, x, a.x0); };
        else if (a.fn == "meander") f = [&](double x) { return nc::dens::meander_density(0.0, a.x0, a.t, x, a.horizon); };
        else if (a.fn == "gen-meander")
            f = [&](double x) { return nc::dens::gen_meander_density({a.nu, a.kappa, a.horizon}, 0.0, a.x0, a.t, x); };
        // one-particle marginals of the noncolliding systems started at the origin
        else if (a.fn == "pN") f = [&](double x) { return nc::kern::kernel_hermite(a.n, a.t, x, a.t, x) / a.n; };
        else if (a.fn == "pNnu") f = [&](double x) { return nc::kern::kernel_laguerre(a.n, a.nu, a.t, x, a.t, x) / a.n; };
        else throw CLI::ValidationError("--fn", "unknown density '" + a.fn + "'");
        columns = {"x", "value"};
        for (double x : g) rows.push_back({x, f(x)});
    } else if (a.what == "kernel") {
        cfg.add("family", a.family);
        cfg.add("N", (long long)a.n);
        cfg.add("nu", a.nu);
        cfg.add("s", a.s);
        cfg.add("t", a.t);
        cfg.add("y", a.y ? fmt(*a.y) : std::string("x"));
        nc::kern::ExtendedKernel k;
        if (a.family == "hermite") k = nc::kern::ExtendedKernel::hermite(a.n);
        else if (a.family == "laguerre") k = nc::kern::ExtendedKernel::laguerre(a.n, a.nu);
        else if (a.family == "sine") k = nc::kern::ExtendedKernel::sine();
        else if (a.family == "airy") k = nc::kern::ExtendedKernel::airy();
        else if (a.family == "bessel") k = nc::kern::ExtendedKernel::bessel_hard(a.nu);
        else throw CLI::ValidationError("--family", "unknown kernel family '" + a.family + "'");
        columns = {"s", "x", "t", "y", "value"};
        for (double x : g) {
            const double y = a.y.value_or(x);
            rows.push_back({a.s, x, a.t, y, k(a.s, x, a.t, y)});
        }
    } else if (a.what == "tw") {
        columns = {"alpha", "F_fredholm", "F_painleve", "abs_diff"};
        for (double x : g) {
            const double f = nc::fred::tracy_widom_fredholm(x), p = nc::fred::tracy_widom_painleve(x);
            rows.push_back({x, f, p, std::abs(f - p)});
        }
    } else if (a.what == "sine-gap") {
        columns = {"a", "value"};
        for (double x : g) rows.push_back({x, nc::fred::sine_gap(x)});
    } else if (a.what == "rightmost") {
        cfg.add("N", (long long)a.n);
        cfg.add("t", a.t);
        columns = {"alpha", "value"};
        for (double x : g) rows.push_back({x, nc::fred::rightmost_cdf(a.n, a.t, x)});
    } else {
        throw CLI::ValidationError("--what", "unknown table '" + a.what + "'");
    }
    cfg.add("min", a.lo);
    cfg.add("max", a.hi);
    cfg.add("step", a.step);
    cfg.add("rows", (long long)rows.size());
    if (a.plot && (a.out.empty() || a.out == "-")) throw CLI::ValidationError("--plot", "needs --out");
    {
        Output out(a.out);
        write_rows(*out, a.format, cfg, columns, rows);
    }
    if (a.plot) write_plot_script(a.out, a.what, columns);
    return 0;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string suite, out;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    double dt_max = 1e-3;
    bool timing = false;
};

int cmd_verify(const VerifyArgs& a) {
    const auto& names = ex::suite_names();
    if (std::find(names.begin(), names.end(), a.suite) == names.end())
        throw CLI::ValidationError("--suite", "unknown suite '" + a.suite + "'");
    ex::SuiteOptions opt{a.seed, a.threads, a.dt_max, a.timing};
    std::vector<ex::ExperimentReport> reports = ex::run_suite(a.suite, opt);
    Config cfg;
    cfg.add("dt_max", a.dt_max);
    cfg.add("threads", (long long)nc::resolve_threads(a.threads));
    cfg.add("timing", std::string(a.timing ? "true" : "false"));
    bool ok = true;
    for (const auto& r : reports) {
        if (r.passed()) continue;
        ok = false;
        for (const auto& v : r.verdicts)
            if (!v.pass) std::cerr << "FAIL " << r.experiment_id << ": " << v.criterion << "\n";
    }
    Output out(a.out);
    *out << ex::to_json(reports, a.suite, a.seed, cfg.map()) << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"noncollide: noncolliding diffusions, random matrix processes and determinantal kernels"};
    app.require_subcommand(1);
    std::uint64_t seed_default = 0;
    try {
        seed_default = default_seed();
    } catch (const CLI::Error& e) {
        std::cerr << "noncollide: " << e.what() << "\n";
        return 2;
    }

    SampleArgs sa;
    sa.seed = seed_default;
    auto* sample = app.add_subcommand("sample", "draw eigenvalue or SDE particle samples");
    sample->add_option("--kind", sa.kind, "gue goe gse laguerre wishart classc classd bridge tridiagonal ginibre");
    sample->add_option("--sde", sa.sde, "simulate the SDE system instead")->check(CLI::IsMember({"dyson", "bessel"}));
    sample->add_option("--n", sa.n, "number of particles")->check(CLI::PositiveNumber);
    sample->add_option("--nu", sa.nu);
    sample->add_option("--beta", sa.beta);
    sample->add_option("--horizon", sa.horizon);
    sample->add_option("--t", sa.t)->check(CLI::PositiveNumber);
    sample->add_option("--count", sa.count)->check(CLI::PositiveNumber);
    sample->add_option("--seed", sa.seed);
    sample->add_option("--stream", sa.stream);
    sample->add_option("--out", sa.out);
    sample->add_option("--format", sa.format)->check(CLI::IsMember({"csv", "json"}));
    sample->add_option("--threads", sa.threads);
    sample->add_option("--dt-max", sa.dt_max)->check(CLI::PositiveNumber);
    sample->add_flag("--radii", sa.radii, "square roots of Laguerre/Wishart eigenvalues");
    sample->add_flag("--path", sa.path, "with --sde: one full path as time,particle_index,position");
    sample->add_option("--steps", sa.steps, "with --path: output grid size")->check(CLI::PositiveNumber);

    TableArgs ta;
    auto* table = app.add_subcommand("table", "tabulate densities, kernels and Fredholm quantities");
    table->add_option("--what", ta.what)->required()->check(CLI::IsMember({"density", "kernel", "tw", "sine-gap", "rightmost"}));
    table->add_option("--fn", ta.fn, "bm bridge absorbing bessel3 bessel meander gen-meander pN pNnu");
    table->add_option("--family", ta.family, "hermite laguerre sine airy bessel");
    table->add_option("--n", ta.n)->check(CLI::PositiveNumber);
    table->add_option("--nu", ta.nu);
    table->add_option("--kappa", ta.kappa);
    table->add_option("--horizon,--T", ta.horizon);
    table->add_option("--s", ta.s);
    table->add_option("--t", ta.t);
    table->add_option("--x0", ta.x0);
    table->add_option("--y", ta.y);
    table->add_option("--min,--x-min,--alpha-min,--a-min", ta.lo);
    table->add_option("--max,--x-max,--alpha-max,--a-max", ta.hi);
    table->add_option("--step", ta.step);
    table->add_option("--out", ta.out);
    table->add_option("--format", ta.format)->check(CLI::IsMember({"csv", "json"}));
    table->add_flag("--plot", ta.plot, "also write <out>.py plotting the CSV");

    VerifyArgs va;
    va.seed = seed_default;
    auto* verify = app.add_subcommand("verify", "run a verification suite and write its JSON report");
    verify->add_option("--suite", va.suite)->required();
    verify->add_option("--seed", va.seed);
    verify->add_option("--out", va.out);
    verify->add_option("--threads", va.threads);
    verify->add_option("--dt-max", va.dt_max)->check(CLI::PositiveNumber);
    verify->add_flag("--timing", va.timing, "record wall_time (reports are then not byte-reproducible)");

    try {
        app.parse(argc, argv);
        if (sample->parsed() && sa.kind.empty() == sa.sde.empty())
            throw CLI::ValidationError("sample", "give exactly one of --kind or --sde");
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        if (sample->parsed()) return cmd_sample(sa);
        if (table->parsed()) return cmd_table(ta);
        return cmd_verify(va);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "noncollide: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "noncollide: " << e.what() << "\n";
        return 3;
    }
}
