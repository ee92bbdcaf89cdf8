#include "noncollide/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "noncollide/karlin_mcgregor.hpp"
#include "noncollide/linalg.hpp"
#include "noncollide/parallel.hpp"

namespace noncollide::ens {

namespace {

using cd = std::complex<double>;
constexpr cd kI(0.0, 1.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

bool integer_nu(const EnsembleKind& k) { return k.nu && *k.nu == std::floor(*k.nu) && *k.nu >= 0.0; }

int sym_count(int n) { return n * (n + 1) / 2; }
int anti_count(int n) { return n * (n - 1) / 2; }

// Brownian coordinates split into free ones and bridge ones (bridge kind only).
struct Layout {
    int free = 0;
    int bridged = 0;
};

Layout layout(const EnsembleKind& k) {
    const int n = k.n, s = sym_count(n), a = anti_count(n);
    switch (k.tag) {
        case EnsembleTag::GUE: return {s + a, 0};
        case EnsembleTag::GOE: return {s, 0};
        case EnsembleTag::GSE: return {s + 3 * a, 0};
        case EnsembleTag::ClassC: return {a + 3 * s, 0};
        case EnsembleTag::ClassD: return {3 * a + s, 0};
        case EnsembleTag::GUEtoGOEBridge: return {s, a};
        case EnsembleTag::LaguerreProcess: return {2 * n * (n + int(*k.nu)), 0};
        case EnsembleTag::WishartProcess: return {n * (n + int(*k.nu)), 0};
        default: return {0, 0};
    }
}

Eigen::MatrixXd take_sym(const double*& c, int n) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = *c++;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) m(i, j) = m(j, i) = kInvSqrt2 * *c++;
    return m;
}

Eigen::MatrixXd take_anti(const double*& c, int n) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            m(i, j) = kInvSqrt2 * *c++;
            m(j, i) = -m(i, j);
        }
    return m;
}

// sigma_0..sigma_3
Eigen::Matrix2cd pauli(int r) {
    Eigen::Matrix2cd s;
    switch (r) {
        case 0: s << 1, 0, 0, 1; break;
        case 1: s << 0, 1, 1, 0; break;
        case 2: s << 0, -kI, kI, 0; break;
        default: s << 1, 0, 0, -1; break;
    }
    return s;
}

void add_kron(Eigen::MatrixXcd& out, const Eigen::MatrixXcd& a, int r) {
    const Eigen::Matrix2cd s = pauli(r);
    const Eigen::Index n = a.rows();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            for (int p = 0; p < 2; ++p)
                for (int q = 0; q < 2; ++q) out(2 * i + p, 2 * j + q) += a(i, j) * s(p, q);
}

Eigen::MatrixXcd assemble(const EnsembleKind& k, const std::vector<double>& coords) {
    const int n = k.n;
    const double* c = coords.data();
    switch (k.tag) {
        case EnsembleTag::GUE:
        case EnsembleTag::GUEtoGOEBridge: {
            Eigen::MatrixXd s = take_sym(c, n);
            Eigen::MatrixXd a = take_anti(c, n);
            return s.cast<cd>() + kI * a.cast<cd>();
        }
        case EnsembleTag::GOE: return take_sym(c, n).cast<cd>();
        case EnsembleTag::GSE: {
            Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
            add_kron(out, take_sym(c, n).cast<cd>(), 0);
            for (int r = 1; r <= 3; ++r) add_kron(out, kI * take_anti(c, n).cast<cd>(), r);
            return out;
        }
        case EnsembleTag::ClassC: {
            Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
            add_kron(out, kI * take_anti(c, n).cast<cd>(), 0);
            for (int r = 1; r <= 3; ++r) add_kron(out, take_sym(c, n).cast<cd>(), r);
            return out;
        }
        case EnsembleTag::ClassD: {
            Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
            for (int r = 0; r <= 2; ++r) add_kron(out, kI * take_anti(c, n).cast<cd>(), r);
            add_kron(out, take_sym(c, n).cast<cd>(), 3);
            return out;
        }
        case EnsembleTag::LaguerreProcess: {
            const int rows = n + int(*k.nu);
            Eigen::MatrixXcd l(rows, n);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < n; ++j) {
                    double re = *c++;
                    l(i, j) = cd(re, *c++);
                }
            return l.adjoint() * l;
        }
        case EnsembleTag::WishartProcess: {
            const int rows = n + int(*k.nu);
            Eigen::MatrixXd w(rows, n);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < n; ++j) w(i, j) = *c++;
            return (w.transpose() * w).cast<cd>();
        }
        default: break;
    }
    throw DomainError("kind has no Brownian coordinate representation");
}

MatrixSample static_sample(const EnsembleKind& k, double t, RngStream& rng) {
    const int n = k.n;
    MatrixSample m{k, t, {}};
    if (k.tag == EnsembleTag::BetaTridiagonal) {
        m.time = 1.0;
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) h(i, i) = rng.gaussian();
        for (int i = 0; i + 1 < n; ++i) h(i, i + 1) = h(i + 1, i) = kInvSqrt2 * rng.chi((n - 1 - i) * *k.beta);
        m.entries = h.cast<cd>();
    } else if (k.tag == EnsembleTag::Ginibre) {
        m.time = 1.0;
        m.entries.resize(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double re = kInvSqrt2 * rng.gaussian();
                m.entries(i, j) = cd(re, kInvSqrt2 * rng.gaussian());
            }
    } else {
        // complex chiral model, bidiagonal reduction: any real nu > -1
        const double nu = *k.nu, st = std::sqrt(t);
        Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            b(i, i) = st * rng.chi(2.0 * (n + nu - i));
            if (i + 1 < n) b(i, i + 1) = st * rng.chi(2.0 * (n - 1 - i));
        }
        m.entries = (b.transpose() * b).cast<cd>();
    }
    return m;
}

bool sample_is_real(const MatrixSample& m) {
    switch (m.kind.tag) {
        case EnsembleTag::GOE:
        case EnsembleTag::WishartProcess:
        case EnsembleTag::BetaTridiagonal: return true;
        case EnsembleTag::LaguerreProcess: return !integer_nu(m.kind);
        case EnsembleTag::GUEtoGOEBridge: return m.kind.horizon && m.time == *m.kind.horizon;
        default: return false;
    }
}

}  // namespace

std::string to_string(EnsembleTag tag) {
    switch (tag) {
        case EnsembleTag::GUE: return "gue";
        case EnsembleTag::GOE: return "goe";
        case EnsembleTag::GSE: return "gse";
        case EnsembleTag::LaguerreProcess: return "laguerre";
        case EnsembleTag::WishartProcess: return "wishart";
        case EnsembleTag::ClassC: return "classc";
        case EnsembleTag::ClassD: return "classd";
        case EnsembleTag::GUEtoGOEBridge: return "bridge";
        case EnsembleTag::BetaTridiagonal: return "tridiagonal";
        case EnsembleTag::Ginibre: return "ginibre";
    }
    return "?";
}

EnsembleTag parse_tag(const std::string& name) {
    for (EnsembleTag t : {EnsembleTag::GUE, EnsembleTag::GOE, EnsembleTag::GSE, EnsembleTag::LaguerreProcess,
                          EnsembleTag::WishartProcess, EnsembleTag::ClassC, EnsembleTag::ClassD,
                          EnsembleTag::GUEtoGOEBridge, EnsembleTag::BetaTridiagonal, EnsembleTag::Ginibre})
        if (to_string(t) == name) return t;
    throw DomainError("unknown ensemble kind '" + name + "'");
}

EnsembleKind EnsembleKind::make(EnsembleTag tag, int n) {
    EnsembleKind k;
    k.tag = tag;
    k.n = n;
    return k;
}

EnsembleKind EnsembleKind::laguerre(int n, double nu) {
    EnsembleKind k = make(EnsembleTag::LaguerreProcess, n);
    k.nu = nu;
    return k;
}

EnsembleKind EnsembleKind::wishart(int n, int nu) {
    EnsembleKind k = make(EnsembleTag::WishartProcess, n);
    k.nu = nu;
    return k;
}

EnsembleKind EnsembleKind::tridiagonal(int n, double beta) {
    EnsembleKind k = make(EnsembleTag::BetaTridiagonal, n);
    k.beta = beta;
    return k;
}

EnsembleKind EnsembleKind::bridge(int n, double horizon) {
    EnsembleKind k = make(EnsembleTag::GUEtoGOEBridge, n);
    k.horizon = horizon;
    return k;
}

void EnsembleKind::validate() const {
    if (n < 1) throw DomainError("ensemble size must be >= 1");
    switch (tag) {
        case EnsembleTag::LaguerreProcess:
            if (!nu) throw ParamMissing("laguerre needs nu");
            if (!(*nu > -1.0)) throw DomainError("laguerre needs nu > -1");
            break;
        case EnsembleTag::WishartProcess:
            if (!nu) throw ParamMissing("wishart needs nu");
            if (!(*nu >= 0.0 && *nu == std::floor(*nu))) throw DomainError("wishart needs integer nu >= 0");
            break;
        case EnsembleTag::BetaTridiagonal:
            if (!beta) throw ParamMissing("tridiagonal needs beta");
            if (!(*beta > 0.0)) throw DomainError("tridiagonal needs beta > 0");
            break;
        case EnsembleTag::GUEtoGOEBridge:
            if (!horizon) throw ParamMissing("bridge needs a horizon T");
            if (!(*horizon > 0.0)) throw DomainError("bridge horizon must be positive");
            break;
        default: break;
    }
}

int EnsembleKind::dim() const {
    switch (tag) {
        case EnsembleTag::GSE:
        case EnsembleTag::ClassC:
        case EnsembleTag::ClassD: return 2 * n;
        default: return n;
    }
}

bool EnsembleKind::complex_entries() const {
    switch (tag) {
        case EnsembleTag::GOE:
        case EnsembleTag::WishartProcess:
        case EnsembleTag::BetaTridiagonal: return false;
        case EnsembleTag::LaguerreProcess: return nu && *nu == std::floor(*nu) && *nu >= 0.0;
        default: return true;
    }
}

bool EnsembleKind::static_only() const {
    return tag == EnsembleTag::BetaTridiagonal || tag == EnsembleTag::Ginibre ||
           (tag == EnsembleTag::LaguerreProcess && !integer_nu(*this));
}

MatrixSample sample_matrix(const EnsembleKind& kind, double t, RngStream& stream) {
    kind.validate();
    if (kind.tag != EnsembleTag::BetaTridiagonal && kind.tag != EnsembleTag::Ginibre && !(t > 0.0))
        throw NonPositiveTime("sample_matrix needs t > 0");
    if (kind.static_only()) return static_sample(kind, t, stream);
    Layout lay = layout(kind);
    std::vector<double> c(lay.free + lay.bridged);
    double sd = std::sqrt(t);
    for (int i = 0; i < lay.free; ++i) c[i] = sd * stream.gaussian();
    if (lay.bridged > 0) {
        const double T = *kind.horizon;
        if (t > T) throw TimeOrdering("bridge sampled past its horizon");
        double sb = std::sqrt(t * (T - t) / T);
        for (int i = lay.free; i < lay.free + lay.bridged; ++i) c[i] = sb * stream.gaussian();
        if (t == T) std::fill(c.begin() + lay.free, c.end(), 0.0);
    }
    return {kind, t, assemble(kind, c)};
}

MatrixPath sample_path(const EnsembleKind& kind, const TimeGrid& grid, RngStream& stream) {
    kind.validate();
    if (kind.static_only()) throw DomainError(to_string(kind.tag) + " has no path sampler (static only)");
    double T = 0.0;
    if (kind.tag == EnsembleTag::GUEtoGOEBridge) {
        if (!grid.horizon() || *grid.horizon() != *kind.horizon)
            throw DomainError("bridge path needs a grid whose horizon equals T");
        T = *kind.horizon;
    }
    Layout lay = layout(kind);
    std::vector<double> c(lay.free + lay.bridged, 0.0);
    MatrixPath path{kind, grid, {}};
    path.samples.reserve(grid.size());
    double prev = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double t = grid[k], dt = t - prev;
        if (dt > 0.0) {
            const double sd = std::sqrt(dt);
            for (int i = 0; i < lay.free; ++i) c[i] += sd * stream.gaussian();
            if (lay.bridged > 0) {
                if (t >= T) {
                    std::fill(c.begin() + lay.free, c.end(), 0.0);
                } else {
                    // conditional step of a bridge pinned at (T, 0)
                    const double shrink = (T - t) / (T - prev);
                    const double sb = std::sqrt(dt * shrink);
                    for (int i = lay.free; i < lay.free + lay.bridged; ++i) c[i] = c[i] * shrink + sb * stream.gaussian();
                }
            }
        }
        path.samples.push_back({kind, t, assemble(kind, c)});
        prev = t;
    }
    return path;
}

EigenDecomposition eigen_decomposition(const MatrixSample& m) {
    if (m.kind.tag == EnsembleTag::Ginibre) throw DomainError("ginibre samples are not Hermitian");
    EigenDecomposition out;
    if (sample_is_real(m)) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.entries.real());
        if (es.info() != Eigen::Success) throw ConvergenceFailure("symmetric eigensolver did not converge");
        out.values = es.eigenvalues();
        out.vectors = es.eigenvectors().cast<cd>();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.entries);
        if (es.info() != Eigen::Success) throw ConvergenceFailure("Hermitian eigensolver did not converge");
        out.values = es.eigenvalues();
        out.vectors = es.eigenvectors();
    }
    return out;
}

std::vector<double> eigenvalues(const MatrixSample& m) {
    if (m.kind.tag == EnsembleTag::Ginibre) throw DomainError("ginibre samples are not Hermitian");
    Eigen::VectorXd v;
    if (sample_is_real(m)) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.entries.real(), Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw ConvergenceFailure("symmetric eigensolver did not converge");
        v = es.eigenvalues();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.entries, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw ConvergenceFailure("Hermitian eigensolver did not converge");
        v = es.eigenvalues();
    }
    std::vector<double> out(v.data(), v.data() + v.size());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> particles(const MatrixSample& m) {
    std::vector<double> ev = eigenvalues(m);
    const std::size_t n = std::size_t(m.kind.n);
    switch (m.kind.tag) {
        case EnsembleTag::GSE: {
            std::vector<double> out(n);
            for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (ev[2 * i] + ev[2 * i + 1]);
            return out;
        }
        case EnsembleTag::ClassC:
        case EnsembleTag::ClassD: {
            // spectrum is {+-omega}; the upper half, reflected through the lower half for symmetry
            std::vector<double> out(n);
            for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (ev[n + i] - ev[n - 1 - i]);
            return out;
        }
        default: return ev;
    }
}

std::vector<double> radii(const MatrixSample& m) {
    switch (m.kind.tag) {
        case EnsembleTag::LaguerreProcess:
        case EnsembleTag::WishartProcess: {
            std::vector<double> ev = eigenvalues(m);
            for (double& v : ev) v = std::sqrt(std::max(0.0, v));
            return ev;
        }
        case EnsembleTag::ClassC:
        case EnsembleTag::ClassD: return particles(m);
        default: throw DomainError("radii defined for laguerre, wishart, classc, classd");
    }
}

std::vector<std::complex<double>> complex_eigenvalues(const MatrixSample& m) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m.entries, false);
    if (es.info() != Eigen::Success) throw ConvergenceFailure("complex eigensolver did not converge");
    std::vector<cd> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(out.begin(), out.end(), [](cd a, cd b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); });
    return out;
}

double log_eigen_density_exact(EnsembleTag tag, std::span<const double> x, double t) {
    if (!(t > 0.0)) throw NonPositiveTime("eigen density needs t > 0");
    const int n = int(x.size());
    const km::NormalizationConstants c = km::constants(n);
    std::vector<double> xs(x.begin(), x.end());
    double sq = 0.0;
    for (double& v : xs) {
        sq += v * v;
        v /= std::sqrt(t);
    }
    const double lh = km::log_abs_vandermonde(xs);
    const double base = -0.5 * n * std::log(t) - sq / (2.0 * t);
    switch (tag) {
        case EnsembleTag::GUE: return km::log_p_N_origin(t, x);
        case EnsembleTag::GOE: return base - c.log_c2 + lh;
        case EnsembleTag::GSE: return base - c.log_c3 + 4.0 * lh;
        default: throw DomainError("exact eigenvalue density available for gue, goe, gse");
    }
}

double eigen_density_exact(EnsembleTag tag, const OrderedConfiguration& x, double t) {
    if (x.chamber() != Chamber::A) throw DomainError("eigen density expects chamber A");
    if (tag == EnsembleTag::GUE) return km::p_N_origin(t, x);
    return std::exp(log_eigen_density_exact(tag, x.values(), t));
}

Eigen::MatrixXcd haar_unitary(int n, RngStream& stream) {
    if (n < 1) throw DomainError("haar_unitary needs n >= 1");
    Eigen::MatrixXcd z(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            double re = kInvSqrt2 * stream.gaussian();
            z(i, j) = cd(re, kInvSqrt2 * stream.gaussian());
        }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd& r = qr.matrixQR();
    for (int j = 0; j < n; ++j) {
        cd d = r(j, j);
        double a = std::abs(d);
        q.col(j) *= a > 0.0 ? d / a : cd(1.0, 0.0);
    }
    return q;
}

double harish_chandra_rhs(const OrderedConfiguration& x, const OrderedConfiguration& y, double sigma) {
    if (x.size() != y.size()) throw SizeMismatch("harish_chandra needs equal sizes");
    if (sigma == 0.0) throw DomainError("sigma must be nonzero");
    const double hx = km::vandermonde(x.values()), hy = km::vandermonde(y.values());
    if (hx == 0.0 || hy == 0.0) throw DegenerateSpectrum("h(x) h(y) = 0");
    const Eigen::Index n = Eigen::Index(x.size());
    const double s2 = sigma * sigma;
    Eigen::MatrixXd l(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) l(i, j) = dens::log_bm_density(s2, y[j], x[i]);
    linalg::LogDet d = linalg::log_det_from_logs(l);
    const km::NormalizationConstants c = km::constants(int(n));
    double sign = d.sign * (hx * hy > 0.0 ? 1.0 : -1.0);
    return sign * std::exp(c.log_c1 + double(n * n) * std::log(std::abs(sigma)) - std::log(std::abs(hx)) -
                           std::log(std::abs(hy)) + d.log_abs);
}

HarishChandraReport harish_chandra_check(const OrderedConfiguration& x, const OrderedConfiguration& y, double sigma,
                                         std::size_t n_mc, RngStream& stream, unsigned threads) {
    if (x.chamber() != Chamber::A || y.chamber() != Chamber::A) throw DomainError("harish_chandra expects chamber A");
    HarishChandraReport rep;
    rep.rhs_exact = harish_chandra_rhs(x, y, sigma);
    rep.n_mc = n_mc;
    const int n = x.n();
    double base = 0.0;
    for (int i = 0; i < n; ++i) base += x[i] * x[i] + y[i] * y[i];
    const double s2 = sigma * sigma;
    auto f = [&](const Eigen::MatrixXcd& u) {
        double cross = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) cross += x[i] * y[j] * std::norm(u(j, i));
        return std::exp(-(base - 2.0 * cross) / (2.0 * s2));
    };
    const std::size_t blocks = block_count(n_mc);
    std::vector<double> sum(blocks, 0.0), sum2(blocks, 0.0);
    const RngStream root = stream;
    for_each_block(blocks, threads, [&](std::size_t b) {
        RngStream rng = root.split(b);
        std::size_t lo = b * kBlockSize, hi = std::min(n_mc, lo + kBlockSize);
        for (std::size_t k = lo; k < hi; ++k) {
            Eigen::MatrixXcd u = haar_unitary(n, rng);
            double v = 0.5 * (f(u) + f(u.adjoint()));
            sum[b] += v;
            sum2[b] += v * v;
        }
    });
    stream.discard_blocks(1);
    double s = 0.0, q = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
        s += sum[b];
        q += sum2[b];
    }
    const double m = double(n_mc);
    rep.lhs_mc = s / m;
    rep.lhs_stderr = std::sqrt(std::max(0.0, q / m - rep.lhs_mc * rep.lhs_mc) / m);
    return rep;
}

void write_matrix_dump(std::ostream& os, const MatrixSample& m, std::uint64_t seed, std::uint64_t stream) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", m.time);
    os << "# kind N t seed stream\n";
    os << "# " << to_string(m.kind.tag) << ' ' << m.kind.n << ' ' << buf << ' ' << seed << ' ' << stream << '\n';
    for (Eigen::Index i = 0; i < m.entries.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.entries.cols(); ++j) {
            if (j) os << ',';
            std::snprintf(buf, sizeof buf, "%.17g", m.entries(i, j).real());
            os << buf << ',';
            std::snprintf(buf, sizeof buf, "%.17g", m.entries(i, j).imag());
            os << buf;
        }
        os << '\n';
    }
}

}  // namespace noncollide::ens
