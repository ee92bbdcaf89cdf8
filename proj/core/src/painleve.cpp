#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>

#include "noncollide/fredholm.hpp"
#include "noncollide/special_functions.hpp"

namespace noncollide::fred {

namespace {

using State = std::array<double, 2>;  // (q, q')

State rhs(double x, const State& y) { return {y[1], 2.0 * y[0] * y[0] * y[0] + x * y[0]}; }

State rk4(double x, const State& y, double h) {
    auto axpy = [](const State& a, double c, const State& b) { return State{a[0] + c * b[0], a[1] + c * b[1]}; };
    State k1 = rhs(x, y);
    State k2 = rhs(x + 0.5 * h, axpy(y, 0.5 * h, k1));
    State k3 = rhs(x + 0.5 * h, axpy(y, 0.5 * h, k2));
    State k4 = rhs(x + h, axpy(y, h, k3));
    return {y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
}

State rk4_sub(double x, State y, double h, int pieces) {
    const double hs = h / pieces;
    for (int i = 0; i < pieces; ++i) y = rk4(x + i * hs, y, hs);
    return y;
}

constexpr double kX0 = 8.0;
constexpr double kXEnd = -10.5;
constexpr double kH = 1e-3;

const PainleveSolution& cached() {
    static PainleveSolution sol;
    static std::once_flag once;
    std::call_once(once, [] { sol = painleve2_solve(kX0, kXEnd, kH); });
    return sol;
}

// cubic Hermite on the cached uniform grid
double q_at(double x) {
    const PainleveSolution& s = cached();
    const double pos = (kX0 - x) / kH;
    std::size_t i = std::min<std::size_t>(std::size_t(std::max(0.0, std::floor(pos))), s.x.size() - 2);
    const double xa = s.x[i + 1], xb = s.x[i];
    const double h = xb - xa, u = (x - xa) / h;
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
    return h00 * s.q[i + 1] + h10 * h * s.qp[i + 1] + h01 * s.q[i] + h11 * h * s.qp[i];
}

double airy_tail(double from, double alpha) {
    quad::Fn f = [alpha](double x) {
        double a = special::airy_ai(x);
        return (x - alpha) * a * a;
    };
    return quad::integrate(f, from, std::max(from, 0.0) + 30.0, {1e-13, 1e-30, 20});
}

}  // namespace

PainleveSolution painleve2_solve(double x0, double x_end, double h, double local_tol) {
    if (!(x0 >= 6.0)) throw DomainError("Painleve start abscissa must be >= 6");
    if (!(x_end < x0)) throw DomainError("Painleve integration runs toward smaller x");
    if (!(h > 0.0)) throw DomainError("Painleve step must be positive");
    PainleveSolution sol;
    special::Airy a0 = special::airy(x0);
    State y{a0.ai, a0.aip};
    double x = x0;
    sol.x.push_back(x);
    sol.q.push_back(y[0]);
    sol.qp.push_back(y[1]);
    const long steps = long(std::ceil((x0 - x_end) / h - 1e-9));
    for (long k = 1; k <= steps; ++k) {
        const double xn = k == steps ? x_end : x0 - double(k) * h;
        const double step = xn - x;
        int pieces = 1;
        State coarse = rk4_sub(x, y, step, pieces), fine = rk4_sub(x, y, step, 2 * pieces);
        while (std::max(std::abs(coarse[0] - fine[0]), std::abs(coarse[1] - fine[1])) > local_tol && pieces < 1024) {
            pieces *= 2;
            coarse = fine;
            fine = rk4_sub(x, y, step, 2 * pieces);
        }
        sol.substeps += 2 * pieces;
        y = fine;
        x = xn;
        if (!(std::abs(y[0]) <= 1e6)) throw BlowUp("Painleve II solution left the Hastings-McLeod branch");
        sol.x.push_back(x);
        sol.q.push_back(y[0]);
        sol.qp.push_back(y[1]);
    }
    return sol;
}

std::vector<double> painleve2_hastings_mcleod(const std::vector<double>& x_grid, double h) {
    if (x_grid.empty()) return {};
    for (std::size_t i = 1; i < x_grid.size(); ++i)
        if (!(x_grid[i] < x_grid[i - 1])) throw DomainError("Painleve grid must be strictly decreasing");
    std::vector<double> out{special::airy_ai(x_grid[0])};
    if (x_grid[0] < 6.0) throw DomainError("Painleve start abscissa must be >= 6");
    special::Airy a0 = special::airy(x_grid[0]);
    State y{a0.ai, a0.aip};
    for (std::size_t i = 1; i < x_grid.size(); ++i) {
        const double xa = x_grid[i - 1], xb = x_grid[i];
        const long steps = std::max(1L, long(std::ceil((xa - xb) / h - 1e-9)));
        const double hs = (xb - xa) / double(steps);
        for (long k = 0; k < steps; ++k) {
            State coarse = rk4(xa + k * hs, y, hs), fine = rk4_sub(xa + k * hs, y, hs, 2);
            int pieces = 2;
            while (std::max(std::abs(coarse[0] - fine[0]), std::abs(coarse[1] - fine[1])) > 1e-10 && pieces < 2048) {
                coarse = fine;
                pieces *= 2;
                fine = rk4_sub(xa + k * hs, y, hs, pieces);
            }
            y = fine;
            if (!(std::abs(y[0]) <= 1e6)) throw BlowUp("Painleve II solution left the Hastings-McLeod branch");
        }
        out.push_back(y[0]);
    }
    return out;
}

double tracy_widom_painleve(double alpha) {
    if (!(alpha >= -10.0)) throw DomainError("tracy_widom_painleve needs alpha >= -10");
    if (alpha >= kX0) return std::exp(-airy_tail(alpha, alpha));
    const int n = 2 * int(std::ceil((kX0 - alpha) / (2.0 * kH)));
    const double step = (kX0 - alpha) / n;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = alpha + i * step;
        const double q = q_at(x);
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sum += w * (x - alpha) * q * q;
    }
    const double body = sum * step / 3.0;
    return std::exp(-(body + airy_tail(kX0, alpha)));
}

}  // namespace noncollide::fred
