#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace noncollide {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    double a = 0.0;
    double b = 0.0;

    std::size_t size() const noexcept { return nodes.size(); }

    template <class F>
    double integrate(F&& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
};

// Nodes by Newton iteration on the three-term Legendre recurrence.
QuadratureRule gauss_legendre(int m, double a, double b);

// `panels` copies of an m-point rule on equal subintervals.
QuadratureRule composite_gauss_legendre(int m, int panels, double a, double b);

namespace quad {

using Fn = std::function<double(double)>;

struct Tolerance {
    double rel = 1e-11;
    double abs = 0.0;
    unsigned max_depth = 18;  // panel budget is 64 * max_depth
};

// Adaptive Gauss-Kronrod (15-point rule pair per panel).
double integrate(const Fn& f, double a, double b, Tolerance tol = {});
// Same with the 61-point pair, for the oscillatory kernel integrals.
double integrate_gk61(const Fn& f, double a, double b, Tolerance tol = {});

// Integral over [a, inf): panels [a, a+w], [a+w, a+3w], ... doubling in width
// until a panel contributes less than `panel_tol` (absolute) twice in a row.
double integrate_to_infinity(const Fn& f, double a, double first_width, double panel_tol,
                             Tolerance tol = {}, bool gk61 = false, double hard_limit = 1e7);

// Integral of f over (0, b] where f(y) ~ y^p near 0 with p > -1.  The
// substitution y = u^(1/(p+1)) makes the integrand bounded at u = 0.
double integrate_power_endpoint(const Fn& f, double p, double split, double b, Tolerance tol = {});

}  // namespace quad

}  // namespace noncollide
