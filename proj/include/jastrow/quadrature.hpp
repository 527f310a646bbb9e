#ifndef JASTROW_QUADRATURE_HPP
#define JASTROW_QUADRATURE_HPP

#include <cmath>
#include <stdexcept>

namespace jastrow {

namespace detail {

// Gauss-Kronrod 15/7 nodes and weights on [-1, 1].
inline constexpr double gk15_nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0};
inline constexpr double gk15_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double gk15_wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename F>
void gk15_panel(const F& f, double a, double b, double& result, double& err) {
    const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    double kron = 0.0, gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double x = hw * gk15_nodes[i];
        const double fv = (i == 7) ? f(c) : f(c - x) + f(c + x);
        kron += gk15_wk[i] * fv;
        if (i % 2 == 1) gauss += gk15_wg[i / 2] * fv;
    }
    result = kron * hw;
    err = std::abs(kron - gauss) * hw;
    err = std::pow(200.0 * err, 1.5);
    if (!std::isfinite(err)) err = std::abs(result);
}

template <typename F>
double gk15_adaptive(const F& f, double a, double b, double abs_tol, int depth) {
    double result, err;
    gk15_panel(f, a, b, result, err);
    if (err <= abs_tol || depth <= 0) {
        if (depth <= 0 && err > 1e3 * abs_tol)
            throw std::runtime_error("gk15_adaptive: failed to converge");
        return result;
    }
    const double c = 0.5 * (a + b);
    return gk15_adaptive(f, a, c, 0.5 * abs_tol, depth - 1) +
           gk15_adaptive(f, c, b, 0.5 * abs_tol, depth - 1);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod 15-point quadrature of f over [a, b] to an
/// absolute tolerance. Integrands must be finite on the closed interval.
template <typename F>
double integrate(const F& f, double a, double b, double abs_tol = 1e-12) {
    if (!(b > a)) return 0.0;
    return detail::gk15_adaptive(f, a, b, abs_tol, 48);
}

}  // namespace jastrow

#endif
