#include "jastrow/elliptic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace jastrow {

namespace {

// Roots of 4t^3 - g2 t - g3 for positive discriminant (three distinct real
// roots), via the trigonometric method. Returned sorted e1 > e2 > e3.
std::array<double, 3> weierstrass_cubic_roots(double g2, double g3) {
    // depressed cubic t^3 + p t + q with p = -g2/4, q = -g3/4, p < 0
    const double p = -0.25 * g2, q = -0.25 * g3;
    const double a = 2.0 * std::sqrt(-p / 3.0);
    double cosphi = 3.0 * q / (2.0 * p) * std::sqrt(-3.0 / p);
    cosphi = std::clamp(cosphi, -1.0, 1.0);
    const double phi = std::acos(cosphi);
    std::array<double, 3> e;
    for (int k = 0; k < 3; ++k)
        e[k] = a * std::cos((phi - 2.0 * pi * k) / 3.0);
    std::sort(e.begin(), e.end(), std::greater<>());
    return e;
}

// Complete elliptic integral K as a function of the parameter m = k^2,
// via the arithmetic-geometric mean.
double elliptic_K(double m) {
    double a = 1.0, g = std::sqrt(1.0 - m);
    for (int i = 0; i < 64; ++i) {
        if (std::abs(a - g) <= std::numeric_limits<double>::epsilon() * a) break;
        const double an = 0.5 * (a + g);
        g = std::sqrt(a * g);
        a = an;
    }
    return pi / (2.0 * a);
}

// Jacobi theta constants theta_2,3,4(0, q).
struct ThetaConstants {
    double t2, t3, t4;
};

ThetaConstants theta_constants(double q) {
    ThetaConstants th{0.0, 1.0, 1.0};
    double qn = 1.0;  // q^{n(n+1)} running power for theta_2
    for (int n = 0; n < detail::kMaxSeriesTerms; ++n) {
        th.t2 += qn;
        qn *= std::pow(q, 2.0 * (n + 1));
        if (qn < std::numeric_limits<double>::epsilon() * th.t2 * 0.25) break;
    }
    th.t2 *= 2.0 * std::pow(q, 0.25);
    double qsq = q;  // q^{n^2}
    for (int n = 1; n < detail::kMaxSeriesTerms; ++n) {
        th.t3 += 2.0 * qsq;
        th.t4 += 2.0 * ((n % 2) ? -qsq : qsq);
        const double next = std::pow(q, double(n + 1) * double(n + 1));
        if (next < std::numeric_limits<double>::epsilon() * 0.25) break;
        qsq = next;
    }
    return th;
}

}  // namespace

LatticeData lattice_from_periods(double l, double im_omega3) {
    if (!(l > 0.0) || !(im_omega3 > 0.0) || !std::isfinite(l) || !std::isfinite(im_omega3))
        throw std::domain_error("lattice_from_periods: periods must be positive and finite");

    LatticeData lat;
    lat.l = l;
    lat.im_omega3 = im_omega3;

    const double q = std::exp(-2.0 * pi * im_omega3 / l);
    lat.eta1 = detail::eta1_series(q, l);

    const ThetaConstants th = theta_constants(q);
    const double r = pi * pi / (3.0 * l * l);  // pi^2 / (12 omega_1^2)
    const double t2_4 = std::pow(th.t2, 4), t3_4 = std::pow(th.t3, 4), t4_4 = std::pow(th.t4, 4);
    const double e1 = r * (t3_4 + t4_4);
    const double e2 = r * (t2_4 - t4_4);
    const double e3 = -r * (t2_4 + t3_4);
    lat.g2 = 2.0 * (e1 * e1 + e2 * e2 + e3 * e3);
    lat.g3 = 4.0 * e1 * e2 * e3;
    return lat;
}

LatticeData lattice_from_invariants(double g2, double g3) {
    if (!std::isfinite(g2) || !std::isfinite(g3))
        throw std::domain_error("lattice_from_invariants: non-finite invariants");
    if (!(g2 * g2 * g2 > 27.0 * g3 * g3))
        throw std::domain_error(
            "lattice_from_invariants: requires g2^3 > 27 g3^2 (real rectangular lattice)");

    const auto e = weierstrass_cubic_roots(g2, g3);
    const double scale = std::sqrt(e[0] - e[2]);
    const double m = (e[1] - e[2]) / (e[0] - e[2]);

    LatticeData lat;
    lat.g2 = g2;
    lat.g3 = g3;
    lat.l = 2.0 * elliptic_K(m) / scale;
    lat.im_omega3 = elliptic_K(1.0 - m) / scale;
    lat.eta1 = detail::eta1_series(std::exp(-2.0 * pi * lat.im_omega3 / lat.l), lat.l);
    return lat;
}

}  // namespace jastrow
