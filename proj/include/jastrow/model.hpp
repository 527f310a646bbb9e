#ifndef JASTROW_MODEL_HPP
#define JASTROW_MODEL_HPP

#include <cmath>
#include <limits>
#include <vector>

#include "jastrow/phi.hpp"
#include "jastrow/tolerances.hpp"

namespace jastrow {

enum class Geometry { Line, Circle };

/// Full definition of a model: geometry, particle count, confinement and
/// the phi family. Immutable; the single source of truth consumed by the
/// verifier, the sampler and the CLI.
struct ModelSpec {
    Geometry geometry = Geometry::Line;
    int n = 3;
    double omega = 0.0;        // confinement; must be 0 on the circle
    double circumference = 0.0;  // > 0 iff Circle
    PhiFamily phi = RationalPhi{1.0};
};

/// Validating constructor. Enforces: n >= 2 on the line, n >= 3 on the
/// circle; omega = 0 and a matching family period on the circle; omega >= 0.
ModelSpec make_model(Geometry geometry, int n, double omega, double circumference,
                     PhiFamily phi);

inline ModelSpec make_line_model(int n, double omega, PhiFamily phi) {
    return make_model(Geometry::Line, n, omega, 0.0, std::move(phi));
}
inline ModelSpec make_circle_model(int n, double circumference, PhiFamily phi) {
    return make_model(Geometry::Circle, n, 0.0, circumference, std::move(phi));
}

/// Ordered positions; the physical domain is the sector x1 > ... > xN
/// (line) or x1 > ... > xN > x1 - l (circle).
struct Configuration {
    std::vector<double> x;
};

bool in_sector(const ModelSpec& spec, const Configuration& cfg);

/// Coordinate scale used by pole-proximity guards: l on the circle, 1 on
/// the line.
double length_scale(const ModelSpec& spec);

/// Number of two-body bonds: N on the circle, N-1 on the line.
int bond_count(const ModelSpec& spec);

/// Consecutive differences x_i - x_{i+1}. On the circle the wrap-around
/// bond is included and every difference is reduced into (0, l), which
/// implements the arc-distance convention.
std::vector<double> bond_differences(const ModelSpec& spec, const Configuration& cfg);

/// Constant that shifts the generic two-body term 2(phi' + phi^2 - omega x
/// phi) into the conventional closed-form gauge of each named family (in
/// which the potential carries no additive constant). Zero for Custom.
double two_body_gauge_shift(const ModelSpec& spec);

/// Two-body potential V2(x), even in x, in the family's conventional gauge.
double two_body_potential(const ModelSpec& spec, double x);

/// Three-body potential V3(x, y) = -2 phi(x) phi(y); V3(-x,-y) = V3(x,y).
double three_body_potential(const ModelSpec& spec, double x, double y);

/// Full potential omega^2 r^2 + sum V2 + sum V3 with the geometry's index
/// convention. Throws pole_error when neighbors come within
/// 1e-10 * length_scale of each other.
double potential(const ModelSpec& spec, const Configuration& cfg);

struct PotentialTerms {
    double v1_sum;  // omega^2 r^2 (0 on the circle)
    double v2_sum;
    double v3_sum;
};

/// One-, two- and three-body parts; their sum equals potential() exactly.
PotentialTerms potential_terms(const ModelSpec& spec, const Configuration& cfg);

/// Closed-form ground-state energy of the named families,
/// E = N omega + bonds * gauge_shift. Throws for Custom (no closed form;
/// use verify::residual_energy instead).
double ground_energy(const ModelSpec& spec);

namespace detail {

// log |psi| up to the family's fixed gauge constant. Evaluates the even /
// periodic extension of the formula: the sector is enforced by the sampler,
// not here. Returns -infinity when a bond distance hits the pole guard.
template <typename T>
T log_psi_t(const ModelSpec& spec, const Configuration& cfg) {
    const int n = spec.n;
    const bool circle = spec.geometry == Geometry::Circle;
    const double guard = tol::pole_guard_rel * (circle ? spec.circumference : 1.0);
    const T inf = std::numeric_limits<T>::infinity();

    T result = T(0);
    if (spec.omega != 0.0) {
        T r2 = T(0);
        for (double xi : cfg.x) r2 += T(xi) * T(xi);
        result -= T(0.5) * T(spec.omega) * r2;
    }

    const double alpha = pole_residue(spec.phi);
    const int bonds = circle ? n : n - 1;
    for (int i = 0; i < bonds; ++i) {
        T d = T(cfg.x[static_cast<std::size_t>(i)]) -
              T(cfg.x[static_cast<std::size_t>((i + 1) % n)]);
        if (circle) {
            const T L = T(spec.circumference);
            d -= L * std::floor(d / L);
            if (d < T(guard) || d > L - T(guard)) return -inf;
            if (const auto* e = std::get_if<EllipticPhi>(&spec.phi)) {
                result += T(alpha) * log_sigma_t(d, e->lat) -
                          T(alpha) * T(e->lat.eta1) * d * d / L;
            } else {
                result += T(alpha) * std::log(d * (L - d)) + big_phi_eval_t(spec.phi, d);
            }
        } else {
            const T ad = std::abs(d);
            if (ad < T(guard)) return -inf;
            result += T(alpha) * std::log(ad) + big_phi_eval_t(spec.phi, ad);
        }
    }
    return result;
}

}  // namespace detail

/// log |psi| up to a fixed gauge constant; -infinity on the sector boundary.
inline double log_psi(const ModelSpec& spec, const Configuration& cfg) {
    return detail::log_psi_t<double>(spec, cfg);
}

/// Extended-precision twin used by the finite-difference verifier.
inline long double log_psi_ld(const ModelSpec& spec, const Configuration& cfg) {
    return detail::log_psi_t<long double>(spec, cfg);
}

/// Per-bond wavefunction factor log chi(x) (up to the same gauge as
/// log_psi); on the circle chi(x) = chi(l - x).
double log_chi(const ModelSpec& spec, double x);

}  // namespace jastrow

#endif
