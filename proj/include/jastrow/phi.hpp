#ifndef JASTROW_PHI_HPP
#define JASTROW_PHI_HPP

#include <cmath>
#include <functional>
#include <numbers>
#include <variant>

#include "jastrow/common.hpp"
#include "jastrow/elliptic.hpp"

namespace jastrow {

// The single free function phi = chi'/chi parametrizing a model. Every
// variant is odd with a simple pole of residue alpha > 1/2 at the origin;
// the named families are the closed-form choices, Custom accepts arbitrary
// callables (validated on a probe grid at construction, not trusted).

struct RationalPhi {
    double alpha;  // phi(x) = alpha / x
};

struct TrigonometricPhi {
    double alpha;
    double period;  // phi(x) = (pi alpha / period) cot(pi x / period)
};

struct HyperbolicPhi {
    double alpha;
    double beta;  // phi(x) = alpha beta coth(beta x)
};

struct EllipticPhi {
    double alpha;
    LatticeData lat;  // phi(x) = alpha (zeta(x) - 2 eta1 x / l)
};

struct CustomPhi {
    double alpha;   // residue of the simple pole at 0
    double period;  // 0 for line-type phi; else the intended circumference
    std::function<double(double)> phi;
    std::function<double(double)> dphi;
    std::function<double(double)> big_phi;  // antiderivative of the regular part
};

using PhiFamily = std::variant<RationalPhi, TrigonometricPhi, HyperbolicPhi, EllipticPhi, CustomPhi>;

// Validating constructors. All enforce alpha > 1/2; make_custom additionally
// probes oddness, the pole residue, and derivative consistency on a fixed
// grid and throws std::invalid_argument on violations.
PhiFamily make_rational(double alpha);
PhiFamily make_trigonometric(double alpha, double period);
PhiFamily make_hyperbolic(double alpha, double beta);
PhiFamily make_elliptic(double alpha, const LatticeData& lat);
PhiFamily make_custom(double alpha, std::function<double(double)> phi,
                      std::function<double(double)> dphi,
                      std::function<double(double)> big_phi, double period = 0.0);
/// Same as make_custom but skips the probe-grid validation; intended for
/// negative-control experiments that need a deliberately broken phi.
PhiFamily make_custom_unchecked(double alpha, std::function<double(double)> phi,
                                std::function<double(double)> dphi,
                                std::function<double(double)> big_phi, double period = 0.0);

/// Residue alpha of the simple pole at the origin.
double pole_residue(const PhiFamily& fam);

/// Period of phi for the circle-native families (Trigonometric period,
/// Elliptic lat.l, Custom period); 0 for line-type families.
double phi_period(const PhiFamily& fam);

namespace detail {

template <typename T>
T phi_eval_t(const PhiFamily& fam, T x) {
    const T pi_t = std::numbers::pi_v<T>;
    return std::visit(
        [&](const auto& f) -> T {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, RationalPhi>) {
                if (x == T(0)) throw pole_error("phi: pole at 0");
                return T(f.alpha) / x;
            } else if constexpr (std::is_same_v<F, TrigonometricPhi>) {
                const T L = T(f.period);
                if (std::abs(x - L * std::round(x / L)) < T(1e-13) * L)
                    throw pole_error("phi: pole at a period multiple");
                const T w = pi_t / L;
                return T(f.alpha) * w * std::cos(w * x) / std::sin(w * x);
            } else if constexpr (std::is_same_v<F, HyperbolicPhi>) {
                if (x == T(0)) throw pole_error("phi: pole at 0");
                const T b = T(f.beta);
                return T(f.alpha) * b / std::tanh(b * x);
            } else if constexpr (std::is_same_v<F, EllipticPhi>) {
                return T(f.alpha) *
                       (zeta_t(x, f.lat) - T(2) * T(f.lat.eta1) * x / T(f.lat.l));
            } else {
                return T(f.phi(static_cast<double>(x)));
            }
        },
        fam);
}

template <typename T>
T dphi_eval_t(const PhiFamily& fam, T x) {
    const T pi_t = std::numbers::pi_v<T>;
    return std::visit(
        [&](const auto& f) -> T {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, RationalPhi>) {
                if (x == T(0)) throw pole_error("dphi: pole at 0");
                return -T(f.alpha) / (x * x);
            } else if constexpr (std::is_same_v<F, TrigonometricPhi>) {
                const T L = T(f.period);
                if (std::abs(x - L * std::round(x / L)) < T(1e-13) * L)
                    throw pole_error("dphi: pole at a period multiple");
                const T w = pi_t / L;
                const T s = std::sin(w * x);
                return -T(f.alpha) * w * w / (s * s);
            } else if constexpr (std::is_same_v<F, HyperbolicPhi>) {
                if (x == T(0)) throw pole_error("dphi: pole at 0");
                const T b = T(f.beta);
                const T sh = std::sinh(b * x);
                return -T(f.alpha) * b * b / (sh * sh);
            } else if constexpr (std::is_same_v<F, EllipticPhi>) {
                return T(f.alpha) *
                       (-wp_t(x, f.lat) - T(2) * T(f.lat.eta1) / T(f.lat.l));
            } else {
                return T(f.dphi(static_cast<double>(x)));
            }
        },
        fam);
}

// Antiderivative Phi of the regular part of phi. For the line families the
// pole subtraction is alpha/x with gauge Phi(1) = 0; for the circle-native
// families it is alpha (1/x + 1/(x-l)) with gauge Phi(l/2) = 0, defined on
// (0, l). Even in x for the line families.
template <typename T>
T big_phi_eval_t(const PhiFamily& fam, T x) {
    return std::visit(
        [&](const auto& f) -> T {
            using F = std::decay_t<decltype(f)>;
            const T pi_t = std::numbers::pi_v<T>;
            if constexpr (std::is_same_v<F, RationalPhi>) {
                return T(0);
            } else if constexpr (std::is_same_v<F, TrigonometricPhi>) {
                const T L = T(f.period);
                if (!(x > T(0) && x < L))
                    throw std::domain_error("big_phi: trigonometric Phi defined on (0, period)");
                return T(f.alpha) * (std::log(std::sin(pi_t * x / L)) -
                                     std::log(x * (L - x)) + std::log(L * L / T(4)));
            } else if constexpr (std::is_same_v<F, HyperbolicPhi>) {
                const T b = T(f.beta);
                const T ax = std::abs(x);
                if (ax == T(0)) return T(f.alpha) * std::log(b / std::sinh(b));
                return T(f.alpha) *
                       (std::log(std::sinh(b * ax) / ax) - std::log(std::sinh(b)));
            } else if constexpr (std::is_same_v<F, EllipticPhi>) {
                const T L = T(f.lat.l), e1 = T(f.lat.eta1);
                if (!(x > T(0) && x < L))
                    throw std::domain_error("big_phi: elliptic Phi defined on (0, l)");
                auto raw = [&](T t) {
                    return log_sigma_t(t, f.lat) - e1 * t * t / L - std::log(t * (L - t));
                };
                return T(f.alpha) * (raw(x) - raw(L / T(2)));
            } else {
                return T(f.big_phi(static_cast<double>(x)));
            }
        },
        fam);
}

}  // namespace detail

inline double phi_eval(const PhiFamily& fam, double x) { return detail::phi_eval_t(fam, x); }
inline double dphi_eval(const PhiFamily& fam, double x) { return detail::dphi_eval_t(fam, x); }
inline double big_phi_eval(const PhiFamily& fam, double x) { return detail::big_phi_eval_t(fam, x); }

}  // namespace jastrow

#endif
