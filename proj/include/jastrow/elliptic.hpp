#ifndef JASTROW_ELLIPTIC_HPP
#define JASTROW_ELLIPTIC_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "jastrow/common.hpp"

namespace jastrow {

/// A rectangular Weierstrass lattice: real invariants with g2^3 > 27 g3^2,
/// equivalently real fundamental period l and purely imaginary half-period
/// i * im_omega3. eta1 = zeta(l/2) controls quasi-periodicity shifts.
///
/// Immutable after construction through the two factories below; all
/// evaluators are pure functions and safe to call concurrently.
struct LatticeData {
    double g2 = 0.0;         // invariant, length^-4
    double g3 = 0.0;         // invariant, length^-6
    double l = 0.0;          // real fundamental period, length
    double im_omega3 = 0.0;  // |Im omega_3|, length
    double eta1 = 0.0;       // zeta(l/2), length^-1
};

/// Build the lattice from real invariants. Requires g2^3 > 27 g3^2 (strict);
/// the degenerate boundary is rejected.
LatticeData lattice_from_invariants(double g2, double g3);

/// Build the lattice from its rectangular periods (l, 2i*im_omega3), l > 0,
/// im_omega3 > 0. Homogeneity: scaling both periods by mu scales g2 by
/// mu^-4, g3 by mu^-6 and eta1 by mu^-1.
LatticeData lattice_from_periods(double l, double im_omega3);

namespace detail {

// All evaluators run off the nome q = exp(-2 pi im_omega3 / l) < 1; the
// series below converge geometrically in q^2. Templated so the verifier can
// instantiate a long-double path for finite differencing.

inline constexpr int kMaxSeriesTerms = 400000;

template <typename T>
T nome(const LatticeData& lat) {
    return std::exp(-T(2) * std::numbers::pi_v<T> * T(lat.im_omega3) / T(lat.l));
}

[[noreturn]] inline void series_divergence() {
    throw std::runtime_error("elliptic series did not converge (im_omega3/l too small?)");
}

// eta1 from the Lambert series of the weight-2 Eisenstein sum:
// eta1 = (pi^2 / 6l) (1 - 24 sum n q^{2n} / (1 - q^{2n})).
template <typename T>
T eta1_series(T q, T l) {
    const T q2 = q * q;
    T qp = q2, sum = T(0);
    for (int n = 1; n <= kMaxSeriesTerms; ++n) {
        const T term = T(n) * qp / (T(1) - qp);
        sum += term;
        if (term < std::numeric_limits<T>::epsilon() * (T(1) + sum)) {
            const T pi_t = std::numbers::pi_v<T>;
            return pi_t * pi_t / (T(6) * l) * (T(1) - T(24) * sum);
        }
        qp *= q2;
    }
    series_divergence();
}

// zeta on the fundamental period (0, l):
// zeta(x) = 2 eta1 x / l + (pi/l) [cot(u) + 4 sum q^{2n}/(1-q^{2n}) sin(2nu)],
// u = pi x / l.
template <typename T>
T zeta_reduced(T x, const LatticeData& lat) {
    const T pi_t = std::numbers::pi_v<T>;
    const T l = T(lat.l), u = pi_t * x / l;
    const T q2 = [&] { const T q = nome<T>(lat); return q * q; }();
    T qp = q2, sum = T(0);
    for (int n = 1; n <= kMaxSeriesTerms; ++n) {
        const T term = qp / (T(1) - qp) * std::sin(T(2 * n) * u);
        sum += term;
        if (qp / (T(1) - qp) < std::numeric_limits<T>::epsilon() * T(0.25)) {
            return T(2) * T(lat.eta1) * x / l +
                   pi_t / l * (std::cos(u) / std::sin(u) + T(4) * sum);
        }
        qp *= q2;
    }
    series_divergence();
}

// wp = -zeta' on the fundamental period:
// wp(x) = -2 eta1 / l + (pi/l)^2 [1/sin^2(u) - 8 sum n q^{2n}/(1-q^{2n}) cos(2nu)].
template <typename T>
T wp_reduced(T x, const LatticeData& lat) {
    const T pi_t = std::numbers::pi_v<T>;
    const T l = T(lat.l), u = pi_t * x / l;
    const T q2 = [&] { const T q = nome<T>(lat); return q * q; }();
    T qp = q2, sum = T(0);
    for (int n = 1; n <= kMaxSeriesTerms; ++n) {
        const T lam = T(n) * qp / (T(1) - qp);
        sum += lam * std::cos(T(2 * n) * u);
        if (lam < std::numeric_limits<T>::epsilon() * T(0.125)) {
            const T s = std::sin(u), c = pi_t / l;
            return -T(2) * T(lat.eta1) / l + c * c * (T(1) / (s * s) - T(8) * sum);
        }
        qp *= q2;
    }
    series_divergence();
}

// log sigma on [0, l], from the theta-1 product representation:
// log sigma(x) = log(l/pi) + eta1 x^2/l + log sin(u)
//                + sum log1p(4 q^{2n} sin^2(u) / (1 - q^{2n})^2).
// Tends to -infinity at the endpoints through the log sin term.
template <typename T>
T log_sigma_closed(T x, const LatticeData& lat) {
    const T pi_t = std::numbers::pi_v<T>;
    const T l = T(lat.l), u = pi_t * x / l;
    const T s2 = [&] { const T s = std::sin(u); return s * s; }();
    const T q2 = [&] { const T q = nome<T>(lat); return q * q; }();
    T qp = q2, sum = T(0);
    for (int n = 1; n <= kMaxSeriesTerms; ++n) {
        const T d = T(1) - qp;
        const T term = std::log1p(T(4) * qp * s2 / (d * d));
        sum += term;
        if (T(4) * qp / (d * d) < std::numeric_limits<T>::epsilon() * T(0.25)) {
            return std::log(l / pi_t) + T(lat.eta1) * x * x / l +
                   T(0.5) * std::log(s2) + sum;
        }
        qp *= q2;
    }
    series_divergence();
}

template <typename T>
void require_valid_lattice(const LatticeData& lat) {
    if (!(lat.l > 0.0) || !(lat.im_omega3 > 0.0))
        throw std::domain_error("invalid LatticeData (nonpositive periods)");
}

// Reduce x to [0, l) and count the period shifts.
template <typename T>
T reduce_period(T x, T l, long long& shifts) {
    const T k = std::floor(x / l);
    shifts = static_cast<long long>(k);
    T r = x - k * l;
    if (r >= l) { r -= l; ++shifts; }  // guard against floor rounding
    if (r < T(0)) { r += l; --shifts; }
    return r;
}

template <typename T>
T wp_t(T x, const LatticeData& lat) {
    require_valid_lattice<T>(lat);
    long long k;
    const T l = T(lat.l);
    const T r = reduce_period(x, l, k);
    if (std::min(r, l - r) < T(1e-13) * l)
        throw pole_error("wp: argument at a lattice point");
    return wp_reduced(r, lat);
}

template <typename T>
T zeta_t(T x, const LatticeData& lat) {
    require_valid_lattice<T>(lat);
    long long k;
    const T l = T(lat.l);
    const T r = reduce_period(x, l, k);
    if (std::min(r, l - r) < T(1e-13) * l)
        throw pole_error("zeta: argument at a lattice point");
    // zeta(x + k l) = zeta(x) + 2 k eta1
    return zeta_reduced(r, lat) + T(2) * T(k) * T(lat.eta1);
}

template <typename T>
T log_sigma_t(T x, const LatticeData& lat) {
    require_valid_lattice<T>(lat);
    const T l = T(lat.l);
    if (x < T(0) || x > l)
        throw std::domain_error("log_sigma: argument outside [0, l]");
    if (x == T(0) || x == l) return -std::numeric_limits<T>::infinity();
    return log_sigma_closed(x, lat);
}

}  // namespace detail

/// Weierstrass P function at real x (even, l-periodic). Throws pole_error
/// within 1e-13*l of a lattice point.
inline double wp(double x, const LatticeData& lat) { return detail::wp_t(x, lat); }

/// Weierstrass zeta at real x (odd; zeta(x + l) = zeta(x) + 2 eta1).
inline double zeta(double x, const LatticeData& lat) { return detail::zeta_t(x, lat); }

/// log |sigma(x)| for x in [0, l]; -infinity at the endpoints, domain_error
/// outside. Exported instead of sigma itself since sigma overflows for
/// large lattices and the wavefunction only needs the log.
inline double log_sigma(double x, const LatticeData& lat) { return detail::log_sigma_t(x, lat); }

}  // namespace jastrow

#endif
