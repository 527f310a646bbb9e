#include "jastrow/phi.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace jastrow {

namespace {

void require_alpha(double alpha) {
    if (!(alpha > 0.5))
        throw std::invalid_argument(
            "phi family requires alpha > 1/2 (pole residue " + std::to_string(alpha) +
            " makes the kinetic energy of the ground state infinite)");
}

}  // namespace

PhiFamily make_rational(double alpha) {
    require_alpha(alpha);
    return RationalPhi{alpha};
}

PhiFamily make_trigonometric(double alpha, double period) {
    require_alpha(alpha);
    if (!(period > 0.0)) throw std::invalid_argument("trigonometric phi requires period > 0");
    return TrigonometricPhi{alpha, period};
}

PhiFamily make_hyperbolic(double alpha, double beta) {
    require_alpha(alpha);
    if (!(beta > 0.0)) throw std::invalid_argument("hyperbolic phi requires beta > 0");
    return HyperbolicPhi{alpha, beta};
}

PhiFamily make_elliptic(double alpha, const LatticeData& lat) {
    require_alpha(alpha);
    if (!(lat.l > 0.0) || !(lat.im_omega3 > 0.0))
        throw std::invalid_argument("elliptic phi requires a valid lattice");
    return EllipticPhi{alpha, lat};
}

PhiFamily make_custom_unchecked(double alpha, std::function<double(double)> phi,
                                std::function<double(double)> dphi,
                                std::function<double(double)> big_phi, double period) {
    require_alpha(alpha);
    if (!phi || !dphi || !big_phi)
        throw std::invalid_argument("custom phi requires phi, dphi and big_phi callables");
    return CustomPhi{alpha, period, std::move(phi), std::move(dphi), std::move(big_phi)};
}

PhiFamily make_custom(double alpha, std::function<double(double)> phi,
                      std::function<double(double)> dphi,
                      std::function<double(double)> big_phi, double period) {
    PhiFamily fam =
        make_custom_unchecked(alpha, std::move(phi), std::move(dphi), std::move(big_phi), period);
    const auto& f = std::get<CustomPhi>(fam);

    // Probe grid inside (0, period/2) for periodic phi, (0, 1.7] otherwise.
    const double hi = (period > 0.0) ? 0.45 * period : 1.7;
    const double probes[] = {0.13 * hi, 0.29 * hi, 0.57 * hi, 0.83 * hi, hi};

    for (double x : probes) {
        const double p = f.phi(x);
        if (std::abs(f.phi(-x) + p) > 1e-8 * (1.0 + std::abs(p)))
            throw std::invalid_argument("custom phi failed the oddness check at x = " +
                                        std::to_string(x));
    }
    // Simple pole with residue alpha: x phi(x) -> alpha.
    const double xr = 1e-6 * hi;
    if (std::abs(xr * f.phi(xr) - alpha) > 1e-4 * (1.0 + std::abs(alpha)))
        throw std::invalid_argument("custom phi failed the pole-residue check (expected alpha = " +
                                    std::to_string(alpha) + ")");
    // dphi and big_phi consistency by central differences.
    const double d = 1e-5 * hi;
    for (double x : {probes[2], probes[3]}) {
        const double fd_phi = (f.phi(x + d) - f.phi(x - d)) / (2.0 * d);
        if (std::abs(fd_phi - f.dphi(x)) > 1e-4 * (1.0 + std::abs(f.dphi(x))))
            throw std::invalid_argument("custom dphi disagrees with finite differences of phi");
        double regular = f.phi(x) - alpha / x;
        if (period > 0.0) regular -= alpha / (x - period);
        const double fd_big = (f.big_phi(x + d) - f.big_phi(x - d)) / (2.0 * d);
        if (std::abs(fd_big - regular) > 1e-4 * (1.0 + std::abs(regular)))
            throw std::invalid_argument(
                "custom big_phi is not an antiderivative of the regular part of phi");
    }
    return fam;
}

double pole_residue(const PhiFamily& fam) {
    return std::visit([](const auto& f) { return f.alpha; }, fam);
}

double phi_period(const PhiFamily& fam) {
    return std::visit(
        [](const auto& f) -> double {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, TrigonometricPhi>) return f.period;
            else if constexpr (std::is_same_v<F, EllipticPhi>) return f.lat.l;
            else if constexpr (std::is_same_v<F, CustomPhi>) return f.period;
            else return 0.0;
        },
        fam);
}

}  // namespace jastrow
