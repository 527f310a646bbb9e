#include "jastrow/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace jastrow {

ModelSpec make_model(Geometry geometry, int n, double omega, double circumference,
                     PhiFamily phi) {
    const bool circle = geometry == Geometry::Circle;
    if (n < (circle ? 3 : 2))
        throw std::invalid_argument(circle ? "circle models require n >= 3"
                                           : "line models require n >= 2");
    if (omega < 0.0 || !std::isfinite(omega))
        throw std::invalid_argument("omega must be finite and nonnegative");
    if (circle) {
        if (omega != 0.0)
            throw std::invalid_argument(
                "circle models require omega = 0 (the harmonic term is not periodic)");
        if (!(circumference > 0.0))
            throw std::invalid_argument("circle models require a positive circumference");
        const double p = phi_period(phi);
        if (p > 0.0 && std::abs(p - circumference) > 1e-12 * circumference)
            throw std::invalid_argument(
                "family period " + std::to_string(p) +
                " does not match the circle circumference " + std::to_string(circumference));
    } else {
        circumference = 0.0;
    }
    return ModelSpec{geometry, n, omega, circumference, std::move(phi)};
}

bool in_sector(const ModelSpec& spec, const Configuration& cfg) {
    const auto& x = cfg.x;
    if (static_cast<int>(x.size()) != spec.n) return false;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        if (!(x[i] > x[i + 1])) return false;
    if (spec.geometry == Geometry::Circle)
        return x.back() > x.front() - spec.circumference;
    return true;
}

double length_scale(const ModelSpec& spec) {
    return spec.geometry == Geometry::Circle ? spec.circumference : 1.0;
}

int bond_count(const ModelSpec& spec) {
    return spec.geometry == Geometry::Circle ? spec.n : spec.n - 1;
}

std::vector<double> bond_differences(const ModelSpec& spec, const Configuration& cfg) {
    if (static_cast<int>(cfg.x.size()) != spec.n)
        throw std::invalid_argument("configuration size does not match the model's n");
    const int bonds = bond_count(spec);
    std::vector<double> d(static_cast<std::size_t>(bonds));
    for (int i = 0; i < bonds; ++i) {
        double di = cfg.x[static_cast<std::size_t>(i)] -
                    cfg.x[static_cast<std::size_t>((i + 1) % spec.n)];
        if (spec.geometry == Geometry::Circle) {
            const double l = spec.circumference;
            di -= l * std::floor(di / l);
        }
        d[static_cast<std::size_t>(i)] = di;
    }
    return d;
}

double two_body_gauge_shift(const ModelSpec& spec) {
    return std::visit(
        [&](const auto& f) -> double {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, RationalPhi>) {
                return 2.0 * spec.omega * f.alpha;
            } else if constexpr (std::is_same_v<F, TrigonometricPhi>) {
                const double w = pi * f.alpha / f.period;
                return 2.0 * w * w;
            } else if constexpr (std::is_same_v<F, HyperbolicPhi>) {
                return -2.0 * f.alpha * f.alpha * f.beta * f.beta;
            } else if constexpr (std::is_same_v<F, EllipticPhi>) {
                return 4.0 * f.alpha * f.lat.eta1 / f.lat.l;
            } else {
                return 0.0;
            }
        },
        spec.phi);
}

double two_body_potential(const ModelSpec& spec, double x) {
    const double p = phi_eval(spec.phi, x);
    return 2.0 * (dphi_eval(spec.phi, x) + p * p - spec.omega * x * p) +
           two_body_gauge_shift(spec);
}

double three_body_potential(const ModelSpec& spec, double x, double y) {
    return -2.0 * phi_eval(spec.phi, x) * phi_eval(spec.phi, y);
}

namespace {

void guard_bonds(const ModelSpec& spec, const std::vector<double>& d) {
    const double guard = tol::pole_guard_rel * length_scale(spec);
    const double l = spec.circumference;
    for (double di : d) {
        const bool near_pole = spec.geometry == Geometry::Circle
                                   ? (di < guard || di > l - guard)
                                   : (std::abs(di) < guard);
        if (near_pole)
            throw pole_error("potential: coincident neighbors (|x_i - x_{i+1}| below guard)");
    }
}

}  // namespace

PotentialTerms potential_terms(const ModelSpec& spec, const Configuration& cfg) {
    const auto d = bond_differences(spec, cfg);
    guard_bonds(spec, d);

    PotentialTerms t{0.0, 0.0, 0.0};
    if (spec.omega != 0.0) {
        double r2 = 0.0;
        for (double xi : cfg.x) r2 += xi * xi;
        t.v1_sum = spec.omega * spec.omega * r2;
    }
    const int bonds = static_cast<int>(d.size());
    for (int i = 0; i < bonds; ++i)
        t.v2_sum += two_body_potential(spec, d[static_cast<std::size_t>(i)]);
    const bool circle = spec.geometry == Geometry::Circle;
    const int triples = circle ? bonds : bonds - 1;
    for (int i = 0; i < triples; ++i)
        t.v3_sum += three_body_potential(spec, d[static_cast<std::size_t>(i)],
                                         d[static_cast<std::size_t>((i + 1) % bonds)]);
    return t;
}

double potential(const ModelSpec& spec, const Configuration& cfg) {
    const auto t = potential_terms(spec, cfg);
    return t.v1_sum + t.v2_sum + t.v3_sum;
}

double ground_energy(const ModelSpec& spec) {
    if (std::holds_alternative<CustomPhi>(spec.phi))
        throw std::invalid_argument(
            "ground_energy: no closed form for a custom phi; measure it with residual_energy");
    return spec.n * spec.omega + bond_count(spec) * two_body_gauge_shift(spec);
}

double log_chi(const ModelSpec& spec, double x) {
    const double alpha = pole_residue(spec.phi);
    if (spec.geometry == Geometry::Circle) {
        const double l = spec.circumference;
        if (!(x > 0.0 && x < l))
            throw std::domain_error("log_chi: circle bond lengths live in (0, l)");
        if (const auto* e = std::get_if<EllipticPhi>(&spec.phi))
            return alpha * log_sigma(x, e->lat) - alpha * e->lat.eta1 * x * x / l;
        return alpha * std::log(x * (l - x)) + big_phi_eval(spec.phi, x);
    }
    const double ax = std::abs(x);
    if (ax == 0.0) return -std::numeric_limits<double>::infinity();
    return alpha * std::log(ax) + big_phi_eval(spec.phi, ax);
}

}  // namespace jastrow
