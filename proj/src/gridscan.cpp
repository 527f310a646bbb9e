#include "jastrow/gridscan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "jastrow/quadrature.hpp"

namespace jastrow {

std::vector<SurfacePoint> relative_surface(const ModelSpec& spec, double u_min, double u_max,
                                           int nu, double v_min, double v_max, int nv,
                                           Execution exec) {
    if (spec.n != 3)
        throw std::invalid_argument("relative_surface: the (u,v) surface needs n = 3");
    if (nu < 2 || nv < 2) throw std::invalid_argument("relative_surface: need >= 2 grid points");

    const bool circle = spec.geometry == Geometry::Circle;
    const double l = spec.circumference;
    const double guard = 1e-6 * length_scale(spec);

    struct Cell {
        double u = 0, v = 0, pot = 0, logpsi = -std::numeric_limits<double>::infinity();
        bool valid = false;
    };
    std::vector<Cell> cells(static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv));

    const auto row = [&](int i) {
        const double u = u_min + (u_max - u_min) * i / (nu - 1);
        for (int j = 0; j < nv; ++j) {
            const double v = v_min + (v_max - v_min) * j / (nv - 1);
            Cell& cell = cells[static_cast<std::size_t>(i) * static_cast<std::size_t>(nv) +
                               static_cast<std::size_t>(j)];
            cell.u = u;
            cell.v = v;
            if (!(u > guard && v > guard)) continue;
            if (circle && !(u + v < l - guard)) continue;
            Configuration cfg;
            cfg.x = {(2.0 * u + v) / 3.0, (v - u) / 3.0, -(u + 2.0 * v) / 3.0};
            cell.pot = potential(spec, cfg);
            cell.logpsi = log_psi(spec, cfg);
            cell.valid = true;
        }
    };
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static) num_threads(max_threads())
        for (int i = 0; i < nu; ++i) row(i);
    } else {
        for (int i = 0; i < nu; ++i) row(i);
    }

    double log_max = -std::numeric_limits<double>::infinity();
    for (const auto& c : cells)
        if (c.valid) log_max = std::max(log_max, c.logpsi);
    const double du = (u_max - u_min) / (nu - 1), dv = (v_max - v_min) / (nv - 1);
    double mass = 0.0;
    for (const auto& c : cells)
        if (c.valid) mass += std::exp(2.0 * (c.logpsi - log_max)) * du * dv;
    const double norm = std::sqrt(mass);

    std::vector<SurfacePoint> out;
    out.reserve(cells.size());
    for (const auto& c : cells)
        if (c.valid)
            out.push_back({c.u, c.v, c.pot, std::exp(c.logpsi - log_max) / norm});
    return out;
}

std::vector<ProfilePoint> pair_profile(const ModelSpec& spec, double lo, double hi, int n,
                                       Execution exec) {
    if (n < 2) throw std::invalid_argument("pair_profile: need >= 2 points");
    const bool circle = spec.geometry == Geometry::Circle;
    const double l = spec.circumference;
    if (!(hi > lo) || !(lo > 0.0) || (circle && !(hi < l)))
        throw std::invalid_argument("pair_profile: window must satisfy 0 < lo < hi" +
                                    std::string(circle ? " < l" : ""));

    // chi normalization over (0, l) on the circle, [lo, hi] on the line.
    const double a = circle ? 1e-9 * l : lo, b = circle ? l * (1.0 - 1e-9) : hi;
    double log_max = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 256; ++i)
        log_max = std::max(log_max, log_chi(spec, a + (b - a) * i / 256));
    const double mass = integrate(
        [&](double x) { return std::exp(2.0 * (log_chi(spec, x) - log_max)); }, a, b, 1e-10);
    const double log_norm = log_max + 0.5 * std::log(mass);

    std::vector<ProfilePoint> out(static_cast<std::size_t>(n));
    const auto eval = [&](int i) {
        const double x = lo + (hi - lo) * i / (n - 1);
        out[static_cast<std::size_t>(i)] = {x, two_body_potential(spec, x),
                                            std::exp(log_chi(spec, x) - log_norm)};
    };
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static) num_threads(max_threads())
        for (int i = 0; i < n; ++i) eval(i);
    } else {
        for (int i = 0; i < n; ++i) eval(i);
    }
    return out;
}

}  // namespace jastrow
