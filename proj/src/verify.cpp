#include "jastrow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

#include "jastrow/rng.hpp"

namespace jastrow::verify {

namespace {

double min_bond_gap(const ModelSpec& spec, const Configuration& cfg) {
    const auto d = bond_differences(spec, cfg);
    double m = std::numeric_limits<double>::infinity();
    for (double di : d) {
        m = std::min(m, std::abs(di));
        if (spec.geometry == Geometry::Circle) m = std::min(m, spec.circumference - di);
    }
    return m;
}

}  // namespace

double kinetic_log_derivative_term(const ModelSpec& spec, const Configuration& cfg, double h,
                                   Stencil stencil) {
    Configuration work = cfg;
    const long double hl = h;
    long double total = 0.0L;
    const long double f0 = log_psi_ld(spec, cfg);
    for (int i = 0; i < spec.n; ++i) {
        auto& xi = work.x[static_cast<std::size_t>(i)];
        const double x0 = xi;
        auto at = [&](double step_mult) {
            xi = x0 + step_mult * h;
            const long double v = log_psi_ld(spec, work);
            xi = x0;
            return v;
        };
        const long double fp1 = at(1.0), fm1 = at(-1.0);
        long double d1, d2;
        if (stencil == Stencil::SecondOrder) {
            d1 = (fp1 - fm1) / (2.0L * hl);
            d2 = (fp1 - 2.0L * f0 + fm1) / (hl * hl);
        } else {
            const long double fp2 = at(2.0), fm2 = at(-2.0);
            d1 = (-fp2 + 8.0L * fp1 - 8.0L * fm1 + fm2) / (12.0L * hl);
            d2 = (-fp2 + 16.0L * fp1 - 30.0L * f0 + 16.0L * fm1 - fm2) / (12.0L * hl * hl);
        }
        total += d1 * d1 + d2;
    }
    return static_cast<double>(total);
}

double local_energy(const ModelSpec& spec, const Configuration& cfg, double h, Stencil stencil) {
    if (!(h > 0.0)) throw std::invalid_argument("local_energy: step h must be positive");
    if (min_bond_gap(spec, cfg) <= 10.0 * h)
        throw std::domain_error("local_energy: configuration within 10h of the sector boundary");
    return potential(spec, cfg) - kinetic_log_derivative_term(spec, cfg, h, stencil);
}

double local_energy_analytic(const ModelSpec& spec, const Configuration& cfg) {
    const auto d = bond_differences(spec, cfg);
    const bool circle = spec.geometry == Geometry::Circle;
    const int n = spec.n;
    double kinetic = 0.0;
    for (int i = 0; i < n; ++i) {
        double grad = -spec.omega * cfg.x[static_cast<std::size_t>(i)];
        double lap = -spec.omega;
        if (circle || i < n - 1) {
            grad += phi_eval(spec.phi, d[static_cast<std::size_t>(i)]);
            lap += dphi_eval(spec.phi, d[static_cast<std::size_t>(i)]);
        }
        const int prev = circle ? (i + n - 1) % n : i - 1;
        if (prev >= 0) {
            grad -= phi_eval(spec.phi, d[static_cast<std::size_t>(prev)]);
            lap += dphi_eval(spec.phi, d[static_cast<std::size_t>(prev)]);
        }
        kinetic += grad * grad + lap;
    }
    return potential(spec, cfg) - kinetic;
}

std::vector<Configuration> probe_configurations(const ModelSpec& spec, int n_points,
                                                std::uint64_t seed) {
    if (n_points < 1) throw std::invalid_argument("probe_configurations: n_points must be >= 1");
    std::vector<Configuration> probes;
    probes.reserve(static_cast<std::size_t>(n_points));
    Rng rng(seed);
    const int n = spec.n;

    if (spec.geometry == Geometry::Line) {
        // Gaps stratified over [0.7, 1.7] (well inside the cloud of the
        // confined models and far from the pole), center of mass jittered.
        for (int j = 0; j < n_points; ++j) {
            std::vector<double> gaps(static_cast<std::size_t>(n - 1));
            gaps[0] = 0.7 + (j + rng.uniform()) / n_points;  // stratified in [0.7, 1.7]
            for (int i = 1; i < n - 1; ++i)
                gaps[static_cast<std::size_t>(i)] = rng.uniform(0.7, 1.7);
            Configuration cfg;
            cfg.x.resize(static_cast<std::size_t>(n));
            cfg.x[0] = 0.0;
            for (int i = 1; i < n; ++i)
                cfg.x[static_cast<std::size_t>(i)] =
                    cfg.x[static_cast<std::size_t>(i - 1)] - gaps[static_cast<std::size_t>(i - 1)];
            const double mean =
                std::accumulate(cfg.x.begin(), cfg.x.end(), 0.0) / static_cast<double>(n);
            const double shift = rng.uniform(-0.3, 0.3) - mean;
            for (auto& x : cfg.x) x += shift;
            probes.push_back(std::move(cfg));
        }
        return probes;
    }

    // Circle: gap vectors on the shrunken simplex {sum = l, gap_i >= 0.1 l}.
    // The first gap is stratified by probe index, the rest fill a uniform
    // sub-simplex; the overall rotation is randomized.
    const double l = spec.circumference;
    const double min_gap = 0.1 * l;
    const double slack = l - n * min_gap;
    for (int j = 0; j < n_points; ++j) {
        std::vector<double> gaps(static_cast<std::size_t>(n), min_gap);
        const double g1_extra = 0.85 * slack * (j + rng.uniform()) / n_points;
        gaps[0] += g1_extra;
        const double rest = slack - g1_extra;
        std::vector<double> cuts(static_cast<std::size_t>(n - 2));
        for (auto& c : cuts) c = rng.uniform();
        std::sort(cuts.begin(), cuts.end());
        double prev = 0.0;
        for (int i = 1; i < n; ++i) {
            const double next = (i == n - 1) ? 1.0 : cuts[static_cast<std::size_t>(i - 1)];
            gaps[static_cast<std::size_t>(i)] += rest * (next - prev);
            prev = next;
        }
        Configuration cfg;
        cfg.x.resize(static_cast<std::size_t>(n));
        cfg.x[0] = rng.uniform(0.0, l);
        for (int i = 1; i < n; ++i)
            cfg.x[static_cast<std::size_t>(i)] =
                cfg.x[static_cast<std::size_t>(i - 1)] - gaps[static_cast<std::size_t>(i - 1)];
        probes.push_back(std::move(cfg));
    }
    return probes;
}

ResidualReport residual_energy(const ModelSpec& spec, int n_points, std::uint64_t seed, double h,
                               Execution exec, Stencil stencil) {
    if (n_points < 2) throw std::invalid_argument("residual_energy: n_points must be >= 2");
    ResidualReport report;
    report.points = probe_configurations(spec, n_points, seed);
    report.local_energies.assign(static_cast<std::size_t>(n_points), 0.0);

    std::exception_ptr first_error = nullptr;
    const auto eval = [&](int k) {
        try {
            report.local_energies[static_cast<std::size_t>(k)] =
                local_energy(spec, report.points[static_cast<std::size_t>(k)], h, stencil);
        } catch (...) {
            // exceptions must not unwind out of the OpenMP region
#pragma omp critical(jastrow_residual_error)
            if (!first_error) first_error = std::current_exception();
        }
    };
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static) num_threads(max_threads())
        for (int k = 0; k < n_points; ++k) eval(k);
    } else {
        for (int k = 0; k < n_points; ++k) eval(k);
    }
    if (first_error) std::rethrow_exception(first_error);

    const auto [lo, hi] = std::minmax_element(report.local_energies.begin(),
                                              report.local_energies.end());
    report.spread = *hi - *lo;
    report.mean_energy = std::accumulate(report.local_energies.begin(),
                                         report.local_energies.end(), 0.0) /
                         static_cast<double>(n_points);
    if (!std::holds_alternative<CustomPhi>(spec.phi))
        report.closed_form_energy = ground_energy(spec);
    return report;
}

SymmetryReport check_symmetries(const ModelSpec& spec, int grid_size, std::uint64_t seed) {
    SymmetryReport report;
    Rng rng(seed);
    const bool circle = spec.geometry == Geometry::Circle;
    const double scale = circle ? spec.circumference : 1.0;

    std::vector<double> xs(static_cast<std::size_t>(std::max(grid_size, 4)));
    for (auto& x : xs) x = rng.uniform(0.07 * scale, 0.93 * scale);

    auto run = [&](const std::string& name, double tolerance, auto&& violation) {
        SymmetryCheck check{name, 0.0, tolerance, false};
        try {
            for (double x : xs) {
                const double y = xs[static_cast<std::size_t>(
                    static_cast<long>(std::floor(rng.uniform() * xs.size())) %
                    static_cast<long>(xs.size()))];
                check.max_violation = std::max(check.max_violation, violation(x, y));
            }
        } catch (const std::exception&) {
            check.max_violation = std::numeric_limits<double>::infinity();
        }
        check.pass = check.max_violation < tolerance;
        report.checks.push_back(std::move(check));
    };

    const auto& fam = spec.phi;
    run("phi_odd", tol::parity_identity, [&](double x, double) {
        const double p = phi_eval(fam, x);
        return std::abs(phi_eval(fam, -x) + p) / (1.0 + std::abs(p));
    });
    run("v2_even", tol::parity_identity, [&](double x, double) {
        const double v = two_body_potential(spec, x);
        return std::abs(two_body_potential(spec, -x) - v) / (1.0 + std::abs(v));
    });
    run("v3_parity", tol::parity_identity, [&](double x, double y) {
        const double v = three_body_potential(spec, x, y);
        return std::abs(three_body_potential(spec, -x, -y) - v) / (1.0 + std::abs(v));
    });
    if (circle) {
        const double l = spec.circumference;
        run("phi_periodic", tol::circle_periodicity, [&](double x, double) {
            const double p = phi_eval(fam, x);
            return std::abs(phi_eval(fam, x + l) - p) / (1.0 + std::abs(p));
        });
        run("v2_periodic", tol::circle_periodicity, [&](double x, double) {
            const double v = two_body_potential(spec, x);
            return std::abs(two_body_potential(spec, x + l) - v) / (1.0 + std::abs(v));
        });
        run("v3_periodic_x", tol::circle_periodicity, [&](double x, double y) {
            const double v = three_body_potential(spec, x, y);
            return std::abs(three_body_potential(spec, x + l, y) - v) / (1.0 + std::abs(v));
        });
        run("v3_periodic_y", tol::circle_periodicity, [&](double x, double y) {
            const double v = three_body_potential(spec, x, y);
            return std::abs(three_body_potential(spec, x, y + l) - v) / (1.0 + std::abs(v));
        });
    }
    report.all_pass = std::all_of(report.checks.begin(), report.checks.end(),
                                  [](const SymmetryCheck& c) { return c.pass; });
    return report;
}

std::vector<double> circulant_eigenvalues(double omega, double c, int n) {
    if (n < 2) throw std::invalid_argument("circulant_eigenvalues: n must be >= 2");
    if (n == 2) return {omega - 2.0 * c, omega - 6.0 * c};
    std::vector<double> lambda(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double s = std::sin(j * pi / n);
        lambda[static_cast<std::size_t>(j)] = omega - 8.0 * c * s * s;
    }
    return lambda;
}

NormalizabilityReport check_normalizability(const ModelSpec& spec,
                                            std::pair<double, double> probe_range) {
    if (spec.geometry == Geometry::Circle)
        throw std::domain_error(
            "check_normalizability: circle models are square-integrable automatically");
    const auto [lo, hi] = probe_range;
    if (!(hi > 0.0) || !(hi > lo))
        throw std::invalid_argument("check_normalizability: bad probe range");

    NormalizabilityReport report;
    report.alpha_ok = pole_residue(spec.phi) > 0.5;

    // Least c with Phi(x) <= c x^2 over the outer half of the range.
    const double start = std::max(lo, 0.5 * hi);
    const int samples = 512;
    double c = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double x = start + (hi - start) * i / samples;
        if (x <= 0.0) continue;
        c = std::max(c, big_phi_eval(spec.phi, x) / (x * x));
    }
    report.gaussian_bound_c = c;
    report.circulant_eigenvalues = circulant_eigenvalues(spec.omega, c, spec.n);
    report.positive_definite =
        *std::min_element(report.circulant_eigenvalues.begin(),
                          report.circulant_eigenvalues.end()) > 0.0;
    report.pass = report.alpha_ok && spec.omega > 0.0 && report.positive_definite;
    return report;
}

// ---------------------------------------------------------------------------
// Three-body irreducibility witness
// ---------------------------------------------------------------------------

namespace {

struct WitnessProblem {
    std::vector<double> nodes;            // sorted distinct coordinate values
    std::vector<int> iu, iv;              // node index per grid pair
    std::vector<double> target;           // phi(u) phi(v)
};

int node_index(std::vector<double>& nodes, double v) {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (std::abs(nodes[i] - v) <= 1e-12 * (1.0 + std::abs(v))) return static_cast<int>(i);
    nodes.push_back(v);
    return static_cast<int>(nodes.size()) - 1;
}

WitnessProblem build_problem(const PhiFamily& fam,
                             const std::vector<std::pair<double, double>>& grid) {
    WitnessProblem p;
    std::vector<double> us, vs;
    for (const auto& [u, v] : grid) {
        node_index(us, u);
        node_index(vs, v);
    }
    if (us.size() < 3 || vs.size() < 3)
        throw std::invalid_argument(
            "irreducibility witness: grid needs >= 3 distinct u and v values");
    for (const auto& [u, v] : grid) {
        p.iu.push_back(node_index(p.nodes, u));
        p.iv.push_back(node_index(p.nodes, v));
        p.target.push_back(phi_eval(fam, u) * phi_eval(fam, v));
    }
    return p;
}

double sup_residual(const WitnessProblem& p, const std::vector<double>& F, double lambda0) {
    double s = 0.0;
    for (std::size_t k = 0; k < p.target.size(); ++k) {
        const double r = p.target[k] -
                         0.5 * (F[static_cast<std::size_t>(p.iu[k])] +
                                F[static_cast<std::size_t>(p.iv[k])]) -
                         lambda0;
        s = std::max(s, std::abs(r));
    }
    return s;
}

// Minimize max_k |a_k - c_k t| over t (convex piecewise linear).
double min_max_1d(const std::vector<double>& a, const std::vector<double>& c) {
    // the minimizer lies in the hull of the per-term minimizers a_k / c_k
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t k = 0; k < a.size(); ++k) {
        lo = std::min(lo, a[k] / c[k]);
        hi = std::max(hi, a[k] / c[k]);
    }
    auto value = [&](double t) {
        double s = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) s = std::max(s, std::abs(a[k] - c[k] * t));
        return s;
    };
    for (int it = 0; it < 200; ++it) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (value(m1) <= value(m2)) hi = m2; else lo = m1;
        if (hi - lo < 1e-14 * (1.0 + std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

// Cholesky solve of the SPD system A x = b (in place, tiny dense systems).
std::vector<double> cholesky_solve(std::vector<std::vector<double>> A, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) A[j][j] -= A[j][k] * A[j][k];
        A[j][j] = std::sqrt(std::max(A[j][j], 1e-300));
        for (std::size_t i = j + 1; i < n; ++i) {
            for (std::size_t k = 0; k < j; ++k) A[i][j] -= A[i][k] * A[j][k];
            A[i][j] /= A[j][j];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) b[i] -= A[i][k] * b[k];
        b[i] /= A[i][i];
    }
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t k = i + 1; k < n; ++k) b[i] -= A[k][i] * b[k];
        b[i] /= A[i][i];
    }
    return b;
}

}  // namespace

WitnessResult two_body_irreducibility_witness_detail(
    const PhiFamily& fam, const std::vector<std::pair<double, double>>& grid) {
    const WitnessProblem p = build_problem(fam, grid);
    const std::size_t K = p.nodes.size(), M = p.target.size();

    WitnessResult result;

    // Certified lower bound: the alternating rectangle sum
    // M(u1,v1) - M(u1,v2) - M(u2,v1) + M(u2,v2) = (phi(u1)-phi(u2))(phi(v1)-phi(v2))
    // is invariant under adding F(u)/2 + F(v)/2 + lambda0, so any approximant
    // has sup-residual >= |rectangle| / 4 whenever all four corners are in
    // the grid.
    {
        std::map<std::pair<int, int>, double> present;
        for (std::size_t k = 0; k < M; ++k)
            present[{p.iu[k], p.iv[k]}] = p.target[k];
        for (const auto& [key1, m11] : present)
            for (const auto& [key2, m22] : present) {
                if (key1.first == key2.first || key1.second == key2.second) continue;
                const auto it12 = present.find({key1.first, key2.second});
                const auto it21 = present.find({key2.first, key1.second});
                if (it12 == present.end() || it21 == present.end()) continue;
                const double rect = m11 - it12->second - it21->second + m22;
                result.rectangle_lower_bound =
                    std::max(result.rectangle_lower_bound, 0.25 * std::abs(rect));
            }
    }

    // Phase 1: alternating minimization over F (lambda0 folded into F's
    // offset) and lambda0's midrange update.
    std::vector<double> F(K, 0.0);
    double lambda0 = 0.0;
    auto residual = [&](std::size_t k) {
        return p.target[k] -
               0.5 * (F[static_cast<std::size_t>(p.iu[k])] +
                      F[static_cast<std::size_t>(p.iv[k])]) -
               lambda0;
    };
    int sweeps = 0;
    for (; sweeps < 500; ++sweeps) {
        double change = 0.0;
        {
            double rmin = std::numeric_limits<double>::infinity(), rmax = -rmin;
            for (std::size_t k = 0; k < M; ++k) {
                const double r = residual(k);
                rmin = std::min(rmin, r);
                rmax = std::max(rmax, r);
            }
            const double dl = 0.5 * (rmin + rmax);
            lambda0 += dl;
            change = std::abs(dl);
        }
        for (std::size_t w = 0; w < K; ++w) {
            std::vector<double> a, c;
            for (std::size_t k = 0; k < M; ++k) {
                double coef = 0.0;
                if (p.iu[k] == static_cast<int>(w)) coef += 0.5;
                if (p.iv[k] == static_cast<int>(w)) coef += 0.5;
                if (coef == 0.0) continue;
                a.push_back(residual(k) + coef * F[w]);
                c.push_back(coef);
            }
            if (a.empty()) continue;
            const double t = min_max_1d(a, c);
            change = std::max(change, std::abs(t - F[w]));
            F[w] = t;
        }
        if (change < tol::witness_step_change) break;
    }

    // Phase 2: sup-norm polish by iteratively reweighted least squares
    // (Lawson). Unknowns z = (F, lambda0); the one-dimensional gauge null
    // space (F += 2c, lambda0 -= c) is handled by a tiny ridge.
    {
        std::vector<double> w(M, 1.0 / static_cast<double>(M));
        double best = sup_residual(p, F, lambda0);
        std::vector<double> bestF = F;
        double best_l0 = lambda0;
        for (int it = 0; it < 400; ++it) {
            std::vector<std::vector<double>> A(K + 1, std::vector<double>(K + 1, 0.0));
            std::vector<double> b(K + 1, 0.0);
            for (std::size_t k = 0; k < M; ++k) {
                int cols[3];
                double coefs[3];
                int nc = 0;
                if (p.iu[k] == p.iv[k]) {
                    cols[nc] = p.iu[k]; coefs[nc++] = 1.0;
                } else {
                    cols[nc] = p.iu[k]; coefs[nc++] = 0.5;
                    cols[nc] = p.iv[k]; coefs[nc++] = 0.5;
                }
                cols[nc] = static_cast<int>(K); coefs[nc++] = 1.0;
                for (int a1 = 0; a1 < nc; ++a1) {
                    b[static_cast<std::size_t>(cols[a1])] += w[k] * coefs[a1] * p.target[k];
                    for (int a2 = 0; a2 < nc; ++a2)
                        A[static_cast<std::size_t>(cols[a1])][static_cast<std::size_t>(cols[a2])] +=
                            w[k] * coefs[a1] * coefs[a2];
                }
            }
            double trace = 0.0;
            for (std::size_t i = 0; i <= K; ++i) trace += A[i][i];
            for (std::size_t i = 0; i <= K; ++i) A[i][i] += 1e-14 * trace;
            const auto z = cholesky_solve(std::move(A), std::move(b));
            std::vector<double> Fz(z.begin(), z.begin() + static_cast<long>(K));
            const double l0z = z[K];
            const double s = sup_residual(p, Fz, l0z);
            if (s < best) {
                best = s;
                bestF = Fz;
                best_l0 = l0z;
            }
            double wsum = 0.0;
            for (std::size_t k = 0; k < M; ++k) {
                const double r = p.target[k] -
                                 0.5 * (Fz[static_cast<std::size_t>(p.iu[k])] +
                                        Fz[static_cast<std::size_t>(p.iv[k])]) -
                                 l0z;
                w[k] = std::max(w[k] * std::abs(r), 1e-280);
                wsum += w[k];
            }
            for (auto& wk : w) wk /= wsum;
        }
        F = bestF;
        lambda0 = best_l0;
    }

    result.sup_residual = sup_residual(p, F, lambda0);
    result.lambda0 = lambda0;
    result.sweeps = sweeps;
    return result;
}

double two_body_irreducibility_witness(const PhiFamily& fam,
                                       const std::vector<std::pair<double, double>>& grid) {
    return two_body_irreducibility_witness_detail(fam, grid).sup_residual;
}

std::vector<std::pair<double, double>> square_grid(double lo, double hi, int n) {
    std::vector<std::pair<double, double>> grid;
    grid.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            grid.emplace_back(lo + (hi - lo) * i / (n - 1), lo + (hi - lo) * j / (n - 1));
    return grid;
}

}  // namespace jastrow::verify
