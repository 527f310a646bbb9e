#include "jastrow/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "jastrow/rng.hpp"
#include "jastrow/verify.hpp"

namespace jastrow::mc {

ChainParams default_chain_params(const ModelSpec& spec, long n_samples, std::uint64_t seed) {
    ChainParams p;
    p.thinning = 2;
    p.burn_in = std::max<long>(1000, n_samples * p.thinning / 8);
    p.n_steps = p.burn_in + n_samples * p.thinning;
    p.seed = seed;
    const double alpha = pole_residue(spec.phi);
    const double mean_gap = spec.geometry == Geometry::Circle
                                ? spec.circumference / spec.n
                                : std::sqrt((2.0 * alpha + 1.0) / (2.0 * std::max(spec.omega, 1e-12)));
    p.step_scale = 0.3 * mean_gap;
    return p;
}

namespace {

Configuration initial_configuration(const ModelSpec& spec, double gap) {
    Configuration cfg;
    cfg.x.resize(static_cast<std::size_t>(spec.n));
    if (spec.geometry == Geometry::Circle) {
        const double l = spec.circumference;
        for (int i = 0; i < spec.n; ++i)
            cfg.x[static_cast<std::size_t>(i)] = l * (spec.n - 1 - i) / spec.n;
    } else {
        for (int i = 0; i < spec.n; ++i)
            cfg.x[static_cast<std::size_t>(i)] = 0.5 * gap * (spec.n - 1 - 2 * i);
    }
    return cfg;
}

void recenter_circle(const ModelSpec& spec, Configuration& cfg) {
    const double l = spec.circumference;
    const double k = std::floor(cfg.x[0] / l);
    if (k != 0.0)
        for (auto& x : cfg.x) x -= k * l;
}

}  // namespace

SampleResult sample(const ModelSpec& spec, const ChainParams& params, bool log_transitions) {
    if (!(params.step_scale > 0.0)) throw std::invalid_argument("sample: step_scale must be > 0");
    if (params.thinning < 1) throw std::invalid_argument("sample: thinning must be >= 1");
    if (!(params.burn_in < params.n_steps))
        throw std::invalid_argument("sample: burn_in must be smaller than n_steps");
    if (spec.geometry == Geometry::Line) {
        const auto gate = verify::check_normalizability(spec);
        if (!gate.pass)
            throw std::domain_error(
                "sample: the model fails the normalizability gate (needs alpha > 1/2, "
                "omega > 0 and a positive-definite Gaussian bound)");
    }

    Rng rng(params.seed);
    const double alpha = pole_residue(spec.phi);
    Configuration cfg = initial_configuration(
        spec, std::sqrt((2.0 * alpha + 1.0) / (2.0 * std::max(spec.omega, 1e-12))));
    double lp = log_psi(spec, cfg);

    SampleResult result;
    const long expected =
        (params.n_steps - params.burn_in + params.thinning - 1) / params.thinning;
    result.samples.reserve(static_cast<std::size_t>(std::max<long>(expected, 0)));

    for (long t = 0; t < params.n_steps; ++t) {
        for (int i = 0; i < spec.n; ++i) {
            const double old_x = cfg.x[static_cast<std::size_t>(i)];
            const double new_x = old_x + params.step_scale * rng.gaussian();
            ++result.n_proposals;

            Transition tr{i, old_x, new_x, 0.0, 0.0, false, false};
            cfg.x[static_cast<std::size_t>(i)] = new_x;
            if (in_sector(spec, cfg)) {
                tr.in_sector = true;
                const double lp_new = log_psi(spec, cfg);
                tr.delta2_log_psi = 2.0 * (lp_new - lp);
                tr.log_u = std::log(rng.uniform());
                if (tr.log_u < tr.delta2_log_psi) {
                    tr.accepted = true;
                    lp = lp_new;
                    ++result.n_accepted;
                }
            }
            if (!tr.accepted) cfg.x[static_cast<std::size_t>(i)] = old_x;
            if (log_transitions) result.transitions.push_back(tr);
        }
        if (spec.geometry == Geometry::Circle) {
            const double before = cfg.x[0];
            recenter_circle(spec, cfg);
            if (cfg.x[0] != before) lp = log_psi(spec, cfg);
        }
        if (t >= params.burn_in && (t - params.burn_in) % params.thinning == 0)
            result.samples.push_back(cfg);
    }

    result.acceptance_rate =
        result.n_proposals ? static_cast<double>(result.n_accepted) / result.n_proposals : 0.0;
    if (result.n_accepted == 0)
        throw std::runtime_error("sample: zero acceptance; step_scale is pathological");
    return result;
}

std::vector<SampleResult> sample_chains(const ModelSpec& spec, const ChainParams& params,
                                        int n_chains, Execution exec) {
    if (n_chains < 1) throw std::invalid_argument("sample_chains: n_chains must be >= 1");
    std::vector<SampleResult> results(static_cast<std::size_t>(n_chains));
    const auto run = [&](int k) {
        ChainParams p = params;
        p.seed = params.seed + static_cast<std::uint64_t>(k);  // documented splitting rule
        results[static_cast<std::size_t>(k)] = sample(spec, p);
    };
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(max_threads())
        for (int k = 0; k < n_chains; ++k) run(k);
    } else {
        for (int k = 0; k < n_chains; ++k) run(k);
    }
    return results;
}

std::vector<double> collect_spacings(const ModelSpec& spec,
                                     const std::vector<Configuration>& samples) {
    if (samples.empty()) throw std::invalid_argument("collect_spacings: empty sample list");
    std::vector<double> spacings;
    int lo = 0, hi = bond_count(spec) - 1;
    if (spec.geometry == Geometry::Line) {
        // central third of the particles; unfolding by a global mean is only
        // a bulk statement near the Gaussian edge
        lo = spec.n / 3;
        hi = 2 * spec.n / 3 - 1;
        if (hi < lo) { lo = 0; hi = spec.n - 2; }
    }
    spacings.reserve(samples.size() * static_cast<std::size_t>(hi - lo + 1));
    for (const auto& cfg : samples) {
        const auto d = bond_differences(spec, cfg);
        for (int i = lo; i <= hi; ++i) spacings.push_back(d[static_cast<std::size_t>(i)]);
    }
    return spacings;
}

SpacingHistogram spacing_histogram(const ModelSpec& spec,
                                   const std::vector<Configuration>& samples, int n_bins) {
    const auto raw = collect_spacings(spec, samples);
    SpacingHistogram hist;
    hist.n_samples = static_cast<long>(raw.size());
    hist.mean_spacing_raw =
        std::accumulate(raw.begin(), raw.end(), 0.0) / static_cast<double>(raw.size());

    double smax = 0.0;
    for (double r : raw) smax = std::max(smax, r / hist.mean_spacing_raw);
    const double top = smax * (1.0 + 1e-12);
    hist.bin_edges.resize(static_cast<std::size_t>(n_bins) + 1);
    for (int i = 0; i <= n_bins; ++i)
        hist.bin_edges[static_cast<std::size_t>(i)] = top * i / n_bins;

    std::vector<long> counts(static_cast<std::size_t>(n_bins), 0);
    for (double r : raw) {
        const double s = r / hist.mean_spacing_raw;
        auto b = static_cast<long>(std::floor(s / top * n_bins));
        b = std::clamp<long>(b, 0, n_bins - 1);
        ++counts[static_cast<std::size_t>(b)];
    }
    hist.densities.resize(static_cast<std::size_t>(n_bins));
    const double width = top / n_bins;
    for (int i = 0; i < n_bins; ++i)
        hist.densities[static_cast<std::size_t>(i)] =
            static_cast<double>(counts[static_cast<std::size_t>(i)]) /
            (static_cast<double>(raw.size()) * width);
    return hist;
}

std::pair<double, double> wigner_constants(int beta) {
    if (beta != 1 && beta != 2 && beta != 4)
        throw std::invalid_argument("wigner_constants: beta must be 1, 2 or 4");
    // Unit norm and unit mean fix both constants:
    // c = (Gamma((b+2)/2) / Gamma((b+1)/2))^2, A = 2 c^{(b+1)/2} / Gamma((b+1)/2).
    const double g1 = std::tgamma(0.5 * (beta + 1));
    const double g2 = std::tgamma(0.5 * (beta + 2));
    const double c = (g2 / g1) * (g2 / g1);
    const double A = 2.0 * std::pow(c, 0.5 * (beta + 1)) / g1;
    return {A, c};
}

std::vector<double> reference_curve(ReferenceKind kind, int beta,
                                    const std::vector<double>& s_grid) {
    std::vector<double> out;
    out.reserve(s_grid.size());
    if (kind == ReferenceKind::Poisson) {
        for (double s : s_grid) out.push_back(std::exp(-s));
        return out;
    }
    const auto [A, c] = wigner_constants(beta);
    for (double s : s_grid) out.push_back(A * std::pow(s, beta) * std::exp(-c * s * s));
    return out;
}

double l1_distance(const SpacingHistogram& hist, ReferenceKind kind, int beta) {
    std::vector<double> mids(hist.densities.size());
    for (std::size_t i = 0; i < mids.size(); ++i)
        mids[i] = 0.5 * (hist.bin_edges[i] + hist.bin_edges[i + 1]);
    const auto ref = reference_curve(kind, beta, mids);
    double d = 0.0;
    for (std::size_t i = 0; i < mids.size(); ++i)
        d += std::abs(hist.densities[i] - ref[i]) * (hist.bin_edges[i + 1] - hist.bin_edges[i]);
    return d;
}

double l1_distance(const SpacingHistogram& a, const SpacingHistogram& b) {
    std::vector<double> edges;
    edges.reserve(a.bin_edges.size() + b.bin_edges.size());
    edges.insert(edges.end(), a.bin_edges.begin(), a.bin_edges.end());
    edges.insert(edges.end(), b.bin_edges.begin(), b.bin_edges.end());
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    auto density_at = [](const SpacingHistogram& h, double x) {
        if (x < h.bin_edges.front() || x >= h.bin_edges.back()) return 0.0;
        const auto it = std::upper_bound(h.bin_edges.begin(), h.bin_edges.end(), x);
        const auto idx = static_cast<std::size_t>(it - h.bin_edges.begin()) - 1;
        return h.densities[std::min(idx, h.densities.size() - 1)];
    };
    double d = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double mid = 0.5 * (edges[i] + edges[i + 1]);
        d += std::abs(density_at(a, mid) - density_at(b, mid)) * (edges[i + 1] - edges[i]);
    }
    return d;
}

}  // namespace jastrow::mc
