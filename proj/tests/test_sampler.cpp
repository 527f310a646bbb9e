#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "jastrow/quadrature.hpp"
#include "jastrow/sampler.hpp"
#include "support/oracles.hpp"

using namespace jastrow;

namespace {

const ModelSpec kTrig = make_circle_model(3, 1.0, make_trigonometric(2.0, 1.0));

// batch-means standard error, robust against chain autocorrelation
double batch_stderr(const std::vector<double>& series, int n_batches = 32) {
    const std::size_t len = series.size() / static_cast<std::size_t>(n_batches);
    std::vector<double> means;
    for (int b = 0; b < n_batches; ++b) {
        const auto start = static_cast<std::size_t>(b) * len;
        means.push_back(std::accumulate(series.begin() + static_cast<long>(start),
                                        series.begin() + static_cast<long>(start + len), 0.0) /
                        static_cast<double>(len));
    }
    const double m = std::accumulate(means.begin(), means.end(), 0.0) / n_batches;
    double var = 0.0;
    for (double x : means) var += (x - m) * (x - m);
    var /= (n_batches - 1);
    return std::sqrt(var / n_batches);
}

}  // namespace

TEST_CASE("chains are deterministic given the seed") {
    auto params = mc::default_chain_params(kTrig, 500, 42);
    const auto a = mc::sample(kTrig, params);
    const auto b = mc::sample(kTrig, params);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) CHECK(a.samples[i].x == b.samples[i].x);
    CHECK(a.acceptance_rate == b.acceptance_rate);
}

TEST_CASE("sub-seed splitting rule: chain k uses seed + k") {
    auto params = mc::default_chain_params(kTrig, 200, 7);
    const auto chains = mc::sample_chains(kTrig, params, 3, Execution::Serial);
    for (int k = 0; k < 3; ++k) {
        auto p = params;
        p.seed = params.seed + static_cast<std::uint64_t>(k);
        const auto solo = mc::sample(kTrig, p);
        CHECK(chains[static_cast<std::size_t>(k)].samples.back().x == solo.samples.back().x);
    }
}

TEST_CASE("emitted states are in-sector with x1 in [0, l) on the circle") {
    auto params = mc::default_chain_params(kTrig, 2000, 3);
    const auto run = mc::sample(kTrig, params);
    for (const auto& cfg : run.samples) {
        CHECK(in_sector(kTrig, cfg));
        CHECK(cfg.x[0] >= 0.0);
        CHECK(cfg.x[0] < 1.0);
    }
    CHECK(run.acceptance_rate > 0.05);
    CHECK(run.acceptance_rate < 0.95);
}

TEST_CASE("circle spacings telescope to the circumference before unfolding") {
    auto params = mc::default_chain_params(kTrig, 300, 9);
    const auto run = mc::sample(kTrig, params);
    for (const auto& cfg : run.samples) {
        const auto d = bond_differences(kTrig, cfg);
        CHECK(std::accumulate(d.begin(), d.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("spacing histogram: normalization and unit unfolded mean") {
    auto params = mc::default_chain_params(kTrig, 4000, 5);
    const auto run = mc::sample(kTrig, params);
    const auto hist = mc::spacing_histogram(kTrig, run.samples, 24);
    double norm = 0.0, mean = 0.0;
    for (std::size_t i = 0; i < hist.densities.size(); ++i) {
        const double w = hist.bin_edges[i + 1] - hist.bin_edges[i];
        norm += hist.densities[i] * w;
        mean += hist.densities[i] * w * 0.5 * (hist.bin_edges[i] + hist.bin_edges[i + 1]);
    }
    const double n = static_cast<double>(hist.n_samples);
    CHECK(std::abs(norm - 1.0) < 2.0 / std::sqrt(n));
    CHECK(std::abs(mean - 1.0) < 3.0 / std::sqrt(n));
    CHECK(hist.mean_spacing_raw == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("spacing statistics are translation invariant on the circle") {
    auto params = mc::default_chain_params(kTrig, 1000, 13);
    const auto run = mc::sample(kTrig, params);
    auto shifted = run.samples;
    for (auto& cfg : shifted)
        for (auto& x : cfg.x) x += 2.7;
    const auto h0 = mc::spacing_histogram(kTrig, run.samples, 16);
    const auto h1 = mc::spacing_histogram(kTrig, shifted, 16);
    for (std::size_t i = 0; i < h0.densities.size(); ++i)
        CHECK(h0.densities[i] == doctest::Approx(h1.densities[i]).epsilon(1e-9));
}

TEST_CASE("detailed balance: the decision rule is re-derivable from the log") {
    // line model: emitted samples equal the post-sweep state, so the log can
    // be replayed exactly
    const auto spec = make_line_model(3, 1.0, make_rational(2.0));
    mc::ChainParams params;
    params.n_steps = 60;
    params.burn_in = 0;
    params.thinning = 1;
    params.step_scale = 0.4;
    params.seed = 2718;
    const auto run = mc::sample(spec, params, true);
    REQUIRE(run.transitions.size() == 60u * 3u);
    REQUIRE(run.samples.size() == 60u);

    for (const auto& tr : run.transitions) {
        const bool should_accept = tr.in_sector && tr.log_u < tr.delta2_log_psi;
        CHECK(tr.accepted == should_accept);
        if (!tr.in_sector) CHECK(!tr.accepted);
    }
    // recompute the logged density ratios from log_psi for sweeps 1..n
    for (std::size_t sweep = 1; sweep < run.samples.size(); ++sweep) {
        Configuration cfg = run.samples[sweep - 1];
        for (int i = 0; i < 3; ++i) {
            const auto& tr = run.transitions[sweep * 3 + static_cast<std::size_t>(i)];
            CHECK(tr.old_x == cfg.x[static_cast<std::size_t>(i)]);
            if (tr.in_sector) {
                Configuration prop = cfg;
                prop.x[static_cast<std::size_t>(i)] = tr.new_x;
                const double delta2 = 2.0 * (log_psi(spec, prop) - log_psi(spec, cfg));
                CHECK(delta2 == doctest::Approx(tr.delta2_log_psi).epsilon(1e-12));
            }
            if (tr.accepted) cfg.x[static_cast<std::size_t>(i)] = tr.new_x;
        }
        CHECK(cfg.x == run.samples[sweep].x);
    }
}

TEST_CASE("split-chain stationarity: halves agree in L1") {
    mc::ChainParams params = mc::default_chain_params(kTrig, 50000, 101);
    params.thinning = 5;
    params.n_steps = params.burn_in + 50000L * params.thinning;
    const auto run = mc::sample(kTrig, params);
    const std::size_t half = run.samples.size() / 2;
    const std::vector<Configuration> first(run.samples.begin(),
                                           run.samples.begin() + static_cast<long>(half));
    const std::vector<Configuration> second(run.samples.begin() + static_cast<long>(half),
                                            run.samples.end());
    const auto h1 = mc::spacing_histogram(kTrig, first, 10);
    const auto h2 = mc::spacing_histogram(kTrig, second, 10);
    const double l1 = mc::l1_distance(h1, h2);
    CHECK(l1 < 4.0 / std::sqrt(static_cast<double>(std::min(h1.n_samples, h2.n_samples))));
}

TEST_CASE("gap marginal of the circle trigonometric model matches quadrature") {
    mc::ChainParams params = mc::default_chain_params(kTrig, 30000, 77);
    const auto run = mc::sample(kTrig, params);

    const double edges[] = {0.05, 0.15, 0.25, 0.35, 0.45, 0.60};
    for (std::size_t b = 0; b + 1 < std::size(edges); ++b) {
        const double p = oracles::trig_gap_probability(2.0, 1.0, edges[b], edges[b + 1]);
        std::vector<double> indicator;
        indicator.reserve(run.samples.size());
        for (const auto& cfg : run.samples) {
            const double u = cfg.x[0] - cfg.x[1];
            indicator.push_back(u >= edges[b] && u < edges[b + 1] ? 1.0 : 0.0);
        }
        const double phat =
            std::accumulate(indicator.begin(), indicator.end(), 0.0) / indicator.size();
        const double se = batch_stderr(indicator);
        CHECK(std::abs(phat - p) < 3.0 * se);
    }
}

TEST_CASE("N=2 reduced rational model: gap moments match quadrature") {
    // for N=2, omega=1, alpha=1 the gap density is proportional to u^2 e^{-u^2/2}
    const auto spec = make_line_model(2, 1.0, make_rational(1.0));
    const double z0 = integrate([](double u) { return u * u * std::exp(-u * u / 2); }, 0, 40);
    const double m1 =
        integrate([](double u) { return u * u * u * std::exp(-u * u / 2); }, 0, 40) / z0;
    const double m2 =
        integrate([](double u) { return u * u * u * u * std::exp(-u * u / 2); }, 0, 40) / z0;

    mc::ChainParams params = mc::default_chain_params(spec, 40000, 15);
    const auto run = mc::sample(spec, params);
    std::vector<double> gap, gap2;
    for (const auto& cfg : run.samples) {
        const double u = cfg.x[0] - cfg.x[1];
        gap.push_back(u);
        gap2.push_back(u * u);
    }
    const double g1 = std::accumulate(gap.begin(), gap.end(), 0.0) / gap.size();
    const double g2 = std::accumulate(gap2.begin(), gap2.end(), 0.0) / gap2.size();
    CHECK(std::abs(g1 - m1) < 3.0 * batch_stderr(gap));
    CHECK(std::abs(g2 - m2) < 3.0 * batch_stderr(gap2));
}

TEST_CASE("reference curves: constants, norm and mean") {
    const auto [a1, c1] = mc::wigner_constants(1);
    CHECK(c1 == doctest::Approx(pi / 4.0).epsilon(1e-14));
    CHECK(a1 == doctest::Approx(pi / 2.0).epsilon(1e-14));
    for (int beta : {1, 2, 4}) {
        const auto [A, c] = mc::wigner_constants(beta);
        const double norm = integrate(
            [&](double s) { return A * std::pow(s, beta) * std::exp(-c * s * s); }, 0.0, 30.0,
            1e-12);
        const double mean = integrate(
            [&](double s) { return s * A * std::pow(s, beta) * std::exp(-c * s * s); }, 0.0, 30.0,
            1e-12);
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(mean == doctest::Approx(1.0).epsilon(1e-10));
    }
    const auto poisson = mc::reference_curve(mc::ReferenceKind::Poisson, 0, {0.0, 1.0});
    CHECK(poisson[0] == doctest::Approx(1.0));
    CHECK(poisson[1] == doctest::Approx(std::exp(-1.0)));
    CHECK_THROWS_AS(mc::wigner_constants(3), std::invalid_argument);
}

TEST_CASE("the beta = 2 matched model tracks its long-run reference over Poisson") {
    // 2 alpha = 2 omega = beta = 2: alpha = omega = 1
    const auto spec = make_line_model(10, 1.0, make_rational(1.0));
    mc::ChainParams params = mc::default_chain_params(spec, 30000, 31);
    const auto run = mc::sample(spec, params);
    const auto hist = mc::spacing_histogram(spec, run.samples, 20);

    mc::ChainParams ref_params = mc::default_chain_params(spec, 90000, 977);
    const auto ref_run = mc::sample(spec, ref_params);
    const auto ref_hist = mc::spacing_histogram(spec, ref_run.samples, 20);

    const double to_ref = mc::l1_distance(hist, ref_hist);
    const double to_poisson = mc::l1_distance(hist, mc::ReferenceKind::Poisson);
    CHECK(to_ref < to_poisson);
    // the short-range plasma curve leans toward the Wigner beta=2 shape
    CHECK(mc::l1_distance(hist, mc::ReferenceKind::WignerSurmise, 2) < to_poisson);
}

TEST_CASE("parameter and gate errors") {
    mc::ChainParams params = mc::default_chain_params(kTrig, 100, 1);
    params.burn_in = params.n_steps;
    CHECK_THROWS_AS(mc::sample(kTrig, params), std::invalid_argument);

    // omega = 0 line models fail the normalizability gate
    const auto free_line = make_line_model(3, 0.0, make_rational(2.0));
    CHECK_THROWS_AS(mc::sample(free_line, mc::default_chain_params(free_line, 100, 1)),
                    std::domain_error);

    // pathological step: every proposal leaves the sector
    auto bad = mc::default_chain_params(make_line_model(3, 1.0, make_rational(2.0)), 40, 1);
    bad.step_scale = 1e9;
    CHECK_THROWS_AS(mc::sample(make_line_model(3, 1.0, make_rational(2.0)), bad),
                    std::runtime_error);
}
