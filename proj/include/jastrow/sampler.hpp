#ifndef JASTROW_SAMPLER_HPP
#define JASTROW_SAMPLER_HPP

#include <cstdint>
#include <vector>

#include "jastrow/model.hpp"
#include "jastrow/threading.hpp"

namespace jastrow::mc {

struct ChainParams {
    long n_steps = 0;       // total sweeps, including burn-in
    long burn_in = 0;       // sweeps discarded from the front
    int thinning = 1;       // keep every thinning-th sweep after burn-in
    double step_scale = 0;  // proposal width (coordinate units)
    std::uint64_t seed = 0;
};

/// Defaults targeting acceptance around 0.3-0.5: step_scale = 0.3 * mean
/// neighbor gap, burn-in 10% of the run, thinning 2.
ChainParams default_chain_params(const ModelSpec& spec, long n_samples, std::uint64_t seed);

/// One logged Metropolis proposal; the accept decision is re-derivable as
/// log_u < delta2_log_psi (in-sector proposals only; out-of-sector ones are
/// rejected outright and carry log_u = 0).
struct Transition {
    int particle;
    double old_x, new_x;
    double delta2_log_psi;  // 2 (log psi' - log psi)
    double log_u;
    bool in_sector;
    bool accepted;
};

struct SampleResult {
    std::vector<Configuration> samples;
    double acceptance_rate = 0.0;
    long n_proposals = 0;
    long n_accepted = 0;
    std::vector<Transition> transitions;  // only when logging is requested
};

/// Metropolis chain with single-particle Gaussian moves targeting
/// |psi|^2 = exp(2 log psi) on the sector. The proposal is symmetric, so no
/// Hastings correction enters the acceptance rule. Proposals leaving the
/// sector are rejected; emitted states are always in-sector, with circle
/// configurations translated so x1 lies in [0, l). Deterministic given the
/// seed. Line models must pass verify::check_normalizability first (the
/// gate is enforced here); circle models are normalizable automatically.
SampleResult sample(const ModelSpec& spec, const ChainParams& params,
                    bool log_transitions = false);

/// Independent chains with sub-seeds seed + chain index; under
/// Execution::Parallel the chains run concurrently and results are
/// collected by chain index, so the output is identical to Serial.
std::vector<SampleResult> sample_chains(const ModelSpec& spec, const ChainParams& params,
                                        int n_chains, Execution exec = Execution::Parallel);

/// Raw nearest-neighbor spacings pooled over samples. Circle: all N bonds
/// including the wrap-around arc. Line: only the bonds among the central
/// third of the particles (edge effects of the confining well), or all
/// bonds when that window is empty.
std::vector<double> collect_spacings(const ModelSpec& spec,
                                     const std::vector<Configuration>& samples);

struct SpacingHistogram {
    std::vector<double> bin_edges;  // size bins + 1
    std::vector<double> densities;  // normalized: sum density * width = 1
    long n_samples = 0;             // pooled spacing count
    double mean_spacing_raw = 0.0;  // unfolding scale, coordinate units
};

/// Histogram of spacings rescaled by their empirical mean (unfolding).
SpacingHistogram spacing_histogram(const ModelSpec& spec,
                                   const std::vector<Configuration>& samples, int n_bins = 32);

enum class ReferenceKind { WignerSurmise, Poisson };

/// Reference spacing laws of unit norm and unit mean: Wigner surmise
/// p_b(s) = A_b s^b exp(-c_b s^2) for b in {1, 2, 4}, or Poisson exp(-s).
std::vector<double> reference_curve(ReferenceKind kind, int beta,
                                    const std::vector<double>& s_grid);

/// Normalization constants (A_b, c_b) of the Wigner surmise.
std::pair<double, double> wigner_constants(int beta);

/// L1 distance between the histogram and a reference law, evaluated at bin
/// midpoints.
double l1_distance(const SpacingHistogram& hist, ReferenceKind kind, int beta = 0);

/// L1 distance between two histograms over the union of their supports
/// (piecewise-constant densities).
double l1_distance(const SpacingHistogram& a, const SpacingHistogram& b);

}  // namespace jastrow::mc

#endif
