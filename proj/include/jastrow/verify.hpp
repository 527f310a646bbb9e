#ifndef JASTROW_VERIFY_HPP
#define JASTROW_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jastrow/model.hpp"
#include "jastrow/threading.hpp"

namespace jastrow::verify {

/// Central finite-difference stencil order for derivatives of log psi.
/// FourthOrder (5-point) is the acceptance path; SecondOrder (3-point) is
/// kept for the h-refinement convergence checks.
enum class Stencil { SecondOrder, FourthOrder };

/// Sum over coordinates of (d_i log psi)^2 + d_i^2 log psi, evaluated by
/// central finite differences of step h. Deliberately ignorant of the
/// analytic derivatives of phi so it can serve as an independent oracle.
double kinetic_log_derivative_term(const ModelSpec& spec, const Configuration& cfg, double h,
                                   Stencil stencil = Stencil::FourthOrder);

/// Local energy (H psi)/psi = V - sum[(d_i log psi)^2 + d_i^2 log psi].
/// Constant over configurations exactly when psi is an eigenfunction.
/// Throws std::domain_error when cfg is within 10h of the sector boundary.
double local_energy(const ModelSpec& spec, const Configuration& cfg, double h,
                    Stencil stencil = Stencil::FourthOrder);

/// Fast analytic-derivative variant using d_i log psi = -omega x_i +
/// phi(d_i) - phi(d_{i-1}). Shares the phi code path with the potential,
/// so it is NOT an oracle; the finite-difference form above is the
/// acceptance path.
double local_energy_analytic(const ModelSpec& spec, const Configuration& cfg);

struct ResidualReport {
    std::vector<Configuration> points;
    std::vector<double> local_energies;  // ordered by probe index
    double spread = 0.0;                 // max - min
    double mean_energy = 0.0;
    std::optional<double> closed_form_energy;  // absent for Custom phi
};

/// Stratified-uniform interior probe configurations with a minimum
/// neighbor gap of 0.1 * length_scale; deterministic given seed.
std::vector<Configuration> probe_configurations(const ModelSpec& spec, int n_points,
                                                std::uint64_t seed);

/// Local-energy statistics over n_points seeded probes. Deterministic given
/// (seed, n_points) regardless of execution mode; probe evaluations run
/// concurrently under Execution::Parallel and are collected by index.
ResidualReport residual_energy(const ModelSpec& spec, int n_points, std::uint64_t seed,
                               double h, Execution exec = Execution::Parallel,
                               Stencil stencil = Stencil::FourthOrder);

struct SymmetryCheck {
    std::string name;
    double max_violation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SymmetryReport {
    std::vector<SymmetryCheck> checks;
    bool all_pass = false;
};

/// Evaluates phi oddness, V2 evenness and V3 parity on seeded random grids;
/// on the circle additionally phi/V2/V3 l-periodicity. Reports violations,
/// never throws.
SymmetryReport check_symmetries(const ModelSpec& spec, int grid_size, std::uint64_t seed);

/// Eigenvalues of the circulant bound matrix B with first row
/// (omega - 4c, 2c, 0, ..., 0, 2c): lambda_j = omega - 8c sin^2(j pi / n).
/// For n = 2 the two off-diagonal slots coincide and the pair is
/// (omega - 2c, omega - 6c).
std::vector<double> circulant_eigenvalues(double omega, double c, int n);

struct NormalizabilityReport {
    bool alpha_ok = false;
    double gaussian_bound_c = 0.0;  // least c with Phi(x) <= c x^2 on the tail
    std::vector<double> circulant_eigenvalues;
    bool positive_definite = false;
    bool pass = false;  // alpha_ok && omega > 0 && positive_definite
};

/// Square-integrability gate for line models. Fits the least c bounding
/// Phi(x) <= c x^2 over the outer half of [probe_range.first,
/// probe_range.second] (the bound is an asymptotic growth condition, so
/// the fit ignores the gauge-dependent behavior at small x) and tests the
/// circulant quadratic form with that c. Throws std::domain_error for
/// circle models, which are square-integrable automatically.
NormalizabilityReport check_normalizability(const ModelSpec& spec,
                                            std::pair<double, double> probe_range = {0.0, 40.0});

struct WitnessResult {
    double sup_residual = 0.0;          // best-fit min-max value
    double rectangle_lower_bound = 0.0; // certified lower bound on the optimum
    double lambda0 = 0.0;
    int sweeps = 0;
};

/// Best sup-norm fit of phi(u) phi(v) by (F(u) + F(v))/2 + lambda0 over the
/// grid, with F discretized on the grid's coordinate values. Strictly
/// positive for nonconstant phi, zero for constant phi: a numerical witness
/// that the three-body term is irreducible. Alternating minimization
/// followed by an iteratively-reweighted sup-norm polish.
WitnessResult two_body_irreducibility_witness_detail(
    const PhiFamily& fam, const std::vector<std::pair<double, double>>& grid);

double two_body_irreducibility_witness(const PhiFamily& fam,
                                       const std::vector<std::pair<double, double>>& grid);

/// Convenience: the Cartesian n x n grid on (lo, hi)^2 used by the witness
/// examples.
std::vector<std::pair<double, double>> square_grid(double lo, double hi, int n);

}  // namespace jastrow::verify

#endif
