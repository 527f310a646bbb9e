#ifndef JASTROW_TOLERANCES_HPP
#define JASTROW_TOLERANCES_HPP

// Frozen numerical tolerances. Tests and the acceptance suite reference
// these constants instead of repeating literals.

namespace jastrow::tol {

// Weierstrass function identities.
inline constexpr double zeta_quasi_periodicity = 1e-11;
inline constexpr double zeta_derivative_fd     = 1e-7;   // zeta' = -wp, central differences
inline constexpr double wp_periodicity         = 1e-11;
inline constexpr double wp_cubic_identity      = 1e-9;   // (wp')^2 = 4wp^3 - g2 wp - g3
inline constexpr double log_sigma_symmetry     = 1e-10;  // h(x) = log sigma - eta1 x^2/l about l/2
inline constexpr double trig_limit_deviation   = 1e-8;   // at im_omega3/l = 8
inline constexpr double homogeneity_scaling    = 1e-12;
inline constexpr double lattice_round_trip     = 1e-10;
inline constexpr double eta1_self_consistency  = 1e-12;

// Model structure.
inline constexpr double decomposition_identity = 1e-12;  // V = V1 + V2 + V3 sums
inline constexpr double parity_identity        = 1e-12;  // V2 even, V3 parity
inline constexpr double circle_periodicity     = 1e-10;  // V2/V3/phi l-periodic
inline constexpr double potential_trig_limit   = 1e-6;   // elliptic -> trig at im_omega3/l = 8

// Eigenfunction verification.
inline constexpr double residual_spread       = 1e-6;
inline constexpr double residual_mean_rel     = 1e-6;
inline constexpr double fd_step               = 1e-4;    // acceptance-path step
inline constexpr double negative_control_gain = 1e3;     // broken models fail by at least this factor

// Normalizability gate.
inline constexpr double circulant_dense_match = 1e-12;

// Irreducibility witness.
inline constexpr double witness_zero          = 1e-10;   // constant phi
inline constexpr double witness_step_change   = 1e-10;   // optimizer convergence

// Sampling.
inline constexpr double pole_guard_rel        = 1e-10;   // reject |x_i - x_{i+1}| < guard * scale

}  // namespace jastrow::tol

#endif
