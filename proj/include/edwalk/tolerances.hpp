#pragma once

// Every numeric threshold used by the library, the unit tests and the
// acceptance suite. One definition per tolerance so a bound is never
// pinned twice with different values.
namespace edwalk::tol {

inline constexpr double unitary = 1e-12;          // ||M M^dag - I||_F
inline constexpr double svd_reconstruct = 1e-12;  // ||W diag(s) V^T - D||_F
inline constexpr double svd_offdiag = 1e-14;      // Jacobi sweep stop
inline constexpr int svd_max_sweeps = 60;
inline constexpr double axis_epsilon = 1e-12;     // below this sin(angle), axis is canonical
inline constexpr double rotation_match = 1e-10;
inline constexpr double inner_residual = 1e-10;
inline constexpr double outer_residual = 1e-9;
inline constexpr double bisect_interval = 1e-13;
inline constexpr double singularity_guard = 1e-6;  // scan points this close to a pole are skipped
inline constexpr double degenerate_phase = 1e-9;   // beta this close to 0 mod 2pi is unusable
inline constexpr double walk_power_residual = 1e-8;
inline constexpr double lambda_formula = 1e-12;
inline constexpr double jordan_match = 1e-10;
inline constexpr double reduced_deficit = 1e-9;   // 1 - success_prob, reduced run
inline constexpr double full_deficit = 1e-8;
inline constexpr double leakage_prepared = 1e-12;
inline constexpr double leakage_run = 1e-9;
inline constexpr double h0_match = 1e-8;          // reduced vs projected full state, per coordinate
inline constexpr double grover_closure = 1e-8;
inline constexpr double fxr_agreement = 1e-9;
inline constexpr double distinct_phase = 1e-10;   // all-distinct final state vs start state
inline constexpr double explicit_match = 1e-10;
inline constexpr double query_ratio_cap = 300.0;  // empirical max ~263.2, at N = 7

}  // namespace edwalk::tol
