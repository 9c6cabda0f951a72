#pragma once
#include <array>
#include <utility>

#include "edwalk/rotation.hpp"

namespace edwalk {

// Quantities fixed by the problem size N alone.
struct StructureParams {
    long long N = 0;
    long long r = 0;    // floor(N^(2/3)), computed in exact integers
    int c = 10;         // even repetition multiplier for the inner walk
    long long t2 = 0;   // ceil((pi/2) sqrt(r))
    long long ct2 = 0;  // c * t2
    double lam = 0.0;   // |<target|start>|^2 = r(r-1) / (N(N-1))
    std::array<double, 3> lam_i{};  // plane gaps: i(N+1-i) / ((N-r)(r+1))
};

// Throws std::invalid_argument for N < 5, odd c, or c < 4.
StructureParams derive_structure(long long N, int c = 10);

// (cos(d x) - cos x) / (cos((1 - 2/c) x) - cos x), evaluated in a
// cancellation-free product-of-sines form. Domain 0 < x < pi/2.
double h_ratio(double d, double x, int c);

// Inner-stage angles: the two walk phases and the derived block phase.
struct InnerParams {
    double d = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double beta = 0.0;  // (c d pi) mod 2pi = -(ct2 (theta1+theta2)/2 mod 2pi)
};

// Scan-and-bisect for d, then closed form for theta1;
// theta2 = 2(pi - d pi / t2) - theta1.
InnerParams solve_inner(const StructureParams&);

// Residuals |cos(phi_i) - target_i| for the two rotation planes.
std::array<double, 2> verify_inner(const StructureParams&, const InnerParams&);

struct OuterParams {
    double phi0 = 0.0;      // per-iteration angle lower bound used for scheduling
    long long t1 = 0;       // outer iteration count actually used
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double phi = 0.0;       // composite rotation angle at the solution
    double residual_real = 0.0;
    double residual_im = 0.0;
    double model_deficit = 0.0;  // 1 - success of the 2d model at these angles
};

// Success shortfall 1 - |<target| R^t1 |start>|^2 of the two-dimensional
// model, evaluated through the closed-form axis/angle of one composite
// iteration (a single rotation by t1 times its angle).
double schedule_deficit(double alpha1, double alpha2, double beta, double lam, long long t1);

// phi0 = |4 asin(sqrt(lam) sin(beta/2))  folded into [-pi/2, pi/2]| and
// t1 = ceil(pi/phi0). Throws SolverFailure when beta is degenerate.
std::pair<double, long long> compute_outer_schedule(const StructureParams&, const InnerParams&);

// Reflection phases alpha1, alpha2 making t1 applications of the
// composite map the start state exactly onto the target line.
// Roots are bracketed on the real-part equation, but acceptance gates
// on schedule_deficit: the equation's evaluation noise grows with t1
// while the deficit stays quadratic in the root error.
// Throws SolverFailure when no bracket survives the scan.
OuterParams solve_outer(const StructureParams&, const InnerParams&, long long t1, double tolerance);

struct FxrRotation {
    Rotation rot;
    bool axis_defined = true;
};

// Axis/angle/phase of the fixed-axis composite
// S_r(beta) S_o(alpha2) S_r(beta) S_o(alpha1) on the two-dimensional
// invariant subspace, written in the orthonormal basis (R, T) where
// start = sqrt(1-lam) R + sqrt(lam) T and R sits at +z.
FxrRotation fxr_axis_angle(double alpha1, double alpha2, double beta, double lam);

// Everything a simulator needs to execute one run.
struct AlgorithmParams {
    long long N = 0, r = 0;
    int c = 10;
    long long t2 = 0, ct2 = 0;
    double theta1 = 0, theta2 = 0, d = 0, beta = 0, lam = 0;
    double phi0 = 0;
    long long t1 = 0;
    double alpha1 = 0, alpha2 = 0;
};

struct SolveReport {
    AlgorithmParams params;
    double residual_inner = 0;  // max of the two inner residuals
    double residual_outer = 0;  // max(|real eq|, |imag eq|) at the solution
};

// Full pipeline: structure -> inner angles -> schedule -> outer angles.
// Retries the outer solve with t1+1 .. t1+3 before giving up.
SolveReport solve_all(long long N, int c = 10, double tolerance = 1e-12);

// Oracle-call ledger implied by the schedule: r + 4 t1 ct2.
long long query_count(const AlgorithmParams&);

}  // namespace edwalk
