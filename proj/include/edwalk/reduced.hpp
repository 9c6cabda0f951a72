#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <functional>

#include "edwalk/matrix.hpp"
#include "edwalk/solver.hpp"

namespace edwalk {

using bigint = boost::multiprecision::cpp_int;

// Five-dimensional collapse of the walk. Basis vectors are the uniform
// superpositions over the vertex groups keyed by (|S n K|, [y in K]):
// index 0 -> (0,0), 1 -> (0,1), 2 -> (1,0), 3 -> (1,1), 4 -> (2,0).
// The target line is index 4.
struct ReducedModel {
    long long N = 0, r = 0;
    // 5x3 isometries: columns of A are keyed by |S n K|, columns of B by
    // |(S u {y}) n K|.
    std::array<std::array<double, 3>, 5> A{};
    std::array<std::array<double, 3>, 5> B{};
    std::array<double, 5> psi0{};       // sqrt(group size / vertex count)
    std::array<bigint, 5> group_sizes;  // exact counts
    bigint total_vertices;              // C(N,r) * (N-r)
};

// Throws std::invalid_argument unless 2 <= r <= N-3.
ReducedModel build_reduced_model(long long N, long long r);

struct StepOperators {
    ComplexMatrix UA, UB;
    ComplexMatrix u;  // UB * UA
};
StepOperators build_step_operators(const ReducedModel&, double theta1, double theta2);

// diag(1, 1, 1, 1, e^{i alpha})
ComplexMatrix reflect_target(double alpha);

// Principal-plane split of the pair of isometries: singular values of
// A^T B give the plane angles; each nontrivial plane carries the walk
// step as a fixed 2x2 rotation.
struct JordanDecomposition {
    std::array<double, 3> s{};      // singular values, descending
    std::array<double, 3> gamma{};  // 2 acos(s_i)
    std::array<double, 3> lam{};    // sin^2(gamma_i / 2) = 1 - s_i^2
    std::array<cvec, 2> plane_w;    // per plane i=1,2: A w_i
    std::array<cvec, 2> plane_p;    // its in-plane orthogonal partner
    double start_state_dev = 0;     // max deviation of A w_0, B v_0 from psi0
    double block_dev = 0;           // worst ||u restricted - predicted 2x2||_F
};
JordanDecomposition jordan_analysis(const ReducedModel&, double theta1, double theta2);

struct ReducedRunResult {
    cvec final_state;  // 5 coordinates
    double success_prob = 0;
    cd target_amplitude;
};

// Called after each outer iteration with (1-based iteration, state).
using ReducedObserver = std::function<void(long long, const cvec&)>;

// [u^{ct2} RT(alpha2) u^{ct2} RT(alpha1)]^{t1} applied to psi0; the
// walk power is formed once by binary exponentiation.
ReducedRunResult run_reduced(const ReducedModel&, const AlgorithmParams&, const ReducedObserver& = {});

// || u^{ct2} - e^{i zeta} (I - (1 - e^{i zeta}) |psi0><psi0|) ||_F with
// zeta = ct2 (theta1 + theta2) / 2. The leading factor is the whole-state
// phase the walk accumulates per step; without it the closed form cannot
// match for any parameters. e^{i zeta} = e^{-i beta} when c t2 is even.
double walk_power_residual(const ReducedModel&, const InnerParams&, long long ct2);

// Largest component outside span{psi0, target} seen after any outer
// iteration of a run. Exactness requires the walk never leaves the span.
double closure_defect(const ReducedModel&, const AlgorithmParams&);

}  // namespace edwalk
