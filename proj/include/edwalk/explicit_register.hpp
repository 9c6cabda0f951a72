#pragma once
#include <cstdint>
#include <vector>

#include "edwalk/fullspace.hpp"
#include "edwalk/instance.hpp"
#include "edwalk/solver.hpp"

namespace edwalk {

// Joint simulation of (S, y) together with the value register: slots
// 1..r hold the values of the sorted elements of S, the scratch slot
// r+1 holds 0 between steps and the pointed value x_y mid-step. Basis
// index = vertex * T + packed tuple, with bit_width(M) bits per slot.
//
// The point of this simulator is to check that the register never
// carries information beyond that deterministic pattern, so dropping it
// from the index-only simulator is sound.
class ExplicitRegisterSim {
public:
    // Requires N = 5 (the joint basis grows too fast beyond that) and a
    // validated instance. Throws ResourceLimit when |V| * T exceeds
    // joint_cap.
    ExplicitRegisterSim(const Instance&, const AlgorithmParams&,
                        long long joint_cap = 1 << 22);

    const WalkGeometry& geometry() const { return geo_; }
    long long tuple_count() const { return T_; }
    long long joint_dim() const { return static_cast<long long>(state_.size()); }
    long long queries() const { return queries_; }
    const cvec& state() const { return state_; }
    cvec& state() { return state_; }

    // Tuple the register must hold for this vertex, between steps
    // (scratch slot zero) or mid-step (scratch slot = x_y).
    std::uint64_t rest_tuple(long long vertex) const;
    std::uint64_t midstep_tuple(long long vertex) const;
    long long joint_index(long long vertex, std::uint64_t tuple) const;

    // Uniform superposition over vertices, each carrying its rest
    // tuple; charges r oracle calls for loading the stored values.
    void prepare();

    // One walk substep each. diffuse_y averages within A-cliques at
    // fixed register content; query_pointed XORs x_y into the scratch
    // slot (one oracle call, self-inverse); diffuse_union averages over
    // the r+1 splits of S u {y}, permuting slots into the order of the
    // union's sorted elements to find partners; phase_duplicates
    // multiplies by e^{i alpha} exactly when the stored slots 1..r
    // contain a repeated value (no oracle call).
    void diffuse_y(double theta1);
    void query_pointed();
    void diffuse_union(double theta2);
    void phase_duplicates(double alpha);

    // Max |amplitude| found outside the deterministic pattern; throws
    // ModelViolation above the pinned threshold. queried selects which
    // pattern is in force.
    double verify_support(bool queried);

    // diffuse_y, query, diffuse_union, query again (restoring the
    // scratch slot), verifying the pattern after every substep.
    void walk_step(double theta1, double theta2);

    // Full schedule: t1 outer iterations of phase, ct2 steps, phase,
    // ct2 steps.
    void run();

    // Amplitude of the vertex on its rest tuple.
    cd amplitude(long long vertex) const;

    // Weight on register contents holding a repeated stored value;
    // reads only the register, not the instance.
    double success_prob() const;

    double max_off_pattern() const { return max_off_pattern_; }

private:
    std::uint64_t slot(std::uint64_t tuple, int k) const;

    WalkGeometry geo_;
    Instance ins_;
    AlgorithmParams params_;
    int bits_ = 0;             // per-slot width
    long long T_ = 0;          // tuples per vertex
    std::vector<std::uint64_t> rest_;     // per-vertex rest tuple
    std::vector<std::uint64_t> mid_;      // per-vertex mid-step tuple
    std::vector<std::vector<int>> perm_;  // slot source per union-sorted position
    cvec state_;
    long long queries_ = 0;
    double max_off_pattern_ = 0;
};

struct ExplicitReport {
    double max_final_diff = 0;    // per-vertex gap to the index-only run
    double max_off_pattern = 0;   // worst stray amplitude over all substeps
    double success_prob = 0;      // register-visible duplicate weight
    double success_prob_index_only = 0;
    long long query_count = 0;
};

// Runs both simulators on the same instance and compares the final
// amplitudes vertex by vertex. Throws ModelViolation if the register
// ever decouples from (S, y).
ExplicitReport explicit_register_run(const Instance&, const AlgorithmParams&,
                                     long long joint_cap = 1 << 22);

}  // namespace edwalk
