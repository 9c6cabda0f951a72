#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "edwalk/instance.hpp"
#include "edwalk/matrix.hpp"
#include "edwalk/solver.hpp"

namespace edwalk {

struct Vertex {
    std::uint32_t smask = 0;  // bit i set <=> index i in S
    int y = 0;                // pointed index, never in S
};

// Vertex table for the walk graph on (S, y) pairs. S runs in
// colexicographic order, which for bitmasks is plain ascending numeric
// order; y ascends within each S. A-cliques (fixed S) are therefore the
// contiguous blocks of N-r entries; B-cliques collect the r+1 vertices
// sharing one union S u {y}.
class WalkGeometry {
public:
    // Throws ResourceLimit when C(N,r) * (N-r) exceeds cap and
    // std::invalid_argument for out-of-range N, r.
    WalkGeometry(int N, long long r, long long cap);

    int N() const { return n_; }
    long long r() const { return r_; }
    long long vertex_count() const { return static_cast<long long>(verts_.size()); }
    long long a_clique_size() const { return n_ - r_; }
    long long b_clique_size() const { return r_ + 1; }
    long long b_clique_count() const { return bclique_count_; }

    const Vertex& vertex(long long id) const { return verts_[static_cast<size_t>(id)]; }
    long long b_clique(long long id) const { return bclique_[static_cast<size_t>(id)]; }

    // Inverse of the enumeration. Throws std::invalid_argument for a
    // malformed (smask, y).
    long long vertex_index(std::uint32_t smask, int y) const;

    cvec uniform_state() const;

private:
    int n_ = 0;
    long long r_ = 0;
    long long bclique_count_ = 0;
    std::vector<Vertex> verts_;
    std::vector<std::uint32_t> bclique_;
    std::vector<std::vector<long long>> choose_;  // C(i, j) table
};

// In-place clique diffusions: amp -= (1 - e^{i theta}) * clique mean.
void apply_ua(const WalkGeometry&, cvec& amp, double theta1);
void apply_ub(const WalkGeometry&, cvec& amp, double theta2);

// Phases every vertex whose S contains all marked indices. kmask = 0
// marks nothing.
void apply_rt(const WalkGeometry&, cvec& amp, double alpha, std::uint32_t kmask);

std::uint32_t marked_mask(const Instance&);

struct H0Projection {
    std::array<cd, 5> coords{};  // components along the five group states
    double leakage = 0;          // norm of the remainder
};
H0Projection project_to_h0(const WalkGeometry&, const cvec& amp, std::uint32_t kmask);

struct FullRunResult {
    cvec final_amp;
    double success_prob = 0;     // weight on vertices with K inside S
    long long query_count = 0;
    double p_report_pair = 0;    // measurement reports the collision
    double p_report_distinct = 1;
    double max_norm_drift = 0;   // worst | ||amp|| - 1 | per outer iteration
};

// Called after each outer iteration with (1-based iteration, geometry,
// state).
using FullObserver = std::function<void(long long, const WalkGeometry&, const cvec&)>;

// Executes the schedule in params against the instance, charging oracle
// calls to the instance ledger: r for preparation, then 2 per walk step.
FullRunResult run_full(Instance&, const AlgorithmParams&, long long cap, const FullObserver& = {});

// One projective measurement: the colliding index pair when the sampled
// S holds both of its members, otherwise nullopt ("all distinct").
std::optional<std::pair<int, int>> measure_outcome(const WalkGeometry&, const cvec& amp,
                                                   const Instance&, std::mt19937_64& rng);

}  // namespace edwalk
