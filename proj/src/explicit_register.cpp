#include "edwalk/explicit_register.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "edwalk/errors.hpp"
#include "edwalk/tolerances.hpp"

namespace edwalk {

ExplicitRegisterSim::ExplicitRegisterSim(const Instance& ins, const AlgorithmParams& params,
                                         long long joint_cap)
    : geo_(ins.N, params.r, joint_cap), ins_(ins), params_(params) {
    ins_.validate();
    if (ins_.N != 5 || params_.r != 2)
        throw std::invalid_argument("explicit register: supported only at N = 5, r = 2");
    if (ins_.N != static_cast<int>(params_.N))
        throw std::invalid_argument("explicit register: instance and params disagree on N");

    bits_ = std::bit_width(static_cast<unsigned>(ins_.M));
    const long long slots = params_.r + 1;
    if (bits_ * slots > 30)
        throw ResourceLimit("explicit register: register tuple does not fit 30 bits");
    T_ = 1ll << (bits_ * slots);
    if (geo_.vertex_count() > joint_cap / T_) {
        std::ostringstream msg;
        msg << "explicit register: joint dimension " << geo_.vertex_count() << " * " << T_
            << " exceeds the cap " << joint_cap;
        throw ResourceLimit(msg.str());
    }

    const long long nv = geo_.vertex_count();
    rest_.resize(static_cast<size_t>(nv));
    mid_.resize(static_cast<size_t>(nv));
    perm_.resize(static_cast<size_t>(nv));
    for (long long v = 0; v < nv; ++v) {
        const Vertex& vx = geo_.vertex(v);
        std::uint64_t tup = 0;
        int k = 0;
        for (int e = 0; e < ins_.N; ++e)
            if (vx.smask & (1u << e))
                tup |= static_cast<std::uint64_t>(ins_.values[static_cast<size_t>(e)])
                       << (bits_ * k++);
        rest_[static_cast<size_t>(v)] = tup;
        mid_[static_cast<size_t>(v)] =
            tup | (static_cast<std::uint64_t>(ins_.values[static_cast<size_t>(vx.y)])
                   << (bits_ * params_.r));
        // slot feeding each position of the sorted union S u {y}
        std::vector<int> perm;
        int spos = 0;
        for (int e = 0; e < ins_.N; ++e) {
            if (vx.smask & (1u << e))
                perm.push_back(spos++);
            else if (e == vx.y)
                perm.push_back(static_cast<int>(params_.r));
        }
        perm_[static_cast<size_t>(v)] = std::move(perm);
    }
    state_.assign(static_cast<size_t>(nv * T_), cd{});
}

std::uint64_t ExplicitRegisterSim::slot(std::uint64_t tuple, int k) const {
    return (tuple >> (bits_ * k)) & ((1ull << bits_) - 1ull);
}

std::uint64_t ExplicitRegisterSim::rest_tuple(long long vertex) const {
    return rest_[static_cast<size_t>(vertex)];
}

std::uint64_t ExplicitRegisterSim::midstep_tuple(long long vertex) const {
    return mid_[static_cast<size_t>(vertex)];
}

long long ExplicitRegisterSim::joint_index(long long vertex, std::uint64_t tuple) const {
    return vertex * T_ + static_cast<long long>(tuple);
}

void ExplicitRegisterSim::prepare() {
    std::fill(state_.begin(), state_.end(), cd{});
    const long long nv = geo_.vertex_count();
    const double a = 1.0 / std::sqrt(static_cast<double>(nv));
    for (long long v = 0; v < nv; ++v)
        state_[static_cast<size_t>(joint_index(v, rest_[static_cast<size_t>(v)]))] = cd{a, 0.0};
    queries_ += params_.r;
    ins_.queries += params_.r;
}

void ExplicitRegisterSim::diffuse_y(double theta1) {
    const long long block = geo_.a_clique_size();
    const cd f = (cd{1.0, 0.0} - std::polar(1.0, theta1)) / static_cast<double>(block);
    const long long nv = geo_.vertex_count();
    for (long long v0 = 0; v0 < nv; v0 += block) {
        for (long long t = 0; t < T_; ++t) {
            cd sum{};
            for (long long k = 0; k < block; ++k)
                sum += state_[static_cast<size_t>((v0 + k) * T_ + t)];
            if (sum == cd{}) continue;
            const cd shift = f * sum;
            for (long long k = 0; k < block; ++k)
                state_[static_cast<size_t>((v0 + k) * T_ + t)] -= shift;
        }
    }
}

void ExplicitRegisterSim::query_pointed() {
    const long long nv = geo_.vertex_count();
    for (long long v = 0; v < nv; ++v) {
        const std::uint64_t mask =
            static_cast<std::uint64_t>(ins_.values[static_cast<size_t>(geo_.vertex(v).y)])
            << (bits_ * params_.r);
        for (long long t = 0; t < T_; ++t) {
            const long long tp = static_cast<long long>(static_cast<std::uint64_t>(t) ^ mask);
            if (tp > t) std::swap(state_[static_cast<size_t>(v * T_ + t)],
                                  state_[static_cast<size_t>(v * T_ + tp)]);
        }
    }
    queries_ += 1;
    ins_.queries += 1;
}

void ExplicitRegisterSim::diffuse_union(double theta2) {
    const long long members = geo_.b_clique_size();
    const cd f = (cd{1.0, 0.0} - std::polar(1.0, theta2)) / static_cast<double>(members);
    // group key = b-clique id * T + tuple permuted into union-sorted order
    std::vector<cd> sums(static_cast<size_t>(geo_.b_clique_count() * T_), cd{});
    const long long nv = geo_.vertex_count();
    std::vector<long long> key(static_cast<size_t>(nv * T_), -1);
    for (long long v = 0; v < nv; ++v) {
        const std::vector<int>& perm = perm_[static_cast<size_t>(v)];
        for (long long t = 0; t < T_; ++t) {
            bool valid = true;
            std::uint64_t sorted = 0;
            for (int p = 0; p < static_cast<int>(members) && valid; ++p) {
                const std::uint64_t w = slot(static_cast<std::uint64_t>(t), perm[static_cast<size_t>(p)]);
                if (w < 1 || w > static_cast<std::uint64_t>(ins_.M)) valid = false;
                sorted |= w << (bits_ * p);
            }
            if (!valid) continue;
            const long long k = geo_.b_clique(v) * T_ + static_cast<long long>(sorted);
            key[static_cast<size_t>(v * T_ + t)] = k;
            sums[static_cast<size_t>(k)] += state_[static_cast<size_t>(v * T_ + t)];
        }
    }
    for (long long j = 0; j < nv * T_; ++j) {
        const long long k = key[static_cast<size_t>(j)];
        if (k >= 0) state_[static_cast<size_t>(j)] -= f * sums[static_cast<size_t>(k)];
    }
}

void ExplicitRegisterSim::phase_duplicates(double alpha) {
    const cd phase = std::polar(1.0, alpha);
    const long long nv = geo_.vertex_count();
    const int r = static_cast<int>(params_.r);
    for (long long v = 0; v < nv; ++v) {
        for (long long t = 0; t < T_; ++t) {
            bool dup = false;
            for (int a = 0; a < r && !dup; ++a) {
                const std::uint64_t wa = slot(static_cast<std::uint64_t>(t), a);
                if (wa == 0) continue;
                for (int b = a + 1; b < r; ++b)
                    if (slot(static_cast<std::uint64_t>(t), b) == wa) {
                        dup = true;
                        break;
                    }
            }
            if (dup) state_[static_cast<size_t>(v * T_ + t)] *= phase;
        }
    }
}

double ExplicitRegisterSim::verify_support(bool queried) {
    const std::vector<std::uint64_t>& expect = queried ? mid_ : rest_;
    double worst = 0;
    const long long nv = geo_.vertex_count();
    for (long long v = 0; v < nv; ++v) {
        const long long keep = joint_index(v, expect[static_cast<size_t>(v)]);
        for (long long t = 0; t < T_; ++t) {
            const long long j = v * T_ + t;
            if (j == keep) continue;
            worst = std::max(worst, std::abs(state_[static_cast<size_t>(j)]));
        }
    }
    max_off_pattern_ = std::max(max_off_pattern_, worst);
    if (worst > tol::explicit_match)
        throw ModelViolation("value register decoupled from (S, y): stray amplitude " +
                             std::to_string(worst));
    return worst;
}

void ExplicitRegisterSim::walk_step(double theta1, double theta2) {
    diffuse_y(theta1);
    verify_support(false);
    query_pointed();
    verify_support(true);
    diffuse_union(theta2);
    verify_support(true);
    query_pointed();
    verify_support(false);
}

void ExplicitRegisterSim::run() {
    prepare();
    verify_support(false);
    for (long long it = 0; it < params_.t1; ++it) {
        phase_duplicates(params_.alpha1);
        verify_support(false);
        for (long long s = 0; s < params_.ct2; ++s) walk_step(params_.theta1, params_.theta2);
        phase_duplicates(params_.alpha2);
        verify_support(false);
        for (long long s = 0; s < params_.ct2; ++s) walk_step(params_.theta1, params_.theta2);
    }
}

cd ExplicitRegisterSim::amplitude(long long vertex) const {
    return state_[static_cast<size_t>(joint_index(vertex, rest_[static_cast<size_t>(vertex)]))];
}

double ExplicitRegisterSim::success_prob() const {
    double p = 0;
    const long long nv = geo_.vertex_count();
    const int r = static_cast<int>(params_.r);
    for (long long v = 0; v < nv; ++v) {
        for (long long t = 0; t < T_; ++t) {
            bool dup = false;
            for (int a = 0; a < r && !dup; ++a) {
                const std::uint64_t wa = slot(static_cast<std::uint64_t>(t), a);
                if (wa == 0) continue;
                for (int b = a + 1; b < r; ++b)
                    if (slot(static_cast<std::uint64_t>(t), b) == wa) {
                        dup = true;
                        break;
                    }
            }
            if (dup) p += std::norm(state_[static_cast<size_t>(v * T_ + t)]);
        }
    }
    return p;
}

ExplicitReport explicit_register_run(const Instance& ins, const AlgorithmParams& params,
                                     long long joint_cap) {
    ExplicitRegisterSim sim(ins, params, joint_cap);
    sim.run();

    Instance indexed = ins;
    FullRunResult full = run_full(indexed, params, joint_cap);

    ExplicitReport rep;
    const long long nv = sim.geometry().vertex_count();
    for (long long v = 0; v < nv; ++v)
        rep.max_final_diff = std::max(
            rep.max_final_diff, std::abs(sim.amplitude(v) - full.final_amp[static_cast<size_t>(v)]));
    rep.max_off_pattern = sim.max_off_pattern();
    rep.success_prob = sim.success_prob();
    rep.success_prob_index_only = full.success_prob;
    rep.query_count = sim.queries();
    return rep;
}

}  // namespace edwalk
