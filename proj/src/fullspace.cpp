#include "edwalk/fullspace.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "edwalk/errors.hpp"
#include "edwalk/tolerances.hpp"

namespace edwalk {

namespace {

// Saturating C(n, k) against a cap, to decide feasibility without
// overflow.
long long binomial_capped(int n, long long k, long long cap) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    long double acc = 1;
    for (long long i = 1; i <= k; ++i) {
        acc = acc * static_cast<long double>(n - k + i) / static_cast<long double>(i);
        if (acc > static_cast<long double>(cap) * 4) return cap * 4;
    }
    return static_cast<long long>(std::llround(acc));
}

}  // namespace

WalkGeometry::WalkGeometry(int N, long long r, long long cap) : n_(N), r_(r) {
    if (N < 5 || N > 31) throw std::invalid_argument("walk geometry: need 5 <= N <= 31");
    if (r < 2 || r > N - 3) throw std::invalid_argument("walk geometry: need 2 <= r <= N-3");
    const long long subsets = binomial_capped(N, r, cap);
    if (subsets > cap / (N - r)) {
        std::ostringstream msg;
        msg << "walk geometry: C(" << N << "," << r << ") * " << (N - r)
            << " vertices exceed the cap " << cap;
        throw ResourceLimit(msg.str());
    }
    const long long nverts = subsets * (N - r);

    // exact C(i, j) for ranking
    choose_.assign(N + 1, std::vector<long long>(N + 1, 0));
    for (int i = 0; i <= N; ++i) {
        choose_[i][0] = 1;
        for (int j = 1; j <= i; ++j)
            choose_[i][j] = choose_[i - 1][j - 1] + (j <= i - 1 ? choose_[i - 1][j] : 0);
    }

    verts_.reserve(static_cast<size_t>(nverts));
    bclique_.reserve(static_cast<size_t>(nverts));
    const std::uint32_t full = (N >= 32) ? 0xffffffffu : ((1u << N) - 1u);
    std::uint32_t smask = (1u << r) - 1u;  // smallest r-subset
    while (smask <= full) {
        for (int y = 0; y < N; ++y) {
            if (smask & (1u << y)) continue;
            Vertex v;
            v.smask = smask;
            v.y = y;
            verts_.push_back(v);
            // colex rank of the (r+1)-subset S u {y}
            std::uint32_t u = smask | (1u << y);
            long long rank = 0;
            int pos = 0;
            for (int e = 0; e < N; ++e)
                if (u & (1u << e)) rank += choose_[e][++pos];
            bclique_.push_back(static_cast<std::uint32_t>(rank));
        }
        // Gosper's hack: next bitmask with r bits, ascending == colex order
        const std::uint32_t lsb = smask & (~smask + 1u);
        const std::uint32_t ripple = smask + lsb;
        if (ripple > full) break;
        smask = ripple | (((smask ^ ripple) >> 2) / lsb);
    }
    bclique_count_ = choose_[N][r + 1];
}

long long WalkGeometry::vertex_index(std::uint32_t smask, int y) const {
    if (y < 0 || y >= n_ || (smask & (1u << y)) || std::popcount(smask) != static_cast<int>(r_) ||
        smask >> n_)
        throw std::invalid_argument("vertex_index: malformed vertex");
    long long srank = 0;
    int pos = 0;
    for (int e = 0; e < n_; ++e)
        if (smask & (1u << e)) srank += choose_[e][++pos];
    long long ypos = 0;
    for (int e = 0; e < y; ++e)
        if (!(smask & (1u << e))) ++ypos;
    return srank * (n_ - r_) + ypos;
}

cvec WalkGeometry::uniform_state() const {
    const double a = 1.0 / std::sqrt(static_cast<double>(vertex_count()));
    return cvec(static_cast<size_t>(vertex_count()), cd{a, 0.0});
}

void apply_ua(const WalkGeometry& g, cvec& amp, double theta1) {
    const long long block = g.a_clique_size();
    const cd f = (cd{1.0, 0.0} - std::polar(1.0, theta1)) / static_cast<double>(block);
    const long long nv = g.vertex_count();
    for (long long b = 0; b < nv; b += block) {
        cd sum{};
        for (long long i = b; i < b + block; ++i) sum += amp[static_cast<size_t>(i)];
        const cd shift = f * sum;
        for (long long i = b; i < b + block; ++i) amp[static_cast<size_t>(i)] -= shift;
    }
}

void apply_ub(const WalkGeometry& g, cvec& amp, double theta2) {
    const cd f = (cd{1.0, 0.0} - std::polar(1.0, theta2)) / static_cast<double>(g.b_clique_size());
    static thread_local std::vector<cd> sums;
    sums.assign(static_cast<size_t>(g.b_clique_count()), cd{});
    const long long nv = g.vertex_count();
    for (long long i = 0; i < nv; ++i) sums[g.b_clique(i)] += amp[static_cast<size_t>(i)];
    for (long long i = 0; i < nv; ++i) amp[static_cast<size_t>(i)] -= f * sums[g.b_clique(i)];
}

void apply_rt(const WalkGeometry& g, cvec& amp, double alpha, std::uint32_t kmask) {
    if (kmask == 0) return;
    const cd phase = std::polar(1.0, alpha);
    const long long nv = g.vertex_count();
    for (long long i = 0; i < nv; ++i)
        if ((g.vertex(i).smask & kmask) == kmask) amp[static_cast<size_t>(i)] *= phase;
}

std::uint32_t marked_mask(const Instance& ins) {
    if (!ins.colliding_pair) return 0;
    return (1u << ins.colliding_pair->first) | (1u << ins.colliding_pair->second);
}

H0Projection project_to_h0(const WalkGeometry& g, const cvec& amp, std::uint32_t kmask) {
    if (std::popcount(kmask) != 2) throw std::invalid_argument("project_to_h0: need |K| = 2");
    std::array<cd, 5> sums{};
    std::array<long long, 5> counts{};
    const long long nv = g.vertex_count();
    std::vector<int> group(static_cast<size_t>(nv));
    for (long long i = 0; i < nv; ++i) {
        const Vertex& v = g.vertex(i);
        const int l = std::popcount(v.smask & kmask);
        const int j = (kmask >> v.y) & 1u;
        const int idx = (l == 0) ? j : (l == 1 ? 2 + j : 4);
        group[static_cast<size_t>(i)] = idx;
        sums[idx] += amp[static_cast<size_t>(i)];
        ++counts[idx];
    }
    H0Projection out;
    for (int gi = 0; gi < 5; ++gi)
        out.coords[gi] = sums[gi] / std::sqrt(static_cast<double>(counts[gi]));
    double resid = 0;
    for (long long i = 0; i < nv; ++i) {
        const int gi = group[static_cast<size_t>(i)];
        const cd mean = sums[gi] / static_cast<double>(counts[gi]);
        resid += std::norm(amp[static_cast<size_t>(i)] - mean);
    }
    out.leakage = std::sqrt(resid);
    return out;
}

FullRunResult run_full(Instance& ins, const AlgorithmParams& p, long long cap, const FullObserver& observer) {
    ins.validate();
    if (ins.N != p.N) throw std::invalid_argument("run_full: instance and params disagree on N");
    WalkGeometry g(ins.N, p.r, cap);
    const std::uint32_t kmask = marked_mask(ins);

    cvec amp = g.uniform_state();
    ins.queries += p.r;  // loading the r stored values

    FullRunResult res;
    for (long long it = 1; it <= p.t1; ++it) {
        apply_rt(g, amp, p.alpha1, kmask);
        for (long long s = 0; s < p.ct2; ++s) {
            apply_ua(g, amp, p.theta1);
            ins.queries += 1;
            apply_ub(g, amp, p.theta2);
            ins.queries += 1;
        }
        apply_rt(g, amp, p.alpha2, kmask);
        for (long long s = 0; s < p.ct2; ++s) {
            apply_ua(g, amp, p.theta1);
            ins.queries += 1;
            apply_ub(g, amp, p.theta2);
            ins.queries += 1;
        }
        res.max_norm_drift = std::max(res.max_norm_drift, std::abs(norm(amp) - 1.0));
        if (observer) observer(it, g, amp);
    }

    double onpair = 0;
    if (kmask != 0) {
        const long long nv = g.vertex_count();
        for (long long i = 0; i < nv; ++i)
            if ((g.vertex(i).smask & kmask) == kmask) onpair += std::norm(amp[static_cast<size_t>(i)]);
    }
    res.final_amp = std::move(amp);
    res.success_prob = onpair;
    res.p_report_pair = onpair;
    res.p_report_distinct = 1.0 - onpair;
    res.query_count = ins.queries;
    return res;
}

std::optional<std::pair<int, int>> measure_outcome(const WalkGeometry& g, const cvec& amp,
                                                   const Instance& ins, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double total = 0;
    for (const cd& a : amp) total += std::norm(a);
    double u = unif(rng) * total;
    long long chosen = static_cast<long long>(amp.size()) - 1;
    for (size_t i = 0; i < amp.size(); ++i) {
        u -= std::norm(amp[i]);
        if (u <= 0) {
            chosen = static_cast<long long>(i);
            break;
        }
    }
    // Collision is visible iff both colliding indices are among the r
    // stored values of the sampled vertex.
    const std::uint32_t kmask = marked_mask(ins);
    if (kmask != 0 && (g.vertex(chosen).smask & kmask) == kmask) return ins.colliding_pair;
    return std::nullopt;
}

}  // namespace edwalk
