#include "edwalk/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "edwalk/errors.hpp"
#include "edwalk/tolerances.hpp"

namespace edwalk {

namespace {

bigint binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    bigint acc = 1;
    for (long long i = 1; i <= k; ++i) {
        acc *= (n - k + i);
        acc /= i;  // exact at every step: acc is C(n-k+i, i)
    }
    return acc;
}

ComplexMatrix rank_update(const std::array<std::array<double, 3>, 5>& iso, double theta) {
    // I - (1 - e^{i theta}) M M^T for a real isometry M
    ComplexMatrix out = ComplexMatrix::identity(5);
    const cd f = cd{1.0, 0.0} - std::polar(1.0, theta);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            double dot = 0;
            for (int k = 0; k < 3; ++k) dot += iso[i][k] * iso[j][k];
            out.at(i, j) -= f * dot;
        }
    return out;
}

}  // namespace

ReducedModel build_reduced_model(long long N, long long r) {
    if (r < 2 || r > N - 3) throw std::invalid_argument("build_reduced_model: need 2 <= r <= N-3");
    ReducedModel m;
    m.N = N;
    m.r = r;
    const double nr = static_cast<double>(N - r);
    const double rp1 = static_cast<double>(r + 1);

    m.A[0][0] = std::sqrt(1.0 - 2.0 / nr);
    m.A[1][0] = std::sqrt(2.0 / nr);
    m.A[2][1] = std::sqrt(1.0 - 1.0 / nr);
    m.A[3][1] = std::sqrt(1.0 / nr);
    m.A[4][2] = 1.0;

    m.B[0][0] = 1.0;
    m.B[1][1] = std::sqrt(1.0 / rp1);
    m.B[2][1] = std::sqrt(1.0 - 1.0 / rp1);
    m.B[3][2] = std::sqrt(2.0 / rp1);
    m.B[4][2] = std::sqrt(1.0 - 2.0 / rp1);

    // Group fractions |group| / |V| reduce to short rationals; exact in
    // double and valid for any N.
    const double nn = static_cast<double>(N) * static_cast<double>(N - 1);
    const std::array<double, 5> frac{
        static_cast<double>(N - r - 1) * static_cast<double>(N - r - 2) / nn,
        2.0 * static_cast<double>(N - r - 1) / nn,
        2.0 * static_cast<double>(r) * static_cast<double>(N - r - 1) / nn,
        2.0 * static_cast<double>(r) / nn,
        static_cast<double>(r) * static_cast<double>(r - 1) / nn,
    };
    for (int g = 0; g < 5; ++g) m.psi0[g] = std::sqrt(frac[g]);

    // Exact counts: C(2,l) C(N-2, r-l) * (free pointer choices).
    m.group_sizes[0] = binomial(N - 2, r) * (N - r - 2);
    m.group_sizes[1] = binomial(N - 2, r) * 2;
    m.group_sizes[2] = 2 * binomial(N - 2, r - 1) * (N - r - 1);
    m.group_sizes[3] = 2 * binomial(N - 2, r - 1);
    m.group_sizes[4] = binomial(N - 2, r - 2) * (N - r);
    m.total_vertices = binomial(N, r) * (N - r);
    return m;
}

StepOperators build_step_operators(const ReducedModel& m, double theta1, double theta2) {
    StepOperators ops;
    ops.UA = rank_update(m.A, theta1);
    ops.UB = rank_update(m.B, theta2);
    ops.u = ops.UB * ops.UA;
    return ops;
}

ComplexMatrix reflect_target(double alpha) {
    ComplexMatrix m = ComplexMatrix::identity(5);
    m.at(4, 4) = std::polar(1.0, alpha);
    return m;
}

JordanDecomposition jordan_analysis(const ReducedModel& m, double theta1, double theta2) {
    Mat3 D{};
    for (int l = 0; l < 3; ++l)
        for (int k = 0; k < 3; ++k) {
            double acc = 0;
            for (int g = 0; g < 5; ++g) acc += m.A[g][l] * m.B[g][k];
            D[l][k] = acc;
        }
    Svd3 sv = svd3(D);

    JordanDecomposition jd;
    jd.s = sv.s;
    for (int i = 0; i < 3; ++i) {
        const double s = std::clamp(sv.s[i], -1.0, 1.0);
        jd.gamma[i] = 2.0 * std::acos(s);
        jd.lam[i] = 1.0 - s * s;
    }
    if (std::abs(jd.gamma[1] - jd.gamma[2]) < 1e-12)
        throw SolverFailure("jordan_analysis: degenerate plane angles");

    // Singular pairs (w_i, v_i) are fixed up to a joint sign; align the
    // i = 0 pair with the start state.
    auto lift = [&](const std::array<std::array<double, 3>, 5>& iso, int col, const Mat3& side) {
        cvec out(5);
        for (int g = 0; g < 5; ++g) {
            double acc = 0;
            for (int k = 0; k < 3; ++k) acc += iso[g][k] * side[k][col];
            out[g] = acc;
        }
        return out;
    };
    cvec aw0 = lift(m.A, 0, sv.W);
    cvec bv0 = lift(m.B, 0, sv.V);
    double overlap = 0;
    for (int g = 0; g < 5; ++g) overlap += aw0[g].real() * m.psi0[g];
    if (overlap < 0) {
        for (auto& v : aw0) v = -v;
        for (auto& v : bv0) v = -v;
        for (int g = 0; g < 3; ++g) {
            sv.W[g][0] = -sv.W[g][0];
            sv.V[g][0] = -sv.V[g][0];
        }
    }
    for (int g = 0; g < 5; ++g)
        jd.start_state_dev = std::max({jd.start_state_dev, std::abs(aw0[g] - cd{m.psi0[g], 0.0}),
                                       std::abs(bv0[g] - cd{m.psi0[g], 0.0})});

    // Per plane i = 1, 2: basis (A w_i, perp) with
    // B v_i = cos(gamma_i/2) A w_i + sin(gamma_i/2) perp.
    const StepOperators ops = build_step_operators(m, theta1, theta2);
    for (int i = 1; i <= 2; ++i) {
        cvec aw = lift(m.A, i, sv.W);
        cvec bv = lift(m.B, i, sv.V);
        const double cg = std::cos(jd.gamma[i] / 2.0), sg = std::sin(jd.gamma[i] / 2.0);
        cvec perp(5);
        for (int g = 0; g < 5; ++g) perp[g] = (bv[g] - cg * aw[g]) / sg;
        jd.plane_w[i - 1] = aw;
        jd.plane_p[i - 1] = perp;

        // u restricted to the plane vs the composite of the two
        // single-phase rotations about the plane's fixed axes.
        ComplexMatrix restricted(2, 2);
        const cvec u_aw = ops.u * aw;
        const cvec u_perp = ops.u * perp;
        restricted.at(0, 0) = inner(aw, u_aw);
        restricted.at(0, 1) = inner(aw, u_perp);
        restricted.at(1, 0) = inner(perp, u_aw);
        restricted.at(1, 1) = inner(perp, u_perp);

        Rotation rot_a{{0.0, 0.0, 1.0}, -theta1 / 2.0, theta1 / 2.0};
        Rotation rot_b{{sg * cg * 2.0 /*sin gamma*/, 0.0, 1.0 - 2.0 * sg * sg /*cos gamma*/},
                       -theta2 / 2.0,
                       theta2 / 2.0};
        const ComplexMatrix predicted = rotation_to_matrix(compose_rotations(rot_b, rot_a));
        jd.block_dev = std::max(jd.block_dev, frobenius_norm(restricted - predicted));
    }
    return jd;
}

ReducedRunResult run_reduced(const ReducedModel& m, const AlgorithmParams& p, const ReducedObserver& observer) {
    if (p.N != m.N || p.r != m.r)
        throw std::invalid_argument("run_reduced: params built for a different model");
    const StepOperators ops = build_step_operators(m, p.theta1, p.theta2);
    const ComplexMatrix walk_power = matrix_power(ops.u, p.ct2);
    const ComplexMatrix outer =
        walk_power * reflect_target(p.alpha2) * walk_power * reflect_target(p.alpha1);

    cvec state(5);
    for (int g = 0; g < 5; ++g) state[g] = m.psi0[g];
    for (long long it = 1; it <= p.t1; ++it) {
        state = outer * state;
        if (observer) observer(it, state);
    }
    ReducedRunResult res;
    res.final_state = state;
    res.target_amplitude = state[4];
    res.success_prob = std::norm(state[4]);
    return res;
}

double walk_power_residual(const ReducedModel& m, const InnerParams& ip, long long ct2) {
    const StepOperators ops = build_step_operators(m, ip.theta1, ip.theta2);
    const ComplexMatrix walk_power = matrix_power(ops.u, ct2);
    const double zeta = static_cast<double>(ct2) * (ip.theta1 + ip.theta2) / 2.0;
    const cd ez = std::polar(1.0, zeta);
    ComplexMatrix closed = ComplexMatrix::identity(5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) closed.at(i, j) -= (cd{1.0, 0.0} - ez) * m.psi0[i] * m.psi0[j];
    return frobenius_norm(walk_power - ez * closed);
}

double closure_defect(const ReducedModel& m, const AlgorithmParams& p) {
    // Orthonormal pair spanning the plane of psi0 and the target.
    const double lam = m.psi0[4] * m.psi0[4];
    cvec rvec(5), tvec(5);
    tvec[4] = 1.0;
    const double root = std::sqrt(1.0 - lam);
    for (int g = 0; g < 4; ++g) rvec[g] = m.psi0[g] / root;
    rvec[4] = (m.psi0[4] - std::sqrt(lam)) / root;  // = 0 up to rounding

    double worst = 0;
    run_reduced(m, p, [&](long long, const cvec& state) {
        const cd cr = inner(rvec, state), ct = inner(tvec, state);
        double outside = 0;
        for (int g = 0; g < 5; ++g) {
            const cd resid = state[g] - cr * rvec[g] - ct * tvec[g];
            outside += std::norm(resid);
        }
        worst = std::max(worst, std::sqrt(outside));
    });
    return worst;
}

}  // namespace edwalk
