#include "edwalk/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "edwalk/errors.hpp"
#include "edwalk/tolerances.hpp"

namespace edwalk {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_2pi(double x) {
    double y = std::fmod(x, 2 * kPi);
    if (y < 0) y += 2 * kPi;
    return y;
}

// Largest r with r^3 <= N^2. Fits unsigned arithmetic comfortably for
// N up to ~2.6e6; guarded beyond that.
long long integer_r(long long N) {
    if (N > 2'000'000) throw std::invalid_argument("derive_structure: N too large for exact r");
    const unsigned long long n2 = static_cast<unsigned long long>(N) * static_cast<unsigned long long>(N);
    long long r = static_cast<long long>(std::floor(std::pow(static_cast<double>(N), 2.0 / 3.0)));
    auto cube = [](long long v) {
        return static_cast<unsigned long long>(v) * static_cast<unsigned long long>(v) *
               static_cast<unsigned long long>(v);
    };
    while (r > 1 && cube(r) > n2) --r;
    while (cube(r + 1) <= n2) ++r;
    return r;
}

}  // namespace

StructureParams derive_structure(long long N, int c) {
    if (N < 5) throw std::invalid_argument("derive_structure: need N >= 5");
    if (c < 4 || c % 2 != 0) throw std::invalid_argument("derive_structure: c must be even and >= 4");
    StructureParams sp;
    sp.N = N;
    sp.c = c;
    sp.r = integer_r(N);
    sp.t2 = static_cast<long long>(std::ceil(kPi / 2.0 * std::sqrt(static_cast<double>(sp.r))));
    sp.ct2 = static_cast<long long>(c) * sp.t2;
    const double denom = static_cast<double>(N - sp.r) * static_cast<double>(sp.r + 1);
    for (int i = 0; i < 3; ++i) sp.lam_i[i] = static_cast<double>(i) * static_cast<double>(N + 1 - i) / denom;
    sp.lam = static_cast<double>(sp.r) * static_cast<double>(sp.r - 1) /
             (static_cast<double>(N) * static_cast<double>(N - 1));
    return sp;
}

double h_ratio(double d, double x, int c) {
    if (!(x > 0.0) || !(x < kPi / 2.0)) throw std::invalid_argument("h_ratio: need 0 < x < pi/2");
    // cos a - cos b = 2 sin((a+b)/2) sin((b-a)/2)
    const double num = 2.0 * std::sin((d + 1.0) * x / 2.0) * std::sin((1.0 - d) * x / 2.0);
    const double den = 2.0 * std::sin((1.0 - 1.0 / c) * x) * std::sin(x / c);
    return num / den;
}

InnerParams solve_inner(const StructureParams& sp) {
    const double x = kPi / static_cast<double>(sp.t2);
    const double rhs = 2.0 * (1.0 + 1.0 / static_cast<double>(sp.N - 2));
    auto f = [&](double d) { return h_ratio(d, x, sp.c) - rhs; };

    // h is strictly decreasing in d, so the 0.01-step scan sees at most
    // one sign change.
    std::optional<std::pair<double, double>> bracket;
    double prev_d = 0.01, prev_f = f(prev_d);
    for (int i = 2; i <= 99; ++i) {
        const double cur_d = i / 100.0, cur_f = f(cur_d);
        if (prev_f == 0.0) {
            bracket = {prev_d, prev_d};
            break;
        }
        if (prev_f * cur_f <= 0.0) {
            bracket = {prev_d, cur_d};
            break;
        }
        prev_d = cur_d;
        prev_f = cur_f;
    }
    if (!bracket) {
        std::ostringstream msg;
        msg << "solve_inner: no sign change for d in (0.01, 0.99) at N = " << sp.N
            << " (h - rhs spans " << f(0.01) << " .. " << f(0.99) << ")";
        throw SolverFailure(msg.str());
    }

    auto [lo, hi] = *bracket;
    double flo = f(lo);
    while (hi - lo > tol::bisect_interval) {
        const double mid = (lo + hi) / 2.0;
        const double fm = f(mid);
        if (flo * fm <= 0.0)
            hi = mid;
        else {
            lo = mid;
            flo = fm;
        }
    }

    InnerParams ip;
    ip.d = (lo + hi) / 2.0;
    const double y = ip.d * x;
    const double lam2 = sp.lam_i[2];
    // (cos y - cos x) / lam2, cancellation-free
    const double rhs2 = 2.0 * std::sin((y + x) / 2.0) * std::sin((x - y) / 2.0) / lam2;
    double cosval = std::cos(y) - rhs2;
    if (cosval < -1.0 - 1e-9 || cosval > 1.0 + 1e-9)
        throw SolverFailure("solve_inner: theta1 equation left the arccos domain");
    cosval = std::clamp(cosval, -1.0, 1.0);
    ip.theta1 = wrap_2pi(std::acos(cosval) - y);
    ip.theta2 = 2.0 * (kPi - y) - ip.theta1;
    ip.beta = wrap_2pi(sp.c * ip.d * kPi);
    return ip;
}

std::array<double, 2> verify_inner(const StructureParams& sp, const InnerParams& ip) {
    const double x = kPi / static_cast<double>(sp.t2);
    const double half = (ip.theta1 + ip.theta2) / 2.0;
    const double ss = 2.0 * std::sin(ip.theta1 / 2.0) * std::sin(ip.theta2 / 2.0);
    const std::array<double, 2> target{-std::cos((1.0 - 2.0 / sp.c) * x), -std::cos(x)};
    std::array<double, 2> res{};
    for (int i = 0; i < 2; ++i) {
        const double cphi = std::cos(half) + ss * sp.lam_i[i + 1];
        res[i] = std::abs(cphi - target[i]);
    }
    return res;
}

std::pair<double, long long> compute_outer_schedule(const StructureParams& sp, const InnerParams& ip) {
    const double dist = std::min(ip.beta, 2 * kPi - ip.beta);
    if (dist < tol::degenerate_phase)
        throw SolverFailure("compute_outer_schedule: beta is degenerate (0 mod 2pi)");
    const double a4 = 4.0 * std::asin(std::sqrt(sp.lam) * std::sin(ip.beta / 2.0));
    const double folded = a4 - kPi * std::round(a4 / kPi);
    const double phi0 = std::abs(folded);
    if (phi0 < tol::degenerate_phase)
        throw SolverFailure("compute_outer_schedule: folded angle is degenerate");
    const long long t1 = static_cast<long long>(std::ceil(kPi / phi0));
    return {phi0, t1};
}

FxrRotation fxr_axis_angle(double alpha1, double alpha2, double beta, double lam) {
    if (!(lam > 0.0) || !(lam < 1.0)) throw std::invalid_argument("fxr_axis_angle: need 0 < lam < 1");
    const double s1 = std::sin(alpha1 / 2.0), c1 = std::cos(alpha1 / 2.0);
    const double s2 = std::sin(alpha2 / 2.0), c2 = std::cos(alpha2 / 2.0);
    const double sb = std::sin(beta), cb = std::cos(beta);
    const double hb2 = std::sin(beta / 2.0) * std::sin(beta / 2.0);
    const double root = 2.0 * std::sqrt(lam * (1.0 - lam));
    const double one2l = 1.0 - 2.0 * lam;

    const double snx = root * (c1 * c2 * sb - 2.0 * one2l * c1 * s2 * hb2);
    const double sny = root * (-s1 * c2 * sb + 2.0 * one2l * s1 * s2 * hb2);
    const double snz = s1 * c2 * cb + c1 * s2 + one2l * std::cos((alpha1 + alpha2) / 2.0) * sb -
                       2.0 * one2l * one2l * c1 * s2 * hb2;
    const double cphi = std::cos((alpha1 + alpha2) / 2.0 + beta) +
                        2.0 * lam * (std::sin((alpha1 + alpha2) / 2.0) * sb - 4.0 * s1 * s2 * hb2) +
                        8.0 * lam * lam * s1 * s2 * hb2;

    const double sphi = std::sqrt(snx * snx + sny * sny + snz * snz);
    FxrRotation out;
    out.rot.global_phase = (alpha1 + alpha2) / 2.0 - beta;
    out.rot.angle = std::atan2(sphi, cphi);
    if (sphi < tol::axis_epsilon) {
        out.axis_defined = false;
        out.rot.axis = {0.0, 0.0, 1.0};
    } else {
        out.rot.axis = {snx / sphi, sny / sphi, snz / sphi};
    }
    return out;
}

double schedule_deficit(double alpha1, double alpha2, double beta, double lam, long long t1) {
    const FxrRotation fx = fxr_axis_angle(alpha1, alpha2, beta, lam);
    if (!fx.axis_defined) return 1.0 - lam;  // composite is a phase, state stays put
    Rotation total = fx.rot;
    total.angle = static_cast<double>(t1) * fx.rot.angle;
    total.global_phase = 0.0;
    const ComplexMatrix m = rotation_to_matrix(total);
    const double a = std::sqrt(1.0 - lam), b = std::sqrt(lam);
    const cd amp = m.at(1, 0) * a + m.at(1, 1) * b;
    return 1.0 - std::norm(amp);
}

namespace {

struct OuterResidual {
    bool valid = false;
    double value = 0;
    double alpha1 = 0;
    double phi = 0;
};

// alpha1 from the imaginary-part equation, then the real-part residual.
// Points too close to a pole of tan or to the alpha1 denominator's zero
// are reported invalid so the scan skips them.
OuterResidual outer_residual(double alpha2, double lam, double beta, long long t1) {
    OuterResidual out;
    const double sb = std::sin(beta), cb = std::cos(beta);
    const double one2l = 1.0 - 2.0 * lam;
    const double t = std::tan(alpha2 / 2.0);
    const double den = cb - one2l * sb * t;
    if (std::abs(den) < tol::singularity_guard) return out;
    const double a1 = 2.0 * std::atan(-((2.0 * lam + one2l * cb) * t + sb) / den);

    const FxrRotation fx = fxr_axis_angle(a1, alpha2, beta, lam);
    const double phi = fx.rot.angle;
    const double sphi = std::sin(phi);
    if (std::abs(sphi) < tol::singularity_guard) return out;
    const double tp = static_cast<double>(t1) * phi;
    // distance of t1*phi to pi/2 mod pi
    const double frac = tp / kPi - std::floor(tp / kPi);
    if (std::abs(frac - 0.5) * kPi < tol::singularity_guard) return out;

    const double hb2 = std::sin(beta / 2.0) * std::sin(beta / 2.0);
    const double factor = -std::sin(a1 / 2.0) * std::cos(alpha2 / 2.0) * sb +
                          2.0 * std::sin(a1 / 2.0) * std::sin(alpha2 / 2.0) * hb2 * one2l;
    out.valid = true;
    out.value = 1.0 - 2.0 * lam * (std::tan(tp) / sphi) * factor;
    out.alpha1 = a1;
    out.phi = phi;
    return out;
}

// Residual of the imaginary-part equation, for reporting.
double im_equation(double a1, double a2, double lam, double beta) {
    const double sb = std::sin(beta), cb = std::cos(beta);
    const double one2l = 1.0 - 2.0 * lam;
    const double t1h = std::tan(a1 / 2.0), t2h = std::tan(a2 / 2.0);
    return -one2l * sb * t1h * t2h + cb * t1h + (2.0 * lam + one2l * cb) * t2h + sb;
}

}  // namespace

OuterParams solve_outer(const StructureParams& sp, const InnerParams& ip, long long t1, double tolerance) {
    const double lam = sp.lam;
    const double beta = ip.beta;
    constexpr int kScanPoints = 2000;

    double best_deficit = 1e300;
    std::optional<OuterParams> best;

    double prev_a2 = 0;
    OuterResidual prev;
    prev.valid = false;
    for (int i = 0; i < kScanPoints; ++i) {
        const double a2 = -kPi + 2.0 * kPi * (i + 0.5) / kScanPoints;
        OuterResidual cur = outer_residual(a2, lam, beta, t1);
        if (cur.valid && prev.valid && prev.value * cur.value <= 0.0) {
            double lo = prev_a2, hi = a2, flo = prev.value;
            for (int iter = 0; iter < 100 && hi - lo > tol::bisect_interval; ++iter) {
                const double mid = (lo + hi) / 2.0;
                OuterResidual rm = outer_residual(mid, lam, beta, t1);
                if (!rm.valid) break;
                if (flo * rm.value <= 0.0)
                    hi = mid;
                else {
                    lo = mid;
                    flo = rm.value;
                }
            }
            const double a2_root = (lo + hi) / 2.0;
            OuterResidual rr = outer_residual(a2_root, lam, beta, t1);
            if (rr.valid) {
                const double deficit = schedule_deficit(rr.alpha1, a2_root, beta, lam, t1);
                if (deficit < best_deficit) {
                    OuterParams op;
                    op.t1 = t1;
                    op.alpha1 = rr.alpha1;
                    op.alpha2 = a2_root;
                    op.phi = rr.phi;
                    op.residual_real = std::abs(rr.value);
                    op.residual_im = std::abs(im_equation(rr.alpha1, a2_root, lam, beta));
                    op.model_deficit = deficit;
                    best_deficit = deficit;
                    best = op;
                }
            }
        }
        prev = cur;
        prev_a2 = a2;
    }

    if (!best || best->model_deficit > tolerance || best->residual_im > tolerance) {
        std::ostringstream msg;
        msg << "solve_outer: no root of the real-part equation brings the model deficit under "
            << tolerance << " for N = " << sp.N << ", t1 = " << t1;
        if (best)
            msg << " (best deficit " << best->model_deficit << ", equation residuals "
                << best->residual_real << ", " << best->residual_im << ")";
        else
            msg << " (no bracket survived the " << kScanPoints << "-point scan)";
        throw SolverFailure(msg.str());
    }
    return *best;
}

SolveReport solve_all(long long N, int c, double tolerance) {
    SolveReport rep;
    const StructureParams sp = derive_structure(N, c);
    const InnerParams ip = solve_inner(sp);
    const auto inner_res = verify_inner(sp, ip);
    rep.residual_inner = std::max(inner_res[0], inner_res[1]);
    if (rep.residual_inner > tol::inner_residual)
        throw SolverFailure("solve_all: inner residual above bound");

    auto [phi0, t1] = compute_outer_schedule(sp, ip);
    OuterParams op;
    bool solved = false;
    std::string last_error;
    for (long long extra = 0; extra <= 3 && !solved; ++extra) {
        try {
            op = solve_outer(sp, ip, t1 + extra, tolerance);
            solved = true;
        } catch (const SolverFailure& e) {
            last_error = e.what();
        }
    }
    if (!solved) throw SolverFailure(last_error);
    op.phi0 = phi0;

    rep.residual_outer = std::max(op.residual_real, op.residual_im);
    rep.params.N = sp.N;
    rep.params.r = sp.r;
    rep.params.c = sp.c;
    rep.params.t2 = sp.t2;
    rep.params.ct2 = sp.ct2;
    rep.params.theta1 = ip.theta1;
    rep.params.theta2 = ip.theta2;
    rep.params.d = ip.d;
    rep.params.beta = ip.beta;
    rep.params.lam = sp.lam;
    rep.params.phi0 = phi0;
    rep.params.t1 = op.t1;
    rep.params.alpha1 = op.alpha1;
    rep.params.alpha2 = op.alpha2;
    return rep;
}

long long query_count(const AlgorithmParams& p) { return p.r + 4 * p.t1 * p.ct2; }

}  // namespace edwalk
