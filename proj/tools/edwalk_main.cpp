// Command-line front end: solve parameter schedules, verify simulator
// runs against the pinned thresholds, sweep query-cost scaling to CSV,
// and sample measurement outcomes.
//
// Exit codes: 0 success, 1 verification/solver failure, 2 bad usage or
// precondition, 3 resource or I/O limit.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "edwalk/errors.hpp"
#include "edwalk/explicit_register.hpp"
#include "edwalk/fullspace.hpp"
#include "edwalk/instance.hpp"
#include "edwalk/record.hpp"
#include "edwalk/reduced.hpp"
#include "edwalk/solver.hpp"
#include "edwalk/tolerances.hpp"

namespace {

using namespace edwalk;

std::vector<long long> parse_n_list(const std::string& text) {
    std::vector<long long> out;
    auto as_ll = [](const std::string& s) {
        size_t used = 0;
        long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument("--n: bad integer '" + s + "'");
        return v;
    };
    const size_t dots = text.find("..");
    if (dots != std::string::npos) {
        const long long a = as_ll(text.substr(0, dots));
        const long long b = as_ll(text.substr(dots + 2));
        if (b < a) throw std::invalid_argument("--n: empty range");
        for (long long n = a; n <= b; ++n) out.push_back(n);
        return out;
    }
    std::istringstream in(text);
    std::string cell;
    while (std::getline(in, cell, ',')) out.push_back(as_ll(cell));
    if (out.empty()) throw std::invalid_argument("--n: no values");
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Output sink: --out redirects machine output to a file.
struct Sink {
    std::ofstream file;
    std::ostream* os = &std::cout;
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw ResourceLimit("cannot open output file: " + path);
            os = &file;
        }
    }
    std::ostream& out() { return *os; }
};

struct AngleFmt {
    bool degrees = false;
    double show(double rad) const { return degrees ? rad * 180.0 / std::numbers::pi : rad; }
    const char* unit() const { return degrees ? "deg" : "rad"; }
};

void print_solve_human(std::ostream& os, const RunRecord& rec, const AngleFmt& fmt) {
    const AlgorithmParams& p = rec.params;
    os << "N=" << p.N << "  r=" << p.r << "  c=" << p.c << "  t2=" << p.t2 << "  ct2=" << p.ct2
       << "  t1=" << p.t1 << "  queries=" << rec.query_count << "\n";
    os << std::setprecision(12);
    os << "  d=" << p.d << "  lam=" << p.lam << "  phi0=" << fmt.show(p.phi0) << " " << fmt.unit()
       << "\n";
    os << "  theta1=" << fmt.show(p.theta1) << "  theta2=" << fmt.show(p.theta2)
       << "  beta=" << fmt.show(p.beta) << "  alpha1=" << fmt.show(p.alpha1)
       << "  alpha2=" << fmt.show(p.alpha2) << " " << fmt.unit() << "\n";
    os << std::setprecision(3);
    os << "  residual_inner=" << rec.residual_inner << "  residual_outer=" << rec.residual_outer
       << "\n";
}

int cmd_solve(const std::vector<long long>& ns, int c, double tolerance, bool json,
              const AngleFmt& fmt, const std::string& out_path) {
    Sink sink(out_path);
    for (long long n : ns) {
        const auto t0 = std::chrono::steady_clock::now();
        SolveReport rep = solve_all(n, c, tolerance);
        RunRecord rec;
        rec.params = rep.params;
        rec.mode = "solve";
        rec.residual_inner = rep.residual_inner;
        rec.residual_outer = rep.residual_outer;
        rec.query_count = query_count(rep.params);
        rec.wall_time = seconds_since(t0);
        if (json)
            sink.out() << to_json(rec) << "\n";
        else
            print_solve_human(sink.out(), rec, fmt);
    }
    return 0;
}

struct VerifyRow {
    RunRecord rec;
    std::vector<std::string> failures;
};

VerifyRow verify_one(long long n, int c, double tolerance, const std::string& mode,
                     long long cap) {
    const auto t0 = std::chrono::steady_clock::now();
    VerifyRow row;
    SolveReport rep = solve_all(n, c, tolerance);
    const AlgorithmParams& p = rep.params;
    row.rec.params = p;
    row.rec.mode = mode;
    row.rec.residual_inner = rep.residual_inner;
    row.rec.residual_outer = rep.residual_outer;
    row.rec.query_count = query_count(p);

    ReducedModel model = build_reduced_model(p.N, p.r);
    InnerParams inner{p.d, p.theta1, p.theta2, p.beta};
    const double walk_resid = walk_power_residual(model, inner, p.ct2);
    row.rec.residual_walk_power = walk_resid;
    if (walk_resid > tol::walk_power_residual)
        row.failures.push_back("walk-power residual above " +
                               format_double(tol::walk_power_residual));

    std::vector<cvec> reduced_states;
    ReducedRunResult red = run_reduced(model, p, [&reduced_states](long long, const cvec& st) {
        reduced_states.push_back(st);
    });

    if (mode == "reduced" || mode == "both") {
        const double deficit = 1.0 - red.success_prob;
        if (!(deficit <= tol::reduced_deficit))
            row.failures.push_back("reduced success deficit above " +
                                   format_double(tol::reduced_deficit));
        const double closure = closure_defect(model, p);
        row.rec.leakage = closure;
        if (closure > tol::grover_closure)
            row.failures.push_back("span-closure defect above " +
                                   format_double(tol::grover_closure));
        row.rec.success_prob = red.success_prob;
    }

    if (mode == "full" || mode == "both") {
        Instance ins = make_colliding_instance(static_cast<int>(p.N), static_cast<int>(p.N),
                                               static_cast<std::uint64_t>(p.N));
        const std::uint32_t kmask = marked_mask(ins);
        double worst_leak = 0;
        double worst_dev = 0;
        FullRunResult full = run_full(
            ins, p, cap,
            [&](long long it, const WalkGeometry& g, const cvec& amp) {
                H0Projection proj = project_to_h0(g, amp, kmask);
                worst_leak = std::max(worst_leak, proj.leakage);
                const cvec& red_state = reduced_states.at(static_cast<size_t>(it - 1));
                for (int i = 0; i < 5; ++i)
                    worst_dev = std::max(worst_dev,
                                         std::abs(proj.coords[static_cast<size_t>(i)] -
                                                  red_state[static_cast<size_t>(i)]));
            });
        row.rec.success_prob = full.success_prob;
        row.rec.leakage = worst_leak;
        const double deficit = 1.0 - full.success_prob;
        if (!(deficit <= tol::full_deficit))
            row.failures.push_back("full success deficit above " +
                                   format_double(tol::full_deficit));
        if (worst_leak > tol::leakage_run)
            row.failures.push_back("subspace leakage above " + format_double(tol::leakage_run));
        if (full.query_count != query_count(p))
            row.failures.push_back("query ledger disagrees with r + 4*t1*ct2");
        if (mode == "both") {
            row.rec.h0_dev = worst_dev;
            if (worst_dev > tol::h0_match)
                row.failures.push_back("full/reduced coordinate gap above " +
                                       format_double(tol::h0_match));
        }
    }

    row.rec.wall_time = seconds_since(t0);
    return row;
}

int cmd_verify(const std::vector<long long>& ns, int c, double tolerance, const std::string& mode,
               long long cap, bool json, const std::string& out_path) {
    Sink sink(out_path);
    std::ostream& os = sink.out();
    bool all_pass = true;
    std::vector<std::string> failing;
    if (!json)
        os << std::left << std::setw(9) << "N" << std::setw(14) << "success" << std::setw(12)
           << "deficit" << std::setw(12) << "walk_resid" << std::setw(12) << "leakage"
           << std::setw(12) << "h0_dev" << std::setw(10) << "queries" << "status\n";
    for (long long n : ns) {
        VerifyRow row = verify_one(n, c, tolerance, mode, cap);
        const bool pass = row.failures.empty();
        all_pass = all_pass && pass;
        if (json) {
            os << to_json(row.rec) << "\n";
        } else {
            std::ostringstream deficit;
            if (row.rec.success_prob)
                deficit << std::setprecision(3) << (1.0 - *row.rec.success_prob);
            os << std::left << std::setw(9) << n << std::setw(14)
               << (row.rec.success_prob ? format_double(*row.rec.success_prob).substr(0, 12)
                                        : std::string("-"))
               << std::setw(12) << (deficit.str().empty() ? "-" : deficit.str());
            std::ostringstream wr, lk, hd;
            wr << std::setprecision(3) << row.rec.residual_walk_power.value_or(0.0);
            if (row.rec.leakage) lk << std::setprecision(3) << *row.rec.leakage;
            if (row.rec.h0_dev) hd << std::setprecision(3) << *row.rec.h0_dev;
            os << std::setw(12) << wr.str() << std::setw(12) << (lk.str().empty() ? "-" : lk.str())
               << std::setw(12) << (hd.str().empty() ? "-" : hd.str()) << std::setw(10)
               << row.rec.query_count << (pass ? "PASS" : "FAIL") << "\n";
        }
        if (!pass) {
            std::ostringstream why;
            why << "N=" << n << ": ";
            for (size_t i = 0; i < row.failures.size(); ++i)
                why << (i ? "; " : "") << row.failures[i];
            failing.push_back(why.str());
        }
    }
    if (!all_pass) {
        for (const std::string& line : failing) std::cerr << "verify failed: " << line << "\n";
        return 1;
    }
    return 0;
}

int cmd_sweep(const std::vector<long long>& ns_in, long long step, int c, double tolerance,
              bool json, const std::string& out_path) {
    if (step < 1) throw std::invalid_argument("--step must be >= 1");
    std::vector<long long> ns;
    for (size_t i = 0; i < ns_in.size(); i += static_cast<size_t>(step)) ns.push_back(ns_in[i]);

    // solve + reduced-run per N; worker pool keeps output ordered by
    // position regardless of completion order
    std::vector<RunRecord> rows(ns.size());
    std::vector<std::string> errors(ns.size());
    std::atomic<size_t> next{0};
    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(ns.size()));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (size_t i = next.fetch_add(1); i < ns.size(); i = next.fetch_add(1)) {
                try {
                    const auto t0 = std::chrono::steady_clock::now();
                    SolveReport rep = solve_all(ns[i], c, tolerance);
                    ReducedModel model = build_reduced_model(rep.params.N, rep.params.r);
                    ReducedRunResult red = run_reduced(model, rep.params);
                    RunRecord& rec = rows[i];
                    rec.params = rep.params;
                    rec.mode = "reduced";
                    rec.residual_inner = rep.residual_inner;
                    rec.residual_outer = rep.residual_outer;
                    rec.success_prob = red.success_prob;
                    rec.query_count = query_count(rep.params);
                    rec.wall_time = seconds_since(t0);
                } catch (const std::exception& e) {
                    errors[i] = e.what();
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    for (size_t i = 0; i < ns.size(); ++i)
        if (!errors[i].empty())
            throw SolverFailure("sweep failed at N=" + std::to_string(ns[i]) + ": " + errors[i]);

    Sink sink(out_path);
    std::ostream& os = sink.out();
    if (json) {
        for (const RunRecord& rec : rows) os << to_json(rec) << "\n";
    } else {
        os << kSweepCsvHeader << "\n";
        for (const RunRecord& rec : rows) os << to_csv_row(rec) << "\n";
    }
    return 0;
}

int cmd_measure(const std::vector<long long>& ns, int c, double tolerance, long long cap,
                std::uint64_t seed, long long samples, bool distinct, int m_flag, bool json,
                const std::string& out_path) {
    Sink sink(out_path);
    std::ostream& os = sink.out();
    const long long n = ns.front();
    if (samples < 1) throw std::invalid_argument("--samples must be >= 1");
    const int m = m_flag > 0 ? m_flag : static_cast<int>(n);

    SolveReport rep = solve_all(n, c, tolerance);
    Instance ins = distinct ? make_distinct_instance(static_cast<int>(n), m, seed)
                            : make_colliding_instance(static_cast<int>(n), m, seed);
    FullRunResult full = run_full(ins, rep.params, cap);
    WalkGeometry geo(static_cast<int>(n), rep.params.r, cap);

    std::mt19937_64 rng(seed);
    long long reported_pair = 0, reported_distinct = 0, correct = 0;
    for (long long i = 0; i < samples; ++i) {
        auto outcome = measure_outcome(geo, full.final_amp, ins, rng);
        if (outcome) {
            ++reported_pair;
            if (ins.colliding_pair && *outcome == *ins.colliding_pair) ++correct;
        } else {
            ++reported_distinct;
        }
    }

    if (json) {
        std::ostringstream pair;
        if (ins.colliding_pair)
            pair << "[" << ins.colliding_pair->first << "," << ins.colliding_pair->second << "]";
        else
            pair << "null";
        os << "{\"N\":" << n << ",\"M\":" << m << ",\"seed\":" << seed
           << ",\"samples\":" << samples << ",\"colliding_pair\":" << pair.str()
           << ",\"success_prob\":" << format_double(full.success_prob)
           << ",\"reported_pair\":" << reported_pair
           << ",\"reported_distinct\":" << reported_distinct << ",\"correct\":" << correct
           << ",\"query_count\":" << full.query_count << "}\n";
    } else {
        os << "N=" << n << " M=" << m << " seed=" << seed << " samples=" << samples << "\n";
        if (ins.colliding_pair)
            os << "instance: colliding pair (" << ins.colliding_pair->first << ", "
               << ins.colliding_pair->second << ")\n";
        else
            os << "instance: all values distinct\n";
        os << std::setprecision(12) << "success_prob=" << full.success_prob
           << "  queries=" << full.query_count << "\n";
        os << "reported pair: " << reported_pair << "/" << samples << "  correct: " << correct
           << "  reported all-distinct: " << reported_distinct << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact quantum-walk pair finder: schedule solver and simulators"};
    app.require_subcommand(1);

    std::string n_text;
    int c = 10;
    double tolerance = 1e-12;
    std::string mode = "reduced";
    long long cap = 2'000'000;
    std::string out_path;
    std::uint64_t seed = 0;
    long long samples = 1000;
    long long step = 1;
    int m_flag = 0;
    bool json = false;
    bool distinct = false;
    AngleFmt fmt;

    auto add_common = [&](CLI::App* sub, bool need_n) {
        auto* n_opt = sub->add_option("--n", n_text, "problem size: int, a..b, or comma list");
        if (need_n) n_opt->required();
        sub->add_option("--c", c, "inner repetition multiplier, even")->capture_default_str();
        sub->add_option("--tol", tolerance, "solver tolerance")->capture_default_str();
        sub->add_flag("--json", json, "machine output, one JSON object per line");
        sub->add_option("--out", out_path, "write output to this path");
    };

    CLI::App* solve = app.add_subcommand("solve", "derive the full parameter schedule");
    add_common(solve, true);
    solve->add_flag("--degrees", fmt.degrees, "display angles in degrees (human output only)");

    CLI::App* verify = app.add_subcommand("verify", "run simulators and check thresholds");
    add_common(verify, true);
    verify->add_option("--mode", mode, "reduced | full | both")
        ->check(CLI::IsMember({"reduced", "full", "both"}))
        ->capture_default_str();
    verify->add_option("--cap", cap, "vertex-count ceiling for full runs")->capture_default_str();

    CLI::App* sweep = app.add_subcommand("sweep", "query-cost scaling table (CSV)");
    add_common(sweep, true);
    sweep->add_option("--step", step, "keep every k-th N from the list")->capture_default_str();

    CLI::App* measure = app.add_subcommand("measure", "sample measurement outcomes");
    add_common(measure, true);
    measure->add_option("--seed", seed, "RNG seed (instance + sampling)")->required();
    measure->add_option("--samples", samples, "number of measurements")->capture_default_str();
    measure->add_flag("--distinct", distinct, "use an all-distinct instance");
    measure->add_option("--m", m_flag, "alphabet size (default N)");
    measure->add_option("--cap", cap, "vertex-count ceiling")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const std::vector<long long> ns = parse_n_list(n_text);
        if (solve->parsed()) return cmd_solve(ns, c, tolerance, json, fmt, out_path);
        if (verify->parsed()) return cmd_verify(ns, c, tolerance, mode, cap, json, out_path);
        if (sweep->parsed()) return cmd_sweep(ns, step, c, tolerance, json, out_path);
        if (measure->parsed())
            return cmd_measure(ns, c, tolerance, cap, seed, samples, distinct, m_flag, json,
                               out_path);
    } catch (const edwalk::ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const edwalk::SolverFailure& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 1;
    } catch (const edwalk::ModelViolation& e) {
        std::cerr << "model violation: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
