// Python bindings for the schedule solver and the simulators. The
// surface mirrors the CLI: solve parameters, run the collapsed or the
// full model, sample measurements, and inspect the exact combinatorics.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <cstdint>
#include <sstream>
#include <vector>

#include "edwalk/errors.hpp"
#include "edwalk/explicit_register.hpp"
#include "edwalk/fullspace.hpp"
#include "edwalk/instance.hpp"
#include "edwalk/record.hpp"
#include "edwalk/reduced.hpp"
#include "edwalk/solver.hpp"

namespace py = pybind11;
using namespace edwalk;

namespace {

py::object big_to_int(const bigint& v) {
    // route through the decimal string so arbitrary precision survives
    return py::module_::import("builtins").attr("int")(v.str());
}

Instance build_instance(long long n, bool distinct, std::uint64_t seed, int m) {
    const int nn = static_cast<int>(n);
    const int mm = m > 0 ? m : nn;
    return distinct ? make_distinct_instance(nn, mm, seed)
                    : make_colliding_instance(nn, mm, seed);
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() =
        "exact quantum-walk pair finder: closed-form schedule solver plus "
        "collapsed, full vertex-space and joint value-register simulators";

    py::register_exception<SolverFailure>(mod, "SolverFailure");
    py::register_exception<ResourceLimit>(mod, "ResourceLimit");
    py::register_exception<ModelViolation>(mod, "ModelViolation");

    py::class_<AlgorithmParams>(mod, "AlgorithmParams",
                                "complete parameter schedule for one problem size")
        .def_readonly("N", &AlgorithmParams::N)
        .def_readonly("r", &AlgorithmParams::r)
        .def_readonly("c", &AlgorithmParams::c)
        .def_readonly("t2", &AlgorithmParams::t2)
        .def_readonly("ct2", &AlgorithmParams::ct2)
        .def_readonly("t1", &AlgorithmParams::t1)
        .def_readonly("d", &AlgorithmParams::d)
        .def_readonly("theta1", &AlgorithmParams::theta1)
        .def_readonly("theta2", &AlgorithmParams::theta2)
        .def_readonly("beta", &AlgorithmParams::beta)
        .def_readonly("lam", &AlgorithmParams::lam)
        .def_readonly("phi0", &AlgorithmParams::phi0)
        .def_readonly("alpha1", &AlgorithmParams::alpha1)
        .def_readonly("alpha2", &AlgorithmParams::alpha2)
        .def("__repr__", [](const AlgorithmParams& p) {
            std::ostringstream s;
            s << "AlgorithmParams(N=" << p.N << ", r=" << p.r << ", t2=" << p.t2
              << ", ct2=" << p.ct2 << ", t1=" << p.t1 << ", d=" << p.d << ")";
            return s.str();
        });

    py::class_<SolveReport>(mod, "SolveReport", "solved schedule plus solver residuals")
        .def_readonly("params", &SolveReport::params)
        .def_readonly("residual_inner", &SolveReport::residual_inner)
        .def_readonly("residual_outer", &SolveReport::residual_outer)
        .def("__repr__", [](const SolveReport& r) {
            std::ostringstream s;
            s << "SolveReport(N=" << r.params.N << ", residual_inner=" << r.residual_inner
              << ", residual_outer=" << r.residual_outer << ")";
            return s.str();
        });

    mod.def("solve", &solve_all, py::arg("n"), py::arg("c") = 10,
            py::arg("tolerance") = 1e-12,
            "derive the full parameter schedule for problem size n");

    mod.def("query_count", &query_count, py::arg("params"),
            "oracle-call ledger implied by the schedule: r + 4*t1*c*t2");

    mod.def(
        "group_sizes",
        [](long long n, long long r) {
            ReducedModel m = build_reduced_model(n, r);
            py::list out;
            for (const bigint& g : m.group_sizes) out.append(big_to_int(g));
            return out;
        },
        py::arg("n"), py::arg("r"),
        "exact vertex-group sizes keyed by (|S n K|, [y in K]): "
        "(0,0), (0,1), (1,0), (1,1), (2,0)");

    mod.def(
        "run_reduced",
        [](const AlgorithmParams& p) {
            ReducedModel m = build_reduced_model(p.N, p.r);
            ReducedRunResult res = run_reduced(m, p);
            py::dict out;
            out["success_prob"] = res.success_prob;
            out["target_amplitude"] = res.target_amplitude;
            out["final_state"] = res.final_state;
            out["query_count"] = query_count(p);
            return out;
        },
        py::arg("params"),
        "run the five-dimensional collapsed model and return the success "
        "probability on the target line");

    mod.def(
        "walk_power_residual",
        [](const AlgorithmParams& p) {
            ReducedModel m = build_reduced_model(p.N, p.r);
            InnerParams ip{p.d, p.theta1, p.theta2, p.beta};
            return walk_power_residual(m, ip, p.ct2);
        },
        py::arg("params"),
        "Frobenius gap between u^(c*t2) and the phased start-state "
        "reflection (global phase e^(-i*beta))");

    mod.def(
        "run_full",
        [](const AlgorithmParams& p, std::uint64_t seed, bool distinct, int m,
           long long cap) {
            Instance ins = build_instance(p.N, distinct, seed, m);
            FullRunResult res = run_full(ins, p, cap);
            py::dict out;
            out["success_prob"] = res.success_prob;
            out["p_report_pair"] = res.p_report_pair;
            out["p_report_distinct"] = res.p_report_distinct;
            out["query_count"] = res.query_count;
            out["max_norm_drift"] = res.max_norm_drift;
            out["values"] = ins.values;
            out["colliding_pair"] = ins.colliding_pair;
            return out;
        },
        py::arg("params"), py::arg("seed"), py::arg("distinct") = false,
        py::arg("m") = 0, py::arg("cap") = 2'000'000,
        "run the full vertex-space simulation on a seeded instance "
        "(m defaults to n)");

    mod.def(
        "measure",
        [](const AlgorithmParams& p, std::uint64_t seed, long long samples,
           bool distinct, int m, long long cap) {
            Instance ins = build_instance(p.N, distinct, seed, m);
            FullRunResult res = run_full(ins, p, cap);
            WalkGeometry g(static_cast<int>(p.N), p.r, cap);
            std::mt19937_64 rng(seed);
            long long pair = 0, correct = 0;
            for (long long s = 0; s < samples; ++s) {
                auto outcome = measure_outcome(g, res.final_amp, ins, rng);
                if (outcome) {
                    ++pair;
                    if (ins.colliding_pair && *outcome == *ins.colliding_pair) ++correct;
                }
            }
            py::dict out;
            out["samples"] = samples;
            out["reported_pair"] = pair;
            out["reported_distinct"] = samples - pair;
            out["correct"] = correct;
            out["colliding_pair"] = ins.colliding_pair;
            out["query_count"] = res.query_count;
            return out;
        },
        py::arg("params"), py::arg("seed"), py::arg("samples") = 1000,
        py::arg("distinct") = false, py::arg("m") = 0, py::arg("cap") = 2'000'000,
        "sample projective measurements of the final state of a seeded run");

    mod.def(
        "explicit_register_check",
        [](const AlgorithmParams& p, std::uint64_t seed, bool distinct, int m) {
            Instance ins = build_instance(p.N, distinct, seed, m);
            ExplicitReport rep = explicit_register_run(ins, p);
            py::dict out;
            out["max_final_diff"] = rep.max_final_diff;
            out["max_off_pattern"] = rep.max_off_pattern;
            out["success_prob"] = rep.success_prob;
            out["success_prob_index_only"] = rep.success_prob_index_only;
            out["query_count"] = rep.query_count;
            return out;
        },
        py::arg("params"), py::arg("seed"), py::arg("distinct") = false,
        py::arg("m") = 0,
        "joint value-register run vs the index-only run (n = 5 only)");

    mod.def(
        "to_json",
        [](const SolveReport& rep) {
            RunRecord rec;
            rec.params = rep.params;
            rec.residual_inner = rep.residual_inner;
            rec.residual_outer = rep.residual_outer;
            rec.query_count = query_count(rep.params);
            return to_json(rec);
        },
        py::arg("report"), "one-line JSON form of a solved schedule");
}
