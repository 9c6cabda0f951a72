#pragma once
#include <optional>
#include <string>

#include "edwalk/solver.hpp"

namespace edwalk {

// One run's worth of output: the parameter bundle plus whatever the
// chosen simulators measured. Optionals stay empty (JSON null) when the
// producing mode does not compute them.
struct RunRecord {
    AlgorithmParams params;
    std::string mode = "solve";  // solve | reduced | full | both
    double residual_inner = 0;
    double residual_outer = 0;
    std::optional<double> residual_walk_power;  // phase-aligned reflection gap
    std::optional<double> success_prob;
    std::optional<double> leakage;  // weight escaping the modeled subspace
    std::optional<double> h0_dev;   // worst coordinate gap, full vs reduced
    long long query_count = 0;
    double wall_time = 0;  // seconds
};

// Shortest decimal string that parses back to the same double.
std::string format_double(double);

extern const char* const kSweepCsvHeader;

// Flat single-line JSON object; every parameter field is present, and
// doubles round-trip exactly.
std::string to_json(const RunRecord&);
RunRecord record_from_json(const std::string&);

// One sweep row under kSweepCsvHeader. Only the sweep columns survive
// the round-trip; the rest of a parsed record is defaulted.
std::string to_csv_row(const RunRecord&);
RunRecord record_from_csv_row(const std::string&);

double queries_over_n23(const RunRecord&);

}  // namespace edwalk
