#pragma once
#include <stdexcept>
#include <string>

namespace edwalk {

// Root finding could not bracket or polish a solution.
struct SolverFailure : std::runtime_error {
    explicit SolverFailure(const std::string& what) : std::runtime_error(what) {}
};

// A state vector or lookup table would exceed the configured cap.
struct ResourceLimit : std::runtime_error {
    explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

// The simulated state left the subspace the reduction is valid in.
struct ModelViolation : std::runtime_error {
    explicit ModelViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace edwalk
