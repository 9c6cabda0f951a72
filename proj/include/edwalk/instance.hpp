#pragma once
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace edwalk {

// An oracle input: values[i] in [1..M] for indices i in [0..N). Either
// all values are pairwise distinct or exactly one unordered index pair
// collides; the pair is stored so simulators can mark it. The instance
// owns the oracle-call ledger.
struct Instance {
    int N = 0;
    int M = 0;
    std::vector<int> values;
    std::optional<std::pair<int, int>> colliding_pair;  // i1 < i2
    long long queries = 0;

    // Throws std::invalid_argument when the promise is broken.
    void validate() const;
};

// Distinct values drawn from [1..M]; for the colliding variant a random
// index pair is overwritten to share one value.
Instance make_distinct_instance(int N, int M, std::uint64_t seed);
Instance make_colliding_instance(int N, int M, std::uint64_t seed);

}  // namespace edwalk
