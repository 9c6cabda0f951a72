#include "edwalk/instance.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace edwalk {

void Instance::validate() const {
    if (N < 1 || M < N) throw std::invalid_argument("instance: need 1 <= N <= M");
    if (static_cast<int>(values.size()) != N) throw std::invalid_argument("instance: wrong value count");
    for (int v : values)
        if (v < 1 || v > M) throw std::invalid_argument("instance: value outside [1..M]");

    std::unordered_map<int, std::vector<int>> where;
    for (int i = 0; i < N; ++i) where[values[i]].push_back(i);
    std::optional<std::pair<int, int>> found;
    for (const auto& [v, idx] : where) {
        if (idx.size() == 1) continue;
        if (idx.size() > 2 || found) throw std::invalid_argument("instance: more than one colliding pair");
        found = {idx[0], idx[1]};
    }
    if (found != colliding_pair) throw std::invalid_argument("instance: declared pair does not match values");
    if (colliding_pair && colliding_pair->first >= colliding_pair->second)
        throw std::invalid_argument("instance: pair must be ordered");
}

namespace {

Instance base_instance(int N, int M, std::uint64_t seed) {
    if (N < 1 || M < N) throw std::invalid_argument("instance: need 1 <= N <= M");
    if (M > 10'000'000) throw std::invalid_argument("instance: M too large");
    Instance ins;
    ins.N = N;
    ins.M = M;
    std::mt19937_64 rng(seed);
    std::vector<int> pool(M);
    std::iota(pool.begin(), pool.end(), 1);
    // partial Fisher-Yates: first N entries become a uniform N-subset in
    // uniform order
    for (int i = 0; i < N; ++i) {
        std::uniform_int_distribution<int> pick(i, M - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    ins.values.assign(pool.begin(), pool.begin() + N);
    return ins;
}

}  // namespace

Instance make_distinct_instance(int N, int M, std::uint64_t seed) {
    Instance ins = base_instance(N, M, seed);
    ins.validate();
    return ins;
}

Instance make_colliding_instance(int N, int M, std::uint64_t seed) {
    if (N < 2) throw std::invalid_argument("instance: colliding needs N >= 2");
    Instance ins = base_instance(N, M, seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<int> pick(0, N - 1);
    int i1 = pick(rng), i2 = pick(rng);
    while (i2 == i1) i2 = pick(rng);
    if (i1 > i2) std::swap(i1, i2);
    ins.values[i2] = ins.values[i1];  // the displaced value simply disappears
    ins.colliding_pair = {i1, i2};
    ins.validate();
    return ins;
}

}  // namespace edwalk
