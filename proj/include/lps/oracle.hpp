#pragma once

#include "lps/schedule.hpp"

#include <functional>

namespace lps {

struct OracleResult {
    Schedule schedule;
    double value = 0;
    ObjVal value_obj;
    long long node_count = 0;
};

/// Optional weight modifier g applied to each machine work before the power.
using WeightFn = std::function<Rational(const Rational&)>;

/// Exact optimum of sum (g(W_i)/s_i)^p over all m^n assignments, with
/// symmetry pruning across equal-speed machines. Enforces m^n <= 10^7.
/// Ties resolve to the lexicographically smallest canonical assignment.
OracleResult brute_force(const Instance& inst, const WeightFn& g = {});

/// Exact optimum via DP over (machine index, remaining size multiset).
/// Requires at most 8 distinct sizes and a state space of at most 10^7.
OracleResult exact_dp(const Instance& inst);

/// Jobs in non-increasing size order, each placed on the machine with the
/// best marginal objective change. Feasibility only, no guarantee.
Schedule greedy_baseline(const Instance& inst);

} // namespace lps
