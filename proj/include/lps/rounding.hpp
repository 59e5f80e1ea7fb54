#pragma once

#include "lps/schedule.hpp"

#include <map>
#include <string>
#include <vector>

namespace lps {

/// An instance rounded per the scheme: speeds and sizes first pushed up to
/// powers of 1+eps, then sizes snapped down onto the mu-grid.
struct RoundedInstance {
    Instance original;  // what lift_schedule maps back to
    Instance base;      // rounded sizes/speeds, same ids and machine order

    std::map<std::string, long long> size_exponents;  // job id -> j, size = (1+eps)^j
    std::map<std::string, long long> speed_exponents; // machine id -> j

    // Populated by the arithmetic step:
    Rational mu;                            // 0 until set
    Rational p_max;                         // max size after the geometric step
    std::vector<std::string> removed_jobs;  // minimization only
    std::map<std::string, BigInt> size_units; // job id -> size/mu (0 allowed, max only)

    bool arithmetic_done() const { return mu != 0; }
};

/// Rounds every speed and size up to the next integer power of 1+eps
/// (exact powers stay put) and records the exponents.
RoundedInstance round_geometric(const Instance& inst);

/// Minimization second step: drops jobs with size <= eps*p_max/n, rounds the
/// rest down to multiples of mu = eps^2*p_max/n.
RoundedInstance round_arithmetic_min(RoundedInstance r);

/// Maximization second step: rounds every size down to a multiple of
/// mu = eps^(1/p)*p_max/(n*m^(1/p)). Sizes may become 0; such jobs stay in
/// the instance and are re-added by lift_schedule. When 1/p is not an
/// integer the exponent ceil(1/p) is used, which only shrinks mu.
RoundedInstance round_arithmetic_max(RoundedInstance r);

/// Maps a schedule on the rounded instance back to the original one:
/// restores sizes, places removed jobs next to a p_max job (minimization),
/// and greedily adds unassigned jobs (maximization).
Schedule lift_schedule(const RoundedInstance& r, const Schedule& on_rounded);

} // namespace lps
