#pragma once

#include "lps/params.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lps {

struct BRJob {
    int idx = -1;         // caller-side job index
    long long units = 0;  // size in mu-units
};

struct BRMachineRef {
    int index = -1; // caller-side machine index
    Rational speed;
};

/// Bounded-ratio subproblem: a consecutive machine range whose weights must
/// land in [w_lo, w_hi], large jobs given individually, small jobs tracked
/// only by total size b_units, and a bound a_units on what may (min) or
/// must (max) stay unscheduled. All unit fields are multiples of mu.
struct BRInput {
    Direction dir = Direction::Minimize;
    double p = 2;
    Rational eps;
    Rational mu;
    Rational w_lo;
    Rational w_hi;
    std::vector<BRMachineRef> machines;
    std::vector<BRJob> large;
    long long b_units = 0; // B: total size of small jobs
    long long a_units = 0; // A: unscheduled-size bound
    std::vector<BRJob> smalls; // concrete small jobs (standalone runs)
    long long config_cap = 5'000'000;
    long long w_tilde_cap = -1; // ignore configurations heavier than this; -1 = off
};

/// Returns invariant violations of the input (window ratio vs gamma, large
/// sizes vs eps*w_lo, speed ratio vs beta). Diagnostic; empty means clean.
std::vector<std::string> check_br_invariants(const BRInput& input, const Rational& gamma);

struct SpeedClass {
    Rational sigma;
    int count = 0;
};

struct Configuration {
    std::vector<int> counts;      // large jobs per size class
    long long large_units = 0;    // sum h*counts
    long long w_exp = 0;          // w = (1+eps)^w_exp
    Rational w;
    long long w_tilde_units = 0;  // floor(w/mu) for min, ceil(w/mu) for max
    long long gap_units = 0;      // small-job room: min w~ - large; max max(0, w~ - large)
    int speed_class = 0;
    double cost = 0;              // (w/sigma)^p
};

struct ConfigSet {
    std::vector<long long> h_units;              // distinct large sizes, descending
    std::vector<int> n_h;                        // multiplicities
    std::vector<std::vector<int>> h_members;     // positions into input.large, input order
    std::vector<SpeedClass> classes;
    std::vector<int> class_of_machine;           // per machine position
    std::vector<Configuration> configs;
    std::vector<std::vector<int>> by_class;      // config ids per class
};

/// Enumerates every configuration over observed large sizes, the direction's
/// power-of-(1+eps) weight range, and observed speed classes. Throws
/// ResourceCapError if the count would exceed input.config_cap.
ConfigSet enumerate_configurations(const BRInput& input);

struct IPSolution {
    std::vector<int> machine_config;  // per machine position
    std::vector<long long> x;         // configuration histogram
    std::vector<int> y;               // unscheduled count per size class
    long long u_units = 0;            // sum h*y
    long long gap_units = 0;          // sum of gaps over machines
    double objective = 0;             // X*
};

/// Exact optimum of the direction's configuration IP, or nullopt (FALSE).
std::optional<IPSolution> solve_ip_min(const BRInput& input, const ConfigSet& cfg);
std::optional<IPSolution> solve_ip_max(const BRInput& input, const ConfigSet& cfg);

/// Re-checks a solution against the full constraint system with exact
/// arithmetic; throws ContractViolation on any violation.
void verify_ip_solution(const BRInput& input, const ConfigSet& cfg, const IPSolution& sol);

struct SmallPiece {
    int job_pos = -1;     // position into input.smalls
    long long units = 0;  // portion size
};

struct BRSolution {
    std::vector<int> machine_config;
    std::vector<std::vector<int>> large_jobs;           // per machine, positions into input.large
    std::vector<std::vector<SmallPiece>> small_pieces;  // per machine
    std::vector<int> unscheduled_large;
    std::vector<SmallPiece> unscheduled_small;
    std::vector<long long> weight_units;                // realized weight per machine
    double objective = 0;                               // claimed IP value
    bool integral = false;
};

/// Pours small jobs into configuration gaps machine by machine, splitting a
/// job exactly at gap boundaries. Large ids are taken in input order.
BRSolution assign_fractional_next_fit(const BRInput& input, const ConfigSet& cfg,
                                      const IPSolution& ip);

/// Makes small placements integral: minimization moves each split job wholly
/// to its first host, maximization drops split jobs back to unscheduled.
void integralize(const BRInput& input, BRSolution& sol);

/// Full pipeline: enumerate -> solve -> next-fit -> integralize.
/// With zero machines: value 0 iff a == b + total large size, else FALSE.
std::optional<BRSolution> ibr_eptas(const BRInput& input);

/// The realized objective sum (weight*mu/speed)^p of a BR solution.
double realized_objective(const BRInput& input, const BRSolution& sol);

/// One (u, g, cost) outcome of the IP with the per-machine choice that
/// realizes it: u = unscheduled large units, g = total gap. A/B-independent;
/// the layered DP turns these into arcs.
struct ArcProfile {
    long long u = 0;
    long long g = 0;
    double cost = 0;
    std::vector<int> machine_config;
};

/// All Pareto-undominated profiles for the input's machines and large jobs.
/// For zero machines returns the single skip profile (u = total large, g=0).
std::vector<ArcProfile> enumerate_profiles(const BRInput& input, const ConfigSet& cfg);

} // namespace lps
