#pragma once

#include "lps/config_ip.hpp"
#include "lps/rounding.hpp"
#include "lps/shifting.hpp"

#include <map>
#include <optional>
#include <tuple>

namespace lps {

struct DpOptions {
    BigInt rho_override = 0;    // 0 = use the formula value
    long long a_stride = 1;     // >1 coarsens the A-grid (profiling only)
    long long config_cap = 5'000'000;
    bool validate_arcs = true;  // exact IP re-check of every used arc
};

/// The rounded instance in mu-units, machines sorted per the direction.
struct WorkingInstance {
    ProblemSpec spec;
    Rational mu;
    std::vector<std::string> job_ids;    // positive-size jobs, input order
    std::vector<long long> job_units;
    std::vector<std::string> machine_ids;
    std::vector<Rational> speeds;
    long long total_units = 0;
    long long p_min_units = 0;
};

/// One layer per valid interval; arcs are solved lazily per machine range.
class LayeredGraph {
public:
    struct Layer {
        Rational w_lo, w_hi;
        std::vector<int> jobs; // indices into the working instance
        long long total_units = 0;
    };

    LayeredGraph(const WorkingInstance& wi, ValidIntervals omega, const std::vector<int>& assoc,
                 DpOptions opts);

    struct Family {
        BRInput input;
        ConfigSet cfg;
        std::vector<ArcProfile> profiles;
    };

    /// Profiles for machines [i, j) against layer t; memoized.
    const Family& family(int t, int i, int j);

    const WorkingInstance& working() const { return *wi_; }
    const std::vector<Layer>& layers() const { return layers_; }
    const ValidIntervals& omega() const { return omega_; }
    const DpOptions& options() const { return opts_; }
    long long configs_enumerated() const { return configs_enumerated_; }

private:
    const WorkingInstance* wi_;
    ValidIntervals omega_;
    std::vector<Layer> layers_;
    DpOptions opts_;
    std::map<std::tuple<int, int, int>, Family> families_;
    long long configs_enumerated_ = 0;
    long long w_tilde_cap_ = 0;
};

struct PathStep {
    int t = 0;            // layer
    int i = 0, j = 0;     // machine range [i, j)
    long long b = 0;      // pool parameter entering the arc
    long long a = 0;      // pool parameter leaving the arc
    int profile = -1;     // index into family(t, i, j).profiles; -1 for skip
};

struct PathResult {
    std::vector<PathStep> steps;
    double cost = 0;
};

/// Best source-to-sink path: start (start_machine, 0) in layer 0, sink at
/// the dummy machine. Minimization requires the sink pool parameter to be 0.
std::optional<PathResult> best_path(LayeredGraph& graph, Direction dir, int start_machine = 0);

struct AssembledSchedule {
    Schedule schedule;                     // on the rounded instance (by job id)
    std::vector<int> unassigned;           // working job indices (maximization)
    std::vector<long long> machine_units;  // realized weights
    std::vector<int> machine_layer;        // interval index per machine, -1 if empty
    double claimed_cost = 0;
};

/// Replays the path: places large jobs per configuration, pours small jobs
/// through the pool queue, and integralizes per direction.
AssembledSchedule assemble_schedule(const PathResult& path, LayeredGraph& graph);

struct ChoiceReport {
    long long k = 0; // removed zero-weight machines
    BigInt eta;
    Parity phi = Parity::Even;
    bool feasible = false;
    double value = 0;
};

struct EptasResult {
    Schedule schedule;  // on the original instance
    double value = 0;
    long long k = 0;
    BigInt eta;
    Parity phi = Parity::Even;
    SchemeParams params;
    std::vector<ChoiceReport> choices;
    long long configs_enumerated = 0;
    long long choices_tried = 0;
    std::map<std::string, double> stage_ms;
};

/// Full pipeline: sort, round, sweep (k, eta, phi), lift, evaluate with the
/// true objective on the original instance; returns the best schedule found.
/// Requires the non-trivial regime (use trivial_solve otherwise).
EptasResult eptas_solve(const Instance& inst, const DpOptions& opts = {});

} // namespace lps
