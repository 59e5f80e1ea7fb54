#pragma once

#include "lps/interval_dp.hpp"
#include "lps/oracle.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lps {

/// Reads the JSON instance format: numbers are decimal strings so rational
/// arithmetic stays exact. eps is supplied separately (a flag, not a field).
Instance parse_instance(const std::string& path, const Rational& eps = Rational(1, 2));
Instance parse_instance_text(const std::string& text, const Rational& eps,
                             const std::string& origin = "<string>");

/// Canonical serialization; parse(serialize(x)) == x exactly.
std::string serialize_instance(const Instance& inst);

std::string serialize_schedule(const Instance& inst, const Schedule& sched, double objective);
Schedule parse_schedule_text(const std::string& text, const std::string& origin = "<string>");

/// FNV-1a over the canonical serialization.
std::string instance_digest(const Instance& inst);

enum class GenProfile { Uniform, TwoClassSpeeds, GeometricSizes, AdversarialGap };

GenProfile parse_profile(const std::string& name);

struct GenOptions {
    GenProfile profile = GenProfile::Uniform;
    int n = 8;
    int m = 3;
    Rational p = 2;
    Direction direction = Direction::Minimize;
    Rational eps = Rational(1, 2); // adversarial-gap stresses this eps
};

/// Deterministic per (seed, options).
Instance generate(std::uint64_t seed, const GenOptions& options);

struct RunReport {
    std::string digest;
    int n = 0;
    int m = 0;
    std::string p;
    std::string direction;
    std::string eps;      // normalized
    long long k = 0;
    std::string eta;
    std::string phi;
    double alg_value = 0;
    std::optional<double> oracle_value;
    std::optional<double> ratio;   // alg/opt (min) or opt/alg (max)
    double bound = 0;              // (1+eps)^(4(p+1)); 0 when disqualified
    bool within_bound = true;
    double wall_ms = 0;
    std::map<std::string, double> stage_ms;
    long long configs = 0;
    long long choices = 0;
};

struct BenchOptions {
    DpOptions dp;
    bool with_oracle = true;
    bool include_timings = true;
    double inflate_alg_factor = 1.0; // harness self-test hook
};

struct BenchResult {
    std::vector<RunReport> reports;
    bool all_within_bound = true;
};

/// Runs each instance at each eps, comparing against the exact oracle where
/// it fits. Exit-code semantics live in the CLI: violations -> 1.
BenchResult run_bench(const std::vector<Instance>& instances, const std::vector<Rational>& eps_list,
                      const BenchOptions& options);

std::string report_to_json(const RunReport& report);
std::string bench_to_json(const BenchResult& result);

/// Aggregate table (per-eps max/mean ratio) in fixed-width text.
std::string bench_summary_table(const BenchResult& result);

} // namespace lps
