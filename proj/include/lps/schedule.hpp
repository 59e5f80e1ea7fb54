#pragma once

#include "lps/instance.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lps {

/// A total assignment of jobs to machines, keyed by id.
struct Schedule {
    std::map<std::string, std::string> assignment; // job id -> machine id
};

/// Objective value with an exact rational path for integer exponents.
/// Exactness matters only for comparisons between co-optimal schedules;
/// all reported values go through to_double().
class ObjVal {
public:
    ObjVal() = default;

    static ObjVal zero(bool exact) { ObjVal v; v.exact_ = exact; return v; }
    static ObjVal infinity(Direction dir);

    /// Adds one machine term (g(W)/s)^p. weight >= 0, speed > 0.
    void add_term(const Rational& weight, const Rational& speed, const ProblemSpec& spec);

    bool is_exact() const { return exact_; }
    double to_double() const;
    const Rational& exact_value() const { return value_; }

    /// Three-way comparison; exact when both sides carry rationals.
    int compare(const ObjVal& other) const;
    bool operator<(const ObjVal& o) const { return compare(o) < 0; }
    bool operator==(const ObjVal& o) const { return compare(o) == 0; }

    /// True if this is strictly better than other for the given direction.
    bool better_than(const ObjVal& other, Direction dir) const {
        int c = compare(other);
        return dir == Direction::Minimize ? c < 0 : c > 0;
    }

private:
    bool exact_ = false;
    bool infinite_ = false;
    int inf_sign_ = 0;
    Rational value_;            // used when exact_
    std::vector<double> terms_; // used when !exact_; summed in sorted order
};

/// Per-machine works W_i in machine order; every weight of an absent machine is 0.
std::vector<Rational> works_by_machine(const Instance& inst, const Schedule& sched);

/// Returns all violations (unassigned / duplicate-free by construction /
/// unknown ids); empty means the schedule is valid.
std::vector<std::string> validate(const Instance& inst, const Schedule& sched);

/// Sum of (W_i/s_i)^p. Throws InputError naming the offending job when the
/// schedule is invalid. Empty machines contribute exactly zero.
double evaluate(const Instance& inst, const Schedule& sched);

/// Objective as an ObjVal (exact for integer p).
ObjVal evaluate_value(const Instance& inst, const Schedule& sched);
ObjVal objective_from_works(const Instance& inst, const std::vector<Rational>& works);

/// Optimal schedule for the trivial regimes: everything on one fastest
/// machine (minimize, p <= 1) or one slowest machine (maximize, p >= 1).
/// Throws ContractViolation outside those regimes.
Schedule trivial_solve(const Instance& inst);

} // namespace lps
