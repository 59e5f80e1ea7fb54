#pragma once

#include "lps/rational.hpp"

#include <string>
#include <vector>

namespace lps {

enum class Direction { Minimize, Maximize };

inline const char* to_cstr(Direction d) { return d == Direction::Minimize ? "min" : "max"; }

struct Job {
    std::string id;
    Rational size; // p_j > 0
};

struct Machine {
    std::string id;
    Rational speed; // s_i > 0
};

struct ProblemSpec {
    Rational p;          // exponent, 0 < p < inf
    Direction direction = Direction::Minimize;
    Rational eps;        // normalized: 1/k for an integer k >= 2

    double p_double() const { return to_double(p); }
    bool p_is_integer() const { return denominator(p) == 1; }
};

struct Instance {
    std::vector<Job> jobs;
    std::vector<Machine> machines;
    ProblemSpec spec;
};

/// Rounds eps down to the largest 1/k <= eps with integer k >= 2.
Rational normalize_eps(const Rational& eps);

/// Builds a ProblemSpec, normalizing eps and validating p > 0.
ProblemSpec make_spec(const Rational& p, Direction dir, const Rational& eps);

/// Throws InputError on non-positive sizes/speeds or duplicate ids.
void validate_instance(const Instance& inst);

/// True when the optimum is reached by putting everything on one machine:
/// minimization with p <= 1, maximization with p >= 1.
bool trivial_regime(const ProblemSpec& spec);

struct SortedInstance {
    Instance instance;
    std::vector<std::size_t> permutation; // permutation[new_pos] = old position
};

/// Orders machines by speed: non-decreasing for minimization, non-increasing
/// for maximization. Stable with respect to the input order.
SortedInstance sort_machines(const Instance& inst);

} // namespace lps
