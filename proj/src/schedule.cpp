#include "lps/schedule.hpp"

#include "lps/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace lps {

ObjVal ObjVal::infinity(Direction dir) {
    ObjVal v;
    v.infinite_ = true;
    v.inf_sign_ = dir == Direction::Minimize ? +1 : -1;
    return v;
}

void ObjVal::add_term(const Rational& weight, const Rational& speed, const ProblemSpec& spec) {
    if (infinite_) return;
    if (weight == 0) return; // empty machines contribute exactly 0
    if (exact_) {
        Rational c = weight / speed;
        value_ += pow_rat(c, static_cast<long long>(numerator(spec.p).convert_to<long long>()));
    } else {
        double c = lps::to_double(Rational(weight / speed));
        terms_.push_back(std::pow(c, spec.p_double()));
    }
}

double ObjVal::to_double() const {
    if (infinite_) return inf_sign_ > 0 ? std::numeric_limits<double>::infinity()
                                        : -std::numeric_limits<double>::infinity();
    if (exact_) return lps::to_double(value_);
    // Sum largest-first so the result is independent of machine order.
    std::vector<double> sorted = terms_;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double sum = 0;
    for (double t : sorted) sum += t;
    return sum;
}

int ObjVal::compare(const ObjVal& other) const {
    if (infinite_ || other.infinite_) {
        int a = infinite_ ? inf_sign_ : 0;
        int b = other.infinite_ ? other.inf_sign_ : 0;
        return a < b ? -1 : a > b ? 1 : 0;
    }
    if (exact_ && other.exact_) {
        return value_ < other.value_ ? -1 : value_ > other.value_ ? 1 : 0;
    }
    double a = to_double(), b = other.to_double();
    return a < b ? -1 : a > b ? 1 : 0;
}

std::vector<Rational> works_by_machine(const Instance& inst, const Schedule& sched) {
    std::map<std::string, std::size_t> machine_pos;
    for (std::size_t i = 0; i < inst.machines.size(); ++i) machine_pos[inst.machines[i].id] = i;
    std::vector<Rational> works(inst.machines.size(), Rational(0));
    for (const auto& job : inst.jobs) {
        auto it = sched.assignment.find(job.id);
        if (it == sched.assignment.end())
            throw InputError("job '" + job.id + "' is unassigned");
        auto mit = machine_pos.find(it->second);
        if (mit == machine_pos.end())
            throw InputError("job '" + job.id + "' assigned to unknown machine '" + it->second + "'");
        works[mit->second] += job.size;
    }
    return works;
}

std::vector<std::string> validate(const Instance& inst, const Schedule& sched) {
    std::vector<std::string> violations;
    std::map<std::string, std::size_t> machine_pos;
    for (std::size_t i = 0; i < inst.machines.size(); ++i) machine_pos[inst.machines[i].id] = i;
    std::map<std::string, bool> seen;
    for (const auto& job : inst.jobs) seen[job.id] = false;
    for (const auto& job : inst.jobs) {
        auto it = sched.assignment.find(job.id);
        if (it == sched.assignment.end()) {
            violations.push_back("job '" + job.id + "' unassigned");
            continue;
        }
        seen[job.id] = true;
        if (!machine_pos.count(it->second))
            violations.push_back("job '" + job.id + "' assigned to unknown machine '" + it->second + "'");
    }
    for (const auto& [job_id, machine_id] : sched.assignment) {
        if (!seen.count(job_id))
            violations.push_back("assignment references unknown job '" + job_id + "'");
    }
    return violations;
}

ObjVal objective_from_works(const Instance& inst, const std::vector<Rational>& works) {
    ObjVal v = ObjVal::zero(inst.spec.p_is_integer());
    for (std::size_t i = 0; i < inst.machines.size(); ++i)
        v.add_term(works[i], inst.machines[i].speed, inst.spec);
    return v;
}

ObjVal evaluate_value(const Instance& inst, const Schedule& sched) {
    return objective_from_works(inst, works_by_machine(inst, sched));
}

double evaluate(const Instance& inst, const Schedule& sched) {
    return evaluate_value(inst, sched).to_double();
}

Schedule trivial_solve(const Instance& inst) {
    if (!trivial_regime(inst.spec))
        throw ContractViolation("trivial_solve called outside the trivial regime");
    if (inst.machines.empty()) throw InputError("instance has no machines");
    std::size_t pick = 0;
    const bool want_fastest = inst.spec.direction == Direction::Minimize;
    for (std::size_t i = 1; i < inst.machines.size(); ++i) {
        if (want_fastest ? inst.machines[i].speed > inst.machines[pick].speed
                         : inst.machines[i].speed < inst.machines[pick].speed)
            pick = i;
    }
    Schedule s;
    for (const auto& job : inst.jobs) s.assignment[job.id] = inst.machines[pick].id;
    return s;
}

} // namespace lps
