#include "lps/rounding.hpp"

#include "lps/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lps {

RoundedInstance round_geometric(const Instance& inst) {
    validate_instance(inst);
    RoundedInstance r;
    r.original = inst;
    r.base = inst;
    const Rational base = 1 + inst.spec.eps;
    for (auto& job : r.base.jobs) {
        long long j = ceil_log(base, job.size);
        job.size = pow_rat(base, j);
        r.size_exponents[job.id] = j;
    }
    for (auto& machine : r.base.machines) {
        long long j = ceil_log(base, machine.speed);
        machine.speed = pow_rat(base, j);
        r.speed_exponents[machine.id] = j;
    }
    return r;
}

namespace {

Rational max_size(const Instance& inst) {
    Rational mx = 0;
    for (const auto& j : inst.jobs) mx = std::max(mx, j.size);
    return mx;
}

} // namespace

RoundedInstance round_arithmetic_min(RoundedInstance r) {
    if (r.base.spec.direction != Direction::Minimize)
        throw ContractViolation("round_arithmetic_min: direction must be Minimize");
    if (r.base.jobs.empty()) throw ContractViolation("round_arithmetic_min: no jobs");
    const Rational eps = r.base.spec.eps;
    const long long n = static_cast<long long>(r.base.jobs.size());
    r.p_max = max_size(r.base);
    r.mu = eps * eps * r.p_max / n;
    const Rational threshold = eps * r.p_max / n;

    std::vector<Job> kept;
    for (const auto& job : r.base.jobs) {
        if (job.size <= threshold) {
            r.removed_jobs.push_back(job.id);
            continue;
        }
        BigInt units = floor_rat(job.size / r.mu);
        Job rounded = job;
        rounded.size = Rational(units) * r.mu;
        r.size_units[job.id] = units;
        kept.push_back(std::move(rounded));
    }
    if (kept.empty()) throw ContractViolation("round_arithmetic_min: all jobs removed");
    r.base.jobs = std::move(kept);
    return r;
}

RoundedInstance round_arithmetic_max(RoundedInstance r) {
    if (r.base.spec.direction != Direction::Maximize)
        throw ContractViolation("round_arithmetic_max: direction must be Maximize");
    if (r.base.jobs.empty()) throw ContractViolation("round_arithmetic_max: no jobs");
    const Rational eps = r.base.spec.eps;
    const long long n = static_cast<long long>(r.base.jobs.size());
    const long long m = static_cast<long long>(r.base.machines.size());
    r.p_max = max_size(r.base);
    // Exponent ceil(1/p): equals the exact 1/p when p = 1/k, and otherwise
    // yields a smaller (still valid) grid unit that keeps mu rational.
    BigInt e = ceil_rat(Rational(denominator(r.base.spec.p), numerator(r.base.spec.p)));
    long long ee = e.convert_to<long long>();
    r.mu = pow_rat(eps, ee) * r.p_max / (Rational(n) * pow_rat(Rational(m), ee));
    for (auto& job : r.base.jobs) {
        BigInt units = floor_rat(job.size / r.mu);
        job.size = Rational(units) * r.mu;
        r.size_units[job.id] = units;
    }
    return r;
}

Schedule lift_schedule(const RoundedInstance& r, const Schedule& on_rounded) {
    const Instance& orig = r.original;
    Schedule lifted;
    // Jobs keep their ids; sizes are implicitly restored by evaluating
    // against the original instance.
    for (const auto& job : r.base.jobs) {
        auto it = on_rounded.assignment.find(job.id);
        if (it != on_rounded.assignment.end()) lifted.assignment[job.id] = it->second;
    }

    if (orig.spec.direction == Direction::Minimize) {
        if (!r.removed_jobs.empty()) {
            // Host: lowest-index machine holding a job of geometric size p_max.
            std::string host;
            for (const auto& machine : r.base.machines) {
                for (const auto& job : r.base.jobs) {
                    auto it = lifted.assignment.find(job.id);
                    if (it == lifted.assignment.end() || it->second != machine.id) continue;
                    auto eit = r.size_exponents.find(job.id);
                    Rational geo = pow_rat(1 + orig.spec.eps, eit->second);
                    if (geo == r.p_max) { host = machine.id; break; }
                }
                if (!host.empty()) break;
            }
            if (host.empty())
                throw ContractViolation("lift_schedule: no machine holds a p_max job");
            for (const auto& id : r.removed_jobs) lifted.assignment[id] = host;
        }
        return lifted;
    }

    // Maximization: greedily add every unassigned job (largest first) to the
    // machine with the best marginal gain on the original instance.
    std::vector<const Job*> unassigned;
    for (const auto& job : orig.jobs)
        if (!lifted.assignment.count(job.id)) unassigned.push_back(&job);
    std::stable_sort(unassigned.begin(), unassigned.end(),
                     [](const Job* a, const Job* b) { return a->size > b->size; });

    std::vector<Rational> works(orig.machines.size(), Rational(0));
    {
        std::map<std::string, std::size_t> pos;
        for (std::size_t i = 0; i < orig.machines.size(); ++i) pos[orig.machines[i].id] = i;
        for (const auto& job : orig.jobs) {
            auto it = lifted.assignment.find(job.id);
            if (it != lifted.assignment.end()) works[pos.at(it->second)] += job.size;
        }
    }
    for (const Job* job : unassigned) {
        std::size_t pick = 0;
        double best = -1;
        for (std::size_t m = 0; m < orig.machines.size(); ++m) {
            double p = orig.spec.p_double();
            double before = works[m] == 0 ? 0.0
                : std::pow(to_double(works[m] / orig.machines[m].speed), p);
            double after = std::pow(to_double((works[m] + job->size) / orig.machines[m].speed), p);
            double gain = after - before;
            if (gain > best) { best = gain; pick = m; }
        }
        lifted.assignment[job->id] = orig.machines[pick].id;
        works[pick] += job->size;
    }
    return lifted;
}

} // namespace lps
