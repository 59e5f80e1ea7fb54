#include "lps/instance.hpp"

#include "lps/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace lps {

Rational normalize_eps(const Rational& eps) {
    if (eps <= 0) throw InputError("eps must be positive");
    BigInt k = ceil_rat(Rational(denominator(eps), numerator(eps)));
    if (k < 2) k = 2;
    return Rational(1, k);
}

ProblemSpec make_spec(const Rational& p, Direction dir, const Rational& eps) {
    if (p <= 0) throw InputError("p must be positive");
    ProblemSpec spec;
    spec.p = p;
    spec.direction = dir;
    spec.eps = normalize_eps(eps);
    return spec;
}

void validate_instance(const Instance& inst) {
    std::set<std::string> ids;
    for (const auto& j : inst.jobs) {
        if (j.size <= 0) throw InputError("job '" + j.id + "': size must be positive");
        if (!ids.insert(j.id).second) throw InputError("duplicate job id '" + j.id + "'");
    }
    ids.clear();
    for (const auto& m : inst.machines) {
        if (m.speed <= 0) throw InputError("machine '" + m.id + "': speed must be positive");
        if (!ids.insert(m.id).second) throw InputError("duplicate machine id '" + m.id + "'");
    }
    if (inst.machines.empty()) throw InputError("instance has no machines");
    if (inst.spec.p <= 0) throw InputError("p must be positive");
}

bool trivial_regime(const ProblemSpec& spec) {
    return (spec.direction == Direction::Minimize && spec.p <= 1) ||
           (spec.direction == Direction::Maximize && spec.p >= 1);
}

SortedInstance sort_machines(const Instance& inst) {
    std::vector<std::size_t> perm(inst.machines.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    const bool ascending = inst.spec.direction == Direction::Minimize;
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        if (ascending) return inst.machines[a].speed < inst.machines[b].speed;
        return inst.machines[a].speed > inst.machines[b].speed;
    });
    SortedInstance out;
    out.instance.jobs = inst.jobs;
    out.instance.spec = inst.spec;
    out.instance.machines.reserve(perm.size());
    for (std::size_t pos : perm) out.instance.machines.push_back(inst.machines[pos]);
    out.permutation = std::move(perm);
    return out;
}

} // namespace lps
