#include "lps/oracle.hpp"

#include "lps/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <unordered_map>

namespace lps {

namespace {

ObjVal value_of_works(const Instance& inst, const std::vector<Rational>& works, const WeightFn& g) {
    ObjVal v = ObjVal::zero(inst.spec.p_is_integer());
    for (std::size_t i = 0; i < inst.machines.size(); ++i) {
        Rational w = g ? g(works[i]) : works[i];
        v.add_term(w, inst.machines[i].speed, inst.spec);
    }
    return v;
}

struct BruteState {
    const Instance* inst;
    const WeightFn* g;
    Direction dir;
    std::vector<Rational> works;
    std::vector<int> assign;
    std::vector<int> group_of;       // machine -> speed group
    std::vector<int> machine_jobs;   // job count per machine
    std::vector<int> best_assign;
    ObjVal best;
    bool have_best = false;
    long long nodes = 0;

    void run(std::size_t j) {
        ++nodes;
        const auto& jobs = inst->jobs;
        if (j == jobs.size()) {
            ObjVal v = value_of_works(*inst, works, *g);
            if (!have_best || v.better_than(best, dir)) {
                best = v;
                best_assign = assign;
                have_best = true;
            }
            return;
        }
        for (std::size_t m = 0; m < inst->machines.size(); ++m) {
            // Within an equal-speed group only the first empty machine may
            // open; this visits exactly one canonical member of each orbit.
            int grp = group_of[m];
            bool empty = machine_jobs[m] == 0;
            if (empty) {
                bool first_empty = true;
                for (std::size_t m2 = 0; m2 < m; ++m2)
                    if (group_of[m2] == grp && machine_jobs[m2] == 0) { first_empty = false; break; }
                if (!first_empty) continue;
            }
            works[m] += jobs[j].size;
            ++machine_jobs[m];
            assign[j] = static_cast<int>(m);
            run(j + 1);
            works[m] -= jobs[j].size;
            --machine_jobs[m];
        }
    }
};

} // namespace

OracleResult brute_force(const Instance& inst, const WeightFn& g) {
    validate_instance(inst);
    const std::size_t m = inst.machines.size();
    const std::size_t n = inst.jobs.size();
    BigInt space = 1;
    for (std::size_t i = 0; i < n; ++i) {
        space *= m;
        if (space > 10'000'000) throw ResourceCapError("brute_force: m^n exceeds 10^7");
    }

    BruteState st;
    st.inst = &inst;
    st.g = &g;
    st.dir = inst.spec.direction;
    st.works.assign(m, Rational(0));
    st.assign.assign(n, -1);
    st.machine_jobs.assign(m, 0);
    st.group_of.resize(m);
    {
        std::map<Rational, int> groups;
        for (std::size_t i = 0; i < m; ++i) {
            auto [it, fresh] = groups.emplace(inst.machines[i].speed, static_cast<int>(groups.size()));
            st.group_of[i] = it->second;
        }
    }
    st.run(0);

    OracleResult res;
    for (std::size_t j = 0; j < n; ++j)
        res.schedule.assignment[inst.jobs[j].id] = inst.machines[st.best_assign[j]].id;
    res.value_obj = st.best;
    res.value = st.best.to_double();
    res.node_count = st.nodes;
    return res;
}

namespace {

struct DpContext {
    const Instance* inst;
    std::vector<Rational> sizes;         // distinct sizes
    std::vector<int> counts;             // total count per size
    std::vector<std::vector<std::string>> members; // job ids per size, input order
    std::vector<std::int64_t> radix;
    Direction dir;

    std::int64_t encode(const std::vector<int>& c) const {
        std::int64_t key = 0;
        for (std::size_t i = 0; i < c.size(); ++i) key += c[i] * radix[i];
        return key;
    }

    struct Entry {
        ObjVal value;
        std::int64_t choice = 0; // encoded sub-multiset placed on this machine
        bool feasible = false;
    };
    std::vector<std::unordered_map<std::int64_t, Entry>> memo;

    Entry solve(std::size_t machine, const std::vector<int>& remaining) {
        std::int64_t key = encode(remaining);
        if (machine == inst->machines.size()) {
            Entry e;
            e.feasible = key == 0;
            e.value = ObjVal::zero(inst->spec.p_is_integer());
            return e;
        }
        auto it = memo[machine].find(key);
        if (it != memo[machine].end()) return it->second;

        Entry best;
        std::vector<int> take(sizes.size(), 0);
        std::function<void()> enumerate = [&]() {
            Rational w = 0;
            for (std::size_t i = 0; i < sizes.size(); ++i) w += sizes[i] * take[i];
            std::vector<int> rest(remaining);
            for (std::size_t i = 0; i < sizes.size(); ++i) rest[i] -= take[i];
            Entry sub = solve(machine + 1, rest);
            if (!sub.feasible) return;
            ObjVal v = sub.value;
            v.add_term(w, inst->machines[machine].speed, inst->spec);
            if (!best.feasible || v.better_than(best.value, dir)) {
                best.feasible = true;
                best.value = v;
                best.choice = encode(take);
            }
        };
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == sizes.size()) { enumerate(); return; }
            for (take[i] = 0; take[i] <= remaining[i]; ++take[i]) rec(i + 1);
            take[i] = 0;
        };
        rec(0);
        memo[machine][key] = best;
        return best;
    }
};

} // namespace

OracleResult exact_dp(const Instance& inst) {
    validate_instance(inst);
    DpContext ctx;
    ctx.inst = &inst;
    ctx.dir = inst.spec.direction;
    std::map<Rational, int> index;
    for (const auto& job : inst.jobs) {
        auto [it, fresh] = index.emplace(job.size, static_cast<int>(ctx.sizes.size()));
        if (fresh) {
            ctx.sizes.push_back(job.size);
            ctx.counts.push_back(0);
            ctx.members.emplace_back();
        }
        ctx.counts[it->second] += 1;
        ctx.members[it->second].push_back(job.id);
    }
    if (ctx.sizes.size() > 8) throw ResourceCapError("exact_dp: more than 8 distinct sizes");
    std::int64_t states = 1;
    ctx.radix.resize(ctx.sizes.size());
    for (std::size_t i = 0; i < ctx.sizes.size(); ++i) {
        ctx.radix[i] = states;
        states *= ctx.counts[i] + 1;
        if (states > 10'000'000) throw ResourceCapError("exact_dp: state space exceeds 10^7");
    }
    ctx.memo.resize(inst.machines.size());

    auto top = ctx.solve(0, ctx.counts);
    if (!top.feasible) throw ContractViolation("exact_dp: no feasible completion");

    // Reconstruct the choices machine by machine.
    OracleResult res;
    std::vector<int> remaining = ctx.counts;
    std::vector<int> next_member(ctx.sizes.size(), 0);
    long long nodes = 0;
    for (auto& layer : ctx.memo) nodes += static_cast<long long>(layer.size());
    for (std::size_t machine = 0; machine < inst.machines.size(); ++machine) {
        auto entry = ctx.memo[machine].at(ctx.encode(remaining));
        std::int64_t choice = entry.choice;
        for (std::size_t i = 0; i < ctx.sizes.size(); ++i) {
            int cnt = static_cast<int>(choice / ctx.radix[i] % (ctx.counts[i] + 1));
            for (int k = 0; k < cnt; ++k)
                res.schedule.assignment[ctx.members[i][next_member[i]++]] =
                    inst.machines[machine].id;
            remaining[i] -= cnt;
        }
    }
    res.value_obj = top.value;
    res.value = top.value.to_double();
    res.node_count = nodes;
    return res;
}

namespace {

struct Marginal {
    bool exact = false;
    Rational r;
    double d = 0;

    int cmp(const Marginal& o) const {
        if (exact && o.exact) return r < o.r ? -1 : r > o.r ? 1 : 0;
        double a = exact ? to_double(r) : d;
        double b = o.exact ? to_double(o.r) : o.d;
        return a < b ? -1 : a > b ? 1 : 0;
    }
};

Marginal marginal_change(const Rational& work, const Rational& size, const Rational& speed,
                         const ProblemSpec& spec) {
    Marginal m;
    if (spec.p_is_integer()) {
        long long p = numerator(spec.p).convert_to<long long>();
        m.exact = true;
        m.r = pow_rat((work + size) / speed, p) - (work == 0 ? Rational(0) : pow_rat(work / speed, p));
    } else {
        double p = spec.p_double();
        double before = work == 0 ? 0.0 : std::pow(to_double(work / speed), p);
        m.d = std::pow(to_double((work + size) / speed), p) - before;
    }
    return m;
}

} // namespace

Schedule greedy_baseline(const Instance& inst) {
    validate_instance(inst);
    std::vector<std::size_t> order(inst.jobs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return inst.jobs[a].size > inst.jobs[b].size;
    });
    std::vector<Rational> works(inst.machines.size(), Rational(0));
    Schedule s;
    const bool minimize = inst.spec.direction == Direction::Minimize;
    for (std::size_t j : order) {
        std::size_t pick = 0;
        Marginal best = marginal_change(works[0], inst.jobs[j].size, inst.machines[0].speed, inst.spec);
        for (std::size_t m = 1; m < inst.machines.size(); ++m) {
            Marginal cand =
                marginal_change(works[m], inst.jobs[j].size, inst.machines[m].speed, inst.spec);
            int c = cand.cmp(best);
            if (minimize ? c < 0 : c > 0) { pick = m; best = cand; }
        }
        s.assignment[inst.jobs[j].id] = inst.machines[pick].id;
        works[pick] += inst.jobs[j].size;
    }
    return s;
}

} // namespace lps
